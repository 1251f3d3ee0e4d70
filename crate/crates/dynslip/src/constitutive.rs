//! Maximal monotone constitutive graphs and their resolvent regularization.
//!
//! A scalar constitutive graph relates the shear stress `S` to the shear
//! rate `D`.  The shipped explicit models are
//!
//! ```text
//! linear:     S = 2 nu D
//! power law:  S = 2 nu (alpha_star + |D|^2)^((r-2)/2) D
//! ```
//!
//! A graph qualifies as a maximal monotone r-graph when it contains the
//! origin (A1), is monotone (A2), maximal (A3), and r-coercive (A4):
//! `S·D >= C1 (|S|^r' + |D|^r) - C2` with `r' = r/(r-1)`.  Maximality is
//! automatic for the shipped continuous selections; the remaining axioms are
//! checked on seeded samples by [`check_axioms`].
//!
//! The regularization replaces a base graph by the two-step shift
//!
//! ```text
//! D~ = D- + eps S-,      S = S~ + eps D~      (S~ = S-),
//! ```
//!
//! so evaluating the regularized selection at `D` means solving
//! `D = D- + eps g(D-)` for `D-` (the resolvent of the base selection `g`)
//! and returning `S = g(D-) + eps D`.  The construction makes any monotone
//! base Lipschitz with constant at most `eps + 1/eps` and uniformly monotone
//! with modulus `eps`, at the price of an `O(eps)` perturbation.  For
//! isotropic selections `g(D) = phi(|D|) sign(D)` the resolvent reduces to
//! the scalar monotone equation `m + eps phi(m) = |D|` on `[0, |D|]`, solved
//! by Newton with a guaranteed bisection bracket.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("invalid graph model: {0}")]
    Invalid(String),
    #[error("selection gradient is singular at the origin (alpha_star = 0, r < 2)")]
    SingularAtOrigin,
    #[error("explicit selection requested on a regularized model; use regularize_select")]
    NeedsResolvent,
    #[error("resolvent solve failed to converge within {iterations} iterations (residual {residual:e}); the base selection is not monotone")]
    ResolventDivergence { iterations: usize, residual: f64 },
    #[error("axiom {axiom} violated: {witness}")]
    AxiomViolation { axiom: &'static str, witness: String },
}

/// A scalar constitutive relation between stress and shear rate.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphModel {
    /// `S = 2 nu D`.
    Linear { nu: f64 },
    /// `S = 2 nu (alpha_star + |D|^2)^((r-2)/2) D`; `alpha_star = 0` is the
    /// power-law fluid proper (shear-thinning for `r < 2`).
    PowerLaw { nu: f64, alpha_star: f64, r: f64 },
    /// Resolvent regularization of an explicit base with `eps in (0, 1)`.
    Regularized { base: Box<GraphModel>, eps: f64 },
}

impl GraphModel {
    pub fn linear(nu: f64) -> Result<Self, GraphError> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(GraphError::Invalid(format!("nu must be > 0, got {nu}")));
        }
        Ok(GraphModel::Linear { nu })
    }

    pub fn power_law(nu: f64, alpha_star: f64, r: f64) -> Result<Self, GraphError> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(GraphError::Invalid(format!("nu must be > 0, got {nu}")));
        }
        if !(alpha_star >= 0.0 && alpha_star.is_finite()) {
            return Err(GraphError::Invalid(format!(
                "alpha_star must be >= 0, got {alpha_star}"
            )));
        }
        if !(r > 1.0 && r.is_finite()) {
            return Err(GraphError::Invalid(format!("r must be > 1, got {r}")));
        }
        Ok(GraphModel::PowerLaw { nu, alpha_star, r })
    }

    pub fn regularized(base: GraphModel, eps: f64) -> Result<Self, GraphError> {
        if matches!(base, GraphModel::Regularized { .. }) {
            return Err(GraphError::Invalid(
                "regularization does not nest; wrap an explicit model".into(),
            ));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(GraphError::Invalid(format!(
                "eps must lie in (0, 1), got {eps}"
            )));
        }
        Ok(GraphModel::Regularized {
            base: Box::new(base),
            eps,
        })
    }

    /// Growth exponent `r` of the graph (2 for linear and for any
    /// regularized model, which is a 2-graph by construction).
    pub fn growth_exponent(&self) -> f64 {
        match self {
            GraphModel::Linear { .. } => 2.0,
            GraphModel::PowerLaw { r, .. } => *r,
            GraphModel::Regularized { .. } => 2.0,
        }
    }

    /// Response magnitude `phi(m) = |S|` at shear-rate magnitude `m >= 0`,
    /// defined for explicit variants.
    pub fn response_magnitude(&self, m: f64) -> Result<f64, GraphError> {
        match self {
            GraphModel::Linear { nu } => Ok(2.0 * nu * m),
            GraphModel::PowerLaw { nu, alpha_star, r } => {
                if m == 0.0 {
                    // continuous extension; the power alone may be 0^negative
                    return Ok(0.0);
                }
                Ok(2.0 * nu * (alpha_star + m * m).powf((r - 2.0) / 2.0) * m)
            }
            GraphModel::Regularized { .. } => Err(GraphError::NeedsResolvent),
        }
    }

    /// Derivative `phi'(m)`, the radial slope of the explicit selection.
    pub fn response_slope(&self, m: f64) -> Result<f64, GraphError> {
        match self {
            GraphModel::Linear { nu } => Ok(2.0 * nu),
            GraphModel::PowerLaw { nu, alpha_star, r } => {
                if m == 0.0 && *alpha_star == 0.0 {
                    if *r < 2.0 {
                        return Err(GraphError::SingularAtOrigin);
                    }
                    return Ok(if *r > 2.0 { 0.0 } else { 2.0 * nu });
                }
                let base = alpha_star + m * m;
                Ok(2.0 * nu * base.powf((r - 4.0) / 2.0) * (alpha_star + (r - 1.0) * m * m))
            }
            GraphModel::Regularized { .. } => Err(GraphError::NeedsResolvent),
        }
    }

    /// Evaluate the selection, dispatching regularized models through the
    /// resolvent solve.
    pub fn select(&self, d: f64) -> Result<f64, GraphError> {
        match self {
            GraphModel::Regularized { base, eps } => regularize_select(base, *eps, d),
            explicit => select_stress(explicit, d),
        }
    }

    /// Known r-coercivity constants `(C1, C2)`, where available.
    ///
    /// For the power law with `alpha_star = 0` (and the linear model as its
    /// `r = 2` case) the identity `S·D = 2 nu |D|^r` gives
    /// `C1 = min(nu, nu (2 nu)^(-r'))`, `C2 = 0`.
    pub fn coercivity_constants(&self) -> Option<(f64, f64)> {
        match self {
            GraphModel::Linear { nu } => {
                let r_prime = 2.0;
                Some((nu.min(nu * (2.0 * nu).powf(-r_prime)), 0.0))
            }
            GraphModel::PowerLaw { nu, alpha_star, r } if *alpha_star == 0.0 => {
                let r_prime = r / (r - 1.0);
                Some((nu.min(nu * (2.0 * nu).powf(-r_prime)), 0.0))
            }
            _ => None,
        }
    }
}

/// Explicit stress selection `S = 2 nu (alpha_star + |D|^2)^((r-2)/2) D`.
///
/// Total in `D` (the origin value is 0 by continuity); regularized models
/// are rejected; their selection goes through [`regularize_select`].
pub fn select_stress(model: &GraphModel, d: f64) -> Result<f64, GraphError> {
    if matches!(model, GraphModel::Regularized { .. }) {
        return Err(GraphError::NeedsResolvent);
    }
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(model.response_magnitude(d.abs())?.copysign(d))
}

const RESOLVENT_TOL: f64 = 1e-14;
const RESOLVENT_MAX_ITER: usize = 200;

/// Solve `m + eps phi(m) = target` for `m in [0, target]`.
///
/// Newton from `m0 = target / (1 + eps phi'(target))`, falling back to
/// bisection on the guaranteed bracket whenever a step leaves it; the
/// bracket endpoints have opposite residual signs for any monotone `phi`
/// with `phi(0) = 0`.
fn solve_resolvent_magnitude<F, G>(
    phi: F,
    phi_slope: G,
    eps: f64,
    target: f64,
) -> Result<f64, GraphError>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> Option<f64>,
{
    debug_assert!(target > 0.0);
    let residual = |m: f64| m + eps * phi(m) - target;
    let tol = RESOLVENT_TOL * target.max(1.0);
    let (mut lo, mut hi) = (0.0_f64, target);
    let mut m = match phi_slope(target) {
        Some(slope) if slope.is_finite() && slope >= 0.0 => {
            (target / (1.0 + eps * slope)).clamp(0.0, target)
        }
        _ => 0.5 * target,
    };
    let mut f_m = residual(m);
    for iter in 0..RESOLVENT_MAX_ITER {
        if f_m.abs() <= tol {
            return Ok(m);
        }
        // shrink the bracket around the current sign change
        if f_m > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
        let newton = phi_slope(m)
            .filter(|s| s.is_finite())
            .map(|s| m - f_m / (1.0 + eps * s))
            .filter(|x| x.is_finite() && *x > lo && *x < hi);
        m = newton.unwrap_or(0.5 * (lo + hi));
        f_m = residual(m);
        if hi - lo <= f64::EPSILON * target && f_m.abs() <= 1e-10 * target.max(1.0) {
            return Ok(m);
        }
        let _ = iter;
    }
    // unreachable for monotone bases: the bracket always carries a sign change
    Err(GraphError::ResolventDivergence {
        iterations: RESOLVENT_MAX_ITER,
        residual: f_m,
    })
}

/// The inner point and stress of one regularized evaluation:
/// `d = d_bar + eps g(d_bar)` and `s = g(d_bar) + eps d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventPoint {
    pub d_bar: f64,
    pub s: f64,
}

/// Resolvent solve behind the regularized selection: find the unique `D-`
/// with `D = D- + eps g(D-)` and return it together with the stress
/// `S = g(D-) + eps D`.
///
/// Exposing `D-` matters for verification: reconstructing it from `S` in
/// floating point cancels catastrophically whenever `eps g(D-)` carries
/// almost all of `D` (shear-thinning bases near the origin), while the
/// solver's own `D-` satisfies the defining equation to the solve tolerance.
pub fn regularize_resolve(
    base: &GraphModel,
    eps: f64,
    d: f64,
) -> Result<ResolventPoint, GraphError> {
    if matches!(base, GraphModel::Regularized { .. }) {
        return Err(GraphError::Invalid(
            "regularization does not nest; wrap an explicit model".into(),
        ));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(GraphError::Invalid(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    if d == 0.0 {
        // the origin is a fixed point of the construction
        return Ok(ResolventPoint { d_bar: 0.0, s: 0.0 });
    }
    let m = solve_resolvent_magnitude(
        |m| base.response_magnitude(m).unwrap_or(f64::NAN),
        |m| base.response_slope(m).ok(),
        eps,
        d.abs(),
    )?;
    let phi_m = base.response_magnitude(m)?;
    Ok(ResolventPoint {
        d_bar: m.copysign(d),
        s: phi_m.copysign(d) + eps * d,
    })
}

/// Regularized selection: solve `D = D- + eps g(D-)` for the unique `D-`,
/// then return `S = g(D-) + eps D`.
pub fn regularize_select(base: &GraphModel, eps: f64, d: f64) -> Result<f64, GraphError> {
    Ok(regularize_resolve(base, eps, d)?.s)
}

/// Convex cut-off `Phi_delta(s)`: 1 below `1/delta`, linearly down to 0 at
/// `2/delta`, 0 beyond.  Tends to 1 pointwise as `delta -> 0+`.
pub fn cutoff(delta: f64, s: f64) -> f64 {
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    let z = delta * s.abs();
    if z < 1.0 {
        1.0
    } else if z < 2.0 {
        2.0 - z
    } else {
        0.0
    }
}

/// Boundary constitutive relation between the auxiliary stress and the slip
/// velocity (a monotone 2-graph).
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryGraphModel {
    /// `sigma = gamma v`; `gamma = 1` is the response used by the explicit
    /// channel scenarios.
    NavierLinear { gamma: f64 },
    /// `sigma = gamma |v|^(q-2) v`.
    PowerLawSlip { gamma: f64, q: f64 },
}

impl BoundaryGraphModel {
    pub fn navier_linear(gamma: f64) -> Result<Self, GraphError> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(GraphError::Invalid(format!(
                "gamma must be > 0, got {gamma}"
            )));
        }
        Ok(BoundaryGraphModel::NavierLinear { gamma })
    }

    pub fn power_law_slip(gamma: f64, q: f64) -> Result<Self, GraphError> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(GraphError::Invalid(format!(
                "gamma must be > 0, got {gamma}"
            )));
        }
        if !(q > 1.0 && q.is_finite()) {
            return Err(GraphError::Invalid(format!("q must be > 1, got {q}")));
        }
        Ok(BoundaryGraphModel::PowerLawSlip { gamma, q })
    }
}

/// Boundary selection `sigma*(v)`; vanishes at the origin and is monotone.
pub fn select_boundary(model: &BoundaryGraphModel, v: f64) -> f64 {
    match model {
        BoundaryGraphModel::NavierLinear { gamma } => gamma * v,
        BoundaryGraphModel::PowerLawSlip { gamma, q } => {
            if v == 0.0 {
                0.0
            } else {
                gamma * v.abs().powf(q - 2.0) * v
            }
        }
    }
}

/// Result of the sampled axiom verification.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// A1: the selection vanishes at the origin.
    pub origin_ok: bool,
    /// A2: minimum of `(S1 - S2)(D1 - D2)` over the sampled pairs.
    pub min_monotone_pairing: f64,
    /// A4 constants used in the verification.
    pub c1: f64,
    pub c2: f64,
    /// A4: minimum of `S·D - C1(|S|^r' + |D|^r) + C2` over the samples.
    pub min_coercivity_margin: f64,
    pub r: f64,
    pub samples: usize,
}

/// Deterministic sample magnitudes: a log-spaced sweep across twelve
/// decades followed by seeded uniform draws on `[-10, 10]`.
fn sample_shear_rates(count: usize, seed: u64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let sweep = (count / 4).max(24);
    for k in 0..sweep {
        let exp = -6.0 + 12.0 * k as f64 / (sweep - 1) as f64;
        let mag = 10f64.powf(exp);
        out.push(if k % 2 == 0 { mag } else { -mag });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        out.push(rng.gen_range(-10.0..10.0));
    }
    out
}

/// Sampled check of axioms A1, A2 and A4 for an arbitrary scalar selection.
///
/// `known_constants` supplies `(C1, C2)` when the model pins them; otherwise
/// a grid search over `C1 in {1, 1e-1, ..., 1e-6}` finds the smallest
/// workable `C2` (capped at 1) from the samples themselves.
pub fn check_scalar_axioms<F: Fn(f64) -> f64>(
    select: F,
    r: f64,
    known_constants: Option<(f64, f64)>,
    sample_count: usize,
    seed: u64,
) -> Result<AxiomReport, GraphError> {
    assert!(sample_count >= 100, "need at least 100 samples");
    assert!(r > 1.0);
    let r_prime = r / (r - 1.0);
    let origin = select(0.0);
    if origin != 0.0 {
        return Err(GraphError::AxiomViolation {
            axiom: "A1",
            witness: format!("selection(0) = {origin:e}"),
        });
    }
    let ds = sample_shear_rates(sample_count, seed);
    let pairs: Vec<(f64, f64)> = ds.iter().map(|&d| (select(d), d)).collect();
    // A2 on consecutive sampled pairs plus pairs against the origin
    let mut min_pairing = f64::INFINITY;
    for w in pairs.windows(2) {
        let ((s1, d1), (s2, d2)) = (w[0], w[1]);
        let pairing = (s1 - s2) * (d1 - d2);
        if pairing < min_pairing {
            min_pairing = pairing;
        }
        if pairing < -1e-12 * (d1 - d2).abs().max(1.0) {
            return Err(GraphError::AxiomViolation {
                axiom: "A2",
                witness: format!("(S1-S2)(D1-D2) = {pairing:e} at D1={d1}, D2={d2}"),
            });
        }
    }
    let (c1, c2) = match known_constants {
        Some(c) => c,
        None => coercivity_grid_search(&pairs, r_prime, r).ok_or(GraphError::AxiomViolation {
            axiom: "A4",
            witness: "no admissible (C1, C2) on the search grid".into(),
        })?,
    };
    let mut min_margin = f64::INFINITY;
    for &(s, d) in &pairs {
        let margin = s * d - c1 * (s.abs().powf(r_prime) + d.abs().powf(r)) + c2;
        if margin < min_margin {
            min_margin = margin;
        }
    }
    if min_margin < -1e-10 {
        return Err(GraphError::AxiomViolation {
            axiom: "A4",
            witness: format!("margin {min_margin:e} with C1={c1}, C2={c2}"),
        });
    }
    Ok(AxiomReport {
        origin_ok: true,
        min_monotone_pairing: min_pairing,
        c1,
        c2,
        min_coercivity_margin: min_margin,
        r,
        samples: sample_count,
    })
}

/// Axiom check for a shipped model; regularized models are verified as
/// 2-graphs through their resolvent selection.
pub fn check_axioms(
    model: &GraphModel,
    sample_count: usize,
    seed: u64,
) -> Result<AxiomReport, GraphError> {
    let r = model.growth_exponent();
    let constants = model.coercivity_constants();
    // surface resolvent failures instead of silently sampling NaNs
    match model {
        GraphModel::Regularized { base, eps } => {
            let _probe = regularize_select(base, *eps, 1.0)?;
            check_scalar_axioms(
                |d| regularize_select(base, *eps, d).unwrap_or(f64::NAN),
                r,
                constants,
                sample_count,
                seed,
            )
        }
        explicit => check_scalar_axioms(
            |d| select_stress(explicit, d).unwrap_or(f64::NAN),
            r,
            constants,
            sample_count,
            seed,
        ),
    }
}

/// `C1` grid `{1, 1e-1, ..., 1e-6}`; for each the smallest `C2` covering all
/// samples is computed and accepted when at most 1.  The cap is what makes
/// the check meaningful: a degenerate selection (e.g. the zero map) can only
/// satisfy the inequality with unboundedly large `C2` once samples span
/// several decades.
fn coercivity_grid_search(pairs: &[(f64, f64)], exp_s: f64, exp_d: f64) -> Option<(f64, f64)> {
    const C2_CAP: f64 = 1.0;
    for k in 0..=6 {
        let c1 = 10f64.powi(-k);
        let mut c2_needed = 0.0_f64;
        for &(s, d) in pairs {
            let deficit = c1 * (s.abs().powf(exp_s) + d.abs().powf(exp_d)) - s * d;
            if deficit > c2_needed {
                c2_needed = deficit;
            }
        }
        if c2_needed <= C2_CAP {
            return Some((c1, c2_needed));
        }
    }
    None
}

/// Outcome of the minimum-coercivity verification for a regularized graph.
#[derive(Debug, Clone)]
pub struct MinCoercivityReport {
    /// Base pairs satisfy r-coercivity with some grid constants.
    pub base_coercive: bool,
    pub base_constants: Option<(f64, f64)>,
    /// Regularized pairs satisfy the min-exponent inequality
    /// `S·D >= C1(|S|^min(r',2) + |D|^min(r,2)) - C2`.
    pub regularized_coercive: bool,
    pub regularized_constants: Option<(f64, f64)>,
}

impl MinCoercivityReport {
    pub fn holds(&self) -> bool {
        self.base_coercive && self.regularized_coercive
    }
}

/// Minimum-coercivity check for the regularization of an arbitrary isotropic
/// selection `phi` (response magnitude at nonnegative shear rate).
///
/// Verifies two sampled inequalities with grid-searched constants: the base
/// pairs against r-coercivity (a degenerate base fails here), and the
/// regularized pairs `(S, D) = (phi(m) sign + eps D, m sign + eps phi(m) sign)`
/// against the min-exponent bound.
pub fn min_coercivity_check_with<F: Fn(f64) -> f64>(
    phi: F,
    r: f64,
    eps: f64,
    samples: usize,
) -> MinCoercivityReport {
    assert!(samples >= 100, "need at least 100 samples");
    assert!(r > 1.0 && eps > 0.0 && eps < 1.0);
    let r_prime = r / (r - 1.0);
    let ds = sample_shear_rates(samples, 0x5eed);
    // base pairs sampled directly at D- = d
    let base_pairs: Vec<(f64, f64)> = ds
        .iter()
        .map(|&d| (phi(d.abs()).copysign(d), d))
        .collect();
    let base_constants = coercivity_grid_search(&base_pairs, r_prime, r);
    // regularized pairs generated forward from the same base points:
    // D = D- + eps g(D-), S = g(D-) + eps D
    let reg_pairs: Vec<(f64, f64)> = ds
        .iter()
        .map(|&d_bar| {
            let g = phi(d_bar.abs()).copysign(d_bar);
            let d = d_bar + eps * g;
            (g + eps * d, d)
        })
        .collect();
    let reg_constants = coercivity_grid_search(&reg_pairs, r_prime.min(2.0), r.min(2.0));
    MinCoercivityReport {
        base_coercive: base_constants.is_some(),
        base_constants,
        regularized_coercive: reg_constants.is_some(),
        regularized_constants: reg_constants,
    }
}

/// Minimum-coercivity check for a shipped explicit base model.
pub fn min_coercivity_check(
    base: &GraphModel,
    eps: f64,
    samples: usize,
) -> Result<MinCoercivityReport, GraphError> {
    if matches!(base, GraphModel::Regularized { .. }) {
        return Err(GraphError::Invalid(
            "pass the explicit base model, not its regularization".into(),
        ));
    }
    let r = base.growth_exponent();
    Ok(min_coercivity_check_with(
        |m| base.response_magnitude(m).unwrap_or(f64::NAN),
        r,
        eps,
        samples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn select_stress_examples() {
        let linear = GraphModel::linear(1.0).unwrap();
        assert_eq!(select_stress(&linear, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(select_stress(&linear, 1.7).unwrap(), 3.4, epsilon = 1e-15);
        let pl = GraphModel::power_law(1.0, 0.0, 3.0).unwrap();
        // 2 * (4)^(1/2) * 2 = 8
        assert_abs_diff_eq!(select_stress(&pl, 2.0).unwrap(), 8.0, epsilon = 1e-13);
        assert_abs_diff_eq!(select_stress(&pl, -2.0).unwrap(), -8.0, epsilon = 1e-13);
    }

    #[test]
    fn shear_thinning_is_total_but_slope_is_singular() {
        let pl = GraphModel::power_law(1.0, 0.0, 1.5).unwrap();
        assert_eq!(select_stress(&pl, 0.0).unwrap(), 0.0);
        assert_eq!(pl.response_slope(0.0), Err(GraphError::SingularAtOrigin));
        assert!(pl.response_slope(0.3).unwrap().is_finite());
        // alpha_star > 0 removes the singularity
        let carreau = GraphModel::power_law(1.0, 0.5, 1.5).unwrap();
        assert!(carreau.response_slope(0.0).unwrap().is_finite());
    }

    #[test]
    fn constructors_validate() {
        assert!(GraphModel::linear(0.0).is_err());
        assert!(GraphModel::power_law(1.0, -0.1, 2.0).is_err());
        assert!(GraphModel::power_law(1.0, 0.0, 1.0).is_err());
        let lin = GraphModel::linear(1.0).unwrap();
        assert!(GraphModel::regularized(lin.clone(), 1.0).is_err());
        let reg = GraphModel::regularized(lin, 0.1).unwrap();
        assert!(GraphModel::regularized(reg, 0.1).is_err());
    }

    #[test]
    fn linear_resolvent_closed_form() {
        // D- = D/(1 + 2 nu eps), S = 2 nu D/(1 + 2 nu eps) + eps D
        let nu = 1.3;
        let eps = 0.2;
        let base = GraphModel::linear(nu).unwrap();
        for d in [-3.0, -0.4, 0.7, 5.0] {
            let s = regularize_select(&base, eps, d).unwrap();
            let expected = 2.0 * nu * d / (1.0 + 2.0 * nu * eps) + eps * d;
            assert_abs_diff_eq!(s, expected, epsilon = 1e-12);
        }
        assert_eq!(regularize_select(&base, eps, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn regularization_converges_to_base() {
        // first order in eps: two eps values, monotone error decrease
        let base = GraphModel::power_law(1.0, 0.0, 3.0).unwrap();
        let d = 1.4;
        let exact = select_stress(&base, d).unwrap();
        let e1 = (regularize_select(&base, 0.1, d).unwrap() - exact).abs();
        let e2 = (regularize_select(&base, 0.01, d).unwrap() - exact).abs();
        assert!(e2 < 0.2 * e1, "e(0.01) = {e2:e} vs e(0.1) = {e1:e}");
    }

    #[test]
    fn resolvent_identity_reconstructs() {
        for (base, eps) in [
            (GraphModel::power_law(1.0, 0.0, 1.2).unwrap(), 0.5),
            (GraphModel::power_law(2.0, 0.3, 3.0).unwrap(), 0.05),
            (GraphModel::linear(0.7).unwrap(), 0.89),
        ] {
            for d in [-7.3, -0.02, 0.4, 9.9] {
                let point = regularize_resolve(&base, eps, d).unwrap();
                let rebuilt = point.d_bar + eps * select_stress(&base, point.d_bar).unwrap();
                assert_abs_diff_eq!(rebuilt, d, epsilon = 1e-10 * d.abs().max(1.0));
            }
        }
    }

    #[test]
    fn stress_reconstruction_well_conditioned_for_linear_base() {
        // for the linear base the backwards route through S is exact algebra
        let base = GraphModel::linear(0.7).unwrap();
        let eps = 0.3;
        for d in [-5.0, 0.125, 2.0] {
            let s = regularize_select(&base, eps, d).unwrap();
            let s_bar = s - eps * d;
            let d_bar = d - eps * s_bar;
            let rebuilt = d_bar + eps * select_stress(&base, d_bar).unwrap();
            assert_abs_diff_eq!(rebuilt, d, epsilon = 1e-12);
        }
    }

    #[test]
    fn uniform_monotonicity_and_lipschitz_bounds() {
        let base = GraphModel::power_law(1.0, 0.0, 1.5).unwrap();
        let eps = 0.1;
        let ds = sample_shear_rates(400, 42);
        for w in ds.windows(2) {
            let (d1, d2) = (w[0], w[1]);
            let s1 = regularize_select(&base, eps, d1).unwrap();
            let s2 = regularize_select(&base, eps, d2).unwrap();
            let dd = d1 - d2;
            let ds_ = s1 - s2;
            assert!(ds_ * dd >= eps * dd * dd - 1e-10);
            assert!(ds_.abs() <= (eps + 1.0 / eps) * dd.abs() + 1e-10);
        }
    }

    #[test]
    fn axioms_pass_for_shipped_models() {
        let linear = GraphModel::linear(1.0).unwrap();
        let report = check_axioms(&linear, 200, 7).unwrap();
        assert!(report.origin_ok);
        assert!(report.min_monotone_pairing >= 0.0);
        assert!(report.min_coercivity_margin >= -1e-12);
        assert_eq!(report.r, 2.0);
        assert_eq!(report.c2, 0.0);

        for r in [1.2, 1.5, 2.0, 3.0] {
            let pl = GraphModel::power_law(1.0, 0.0, r).unwrap();
            assert!(check_axioms(&pl, 200, 7).is_ok(), "power law r = {r}");
            let reg = GraphModel::regularized(pl, 0.1).unwrap();
            assert!(check_axioms(&reg, 200, 7).is_ok(), "regularized r = {r}");
        }
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let err = check_scalar_axioms(|d| -d, 2.0, None, 200, 7).unwrap_err();
        assert!(matches!(err, GraphError::AxiomViolation { axiom: "A2", .. }));
    }

    #[test]
    fn min_coercivity_examples() {
        let linear = GraphModel::linear(1.0).unwrap();
        assert!(min_coercivity_check(&linear, 0.1, 200).unwrap().holds());
        let pl = GraphModel::power_law(1.0, 0.0, 1.2).unwrap();
        assert!(min_coercivity_check(&pl, 0.5, 200).unwrap().holds());
        // the zero map cannot dominate |D|^min(r,2) over a wide sample range
        let zero_map = min_coercivity_check_with(|_| 0.0, 1.2, 0.5, 200);
        assert!(!zero_map.holds());
        assert!(!zero_map.base_coercive);
    }

    #[test]
    fn cutoff_branches() {
        assert_eq!(cutoff(0.5, 0.0), 1.0);
        assert_eq!(cutoff(0.5, 6.0), 0.0);
        assert_abs_diff_eq!(cutoff(0.5, 3.0), 0.5, epsilon = 1e-15);
        assert_eq!(cutoff(0.5, -3.0), 0.5);
        // pointwise convergence to 1 as delta -> 0
        let s = 37.0;
        assert_eq!(cutoff(1e-3, s), 1.0);
    }

    #[test]
    fn boundary_selections() {
        let navier = BoundaryGraphModel::navier_linear(1.0).unwrap();
        assert_eq!(select_boundary(&navier, 0.0), 0.0);
        assert_eq!(select_boundary(&navier, 0.37), 0.37);
        let pls = BoundaryGraphModel::power_law_slip(2.0, 3.0).unwrap();
        assert_abs_diff_eq!(select_boundary(&pls, 2.0), 8.0, epsilon = 1e-14);
        assert_abs_diff_eq!(select_boundary(&pls, -2.0), -8.0, epsilon = 1e-14);
        assert_eq!(select_boundary(&pls, 0.0), 0.0);
    }

    #[test]
    fn resolvent_divergence_on_non_monotone_base() {
        // a decreasing phi breaks the bracket; the solver reports divergence
        let err = solve_resolvent_magnitude(|m| -2.0 * m, |_| None, 0.9, 1.0);
        assert!(matches!(err, Err(GraphError::ResolventDivergence { .. })));
    }
}
