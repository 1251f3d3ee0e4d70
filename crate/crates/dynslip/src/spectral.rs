//! The dynamic-slip eigenbasis on `[0, h]`.
//!
//! The modes are `u_i(x) = A_i sin(lambda_i x)` where `lambda_i` solves the
//! transcendental condition
//!
//! ```text
//! (alpha - beta*lambda^2) sin(lambda h) = -lambda cos(lambda h),
//! ```
//!
//! equivalently `cot(lambda h) = beta*lambda - alpha/lambda`.  The right-hand
//! side of the cotangent form is increasing while the cotangent falls from
//! +inf to -inf on each period, so exactly one root sits strictly inside
//! each bracket `((i-1)pi/h, i*pi/h)`.  The amplitude
//!
//! ```text
//! A_i = ( h/2 + (alpha + beta*lambda_i^2)/(2 lambda_i^2) * sin^2(lambda_i h) )^(-1/2)
//! ```
//!
//! normalizes the modes in the beta-weighted inner product
//! `(f, g)_H = int_0^h f g dx + beta * f(h) g(h)`, the Hilbert structure that
//! makes the time derivative on the boundary meaningful.
//!
//! The sign of `beta*lambda_i^2 - alpha` splits the spectrum: modes below the
//! crossover pull the boundary response in the opposite direction from the
//! tail and are counted by [`count_negative_modes`].

use crate::params::SlipParams;
use crate::quad;
use crate::KahanSum;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    /// No sign change on the shrunken bracket: the parameters have pushed the
    /// root into the excluded endpoint margin (degenerate configuration).
    #[error("no sign change for mode {index} on ({lo}, {hi}): f(lo)={f_lo:e}, f(hi)={f_hi:e}")]
    BracketFailure {
        index: usize,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("x = {x} outside the channel [0, {h}]")]
    Domain { x: f64, h: f64 },
}

/// One spectral mode: index, eigenvalue and normalizing amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    /// 1-based mode index; `lambda` lies in `((index-1)pi/h, index*pi/h)`.
    pub index: usize,
    pub lambda: f64,
    pub amplitude: f64,
}

impl EigenPair {
    /// `u_i(x) = A_i sin(lambda_i x)`, without a domain check.
    pub fn eval(&self, x: f64) -> f64 {
        self.amplitude * (self.lambda * x).sin()
    }

    /// `u_i'(x) = A_i lambda_i cos(lambda_i x)`.
    pub fn eval_deriv(&self, x: f64) -> f64 {
        self.amplitude * self.lambda * (self.lambda * x).cos()
    }
}

/// Residual of the eigenvalue condition:
/// `f(lambda) = (alpha - beta*lambda^2) sin(lambda h) + lambda cos(lambda h)`.
///
/// Zero exactly when `lambda` is an eigenvalue.
pub fn eigen_condition(params: &SlipParams, lambda: f64) -> f64 {
    let s = (lambda * params.h).sin();
    let c = (lambda * params.h).cos();
    (params.alpha - params.beta * lambda * lambda) * s + lambda * c
}

/// Analytic derivative of [`eigen_condition`] in `lambda`, used by the
/// Newton polish.
pub fn eigen_condition_deriv(params: &SlipParams, lambda: f64) -> f64 {
    let h = params.h;
    let s = (lambda * h).sin();
    let c = (lambda * h).cos();
    -2.0 * params.beta * lambda * s + (params.alpha - params.beta * lambda * lambda) * h * c + c
        - lambda * h * s
}

/// Relative margin by which each bracket endpoint is excluded.
const BRACKET_MARGIN: f64 = 1e-9;
/// Bisection terminates at this fraction of the bracket width `pi/h`.
const BISECT_WIDTH: f64 = 1e-13;

/// Solve for the `i`-th eigenvalue in `((i-1)pi/h, i*pi/h)`.
///
/// Bisection on the bracket shrunk by `1e-9 * pi/h` at each endpoint, down
/// to width `1e-13 * pi/h`, then at most five Newton steps with the analytic
/// derivative (discarded if they leave the bracket or fail to reduce the
/// residual).  Perfect slip is dispatched to its closed form
/// `lambda_i = (i - 1/2) pi / h`.
pub fn solve_eigenvalue(params: &SlipParams, i: usize) -> Result<f64, SpectralError> {
    assert!(i >= 1, "mode indices are 1-based");
    let h = params.h;
    if params.alpha == 0.0 && params.beta == 0.0 {
        // cos(lambda h) = 0 at the bracket midpoint
        return Ok((i as f64 - 0.5) * PI / h);
    }
    let width = PI / h;
    let margin = BRACKET_MARGIN * width;
    let mut lo = (i as f64 - 1.0) * width + margin;
    let mut hi = i as f64 * width - margin;
    let mut f_lo = eigen_condition(params, lo);
    let f_hi = eigen_condition(params, hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(SpectralError::BracketFailure {
            index: i,
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let (orig_lo, orig_hi) = (lo, hi);
    let xtol = BISECT_WIDTH * width;
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        // large brackets bottom out at one ulp before reaching xtol
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eigen_condition(params, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish for the last digits; fall back to the bisection value
    // whenever a step escapes the bracket or the residual grows.
    let mut x = 0.5 * (lo + hi);
    let mut fx = eigen_condition(params, x);
    for _ in 0..5 {
        if fx == 0.0 {
            break;
        }
        let d = eigen_condition_deriv(params, x);
        if d == 0.0 {
            break;
        }
        let candidate = x - fx / d;
        if !candidate.is_finite() || candidate <= orig_lo || candidate >= orig_hi {
            break;
        }
        let f_candidate = eigen_condition(params, candidate);
        if f_candidate.abs() < fx.abs() {
            x = candidate;
            fx = f_candidate;
        } else {
            break;
        }
    }
    Ok(x)
}

/// Normalizing amplitude for the eigenvalue `lambda`:
/// `A = (h/2 + (alpha + beta*lambda^2)/(2 lambda^2) * sin^2(lambda h))^(-1/2)`.
pub fn amplitude(params: &SlipParams, lambda: f64) -> f64 {
    let s = (lambda * params.h).sin();
    let norm_sq =
        0.5 * params.h + (params.alpha + params.beta * lambda * lambda) / (2.0 * lambda * lambda) * s * s;
    norm_sq.sqrt().recip()
}

/// Count of modes with `beta*lambda_i^2 - alpha < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeCount {
    Finite(u64),
    Infinite,
}

/// How many modes have a sign-flipped boundary contribution, i.e.
/// `beta*lambda_i^2 - alpha < 0`.
///
/// For `beta > 0` the count is exact and closed-form:
/// `beta*lambda_i^2 < alpha` holds iff it holds at the bracket midpoint
/// `(i - 1/2) pi / h` (the cotangent vanishes there and the right-hand side
/// of the cotangent form is increasing), so
///
/// ```text
/// N = #{ i >= 1 : i < (h/pi) sqrt(alpha/beta) + 1/2 }.
/// ```
///
/// Navier slip (`beta = 0`, `alpha > 0`) makes every term negative, which is
/// reported as the distinguished [`ModeCount::Infinite`] value; perfect slip
/// has no negative terms at all.
pub fn count_negative_modes(params: &SlipParams) -> ModeCount {
    if params.beta == 0.0 {
        return if params.alpha == 0.0 {
            ModeCount::Finite(0)
        } else {
            ModeCount::Infinite
        };
    }
    let x = params.h * (params.alpha / params.beta).sqrt() / PI + 0.5;
    let n = if x <= 1.0 {
        0
    } else if x.fract() == 0.0 {
        x as u64 - 1
    } else {
        x.floor() as u64
    };
    ModeCount::Finite(n)
}

/// The beta-weighted inner product
/// `(f, g)_H = int_0^h f g dx + beta * f(h) g(h)`,
/// with the integral evaluated by the default Gauss–Legendre rule.
pub fn h_inner<F, G>(params: &SlipParams, f: F, g: G) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let integral = quad::default_rule().integrate(0.0, params.h, |x| f(x) * g(x));
    integral + params.beta * f(params.h) * g(params.h)
}

/// `(f, f)_H`.
pub fn h_norm_sq<F: Fn(f64) -> f64>(params: &SlipParams, f: F) -> f64 {
    h_inner(params, &f, &f)
}

/// The alpha-weighted gradient product
/// `(f, g)_V = int_0^h f' g' dx + alpha * f(h) g(h)`.
///
/// On the eigenbasis `(u_i, u_j)_V = lambda_i^2 (u_i, u_j)_H`, which is the
/// squaring relation between this product's eigenvalues and the `lambda_i`
/// of [`eigen_condition`].
pub fn v_inner<Fp, Gp>(params: &SlipParams, f_deriv: Fp, f_at_h: f64, g_deriv: Gp, g_at_h: f64) -> f64
where
    Fp: Fn(f64) -> f64,
    Gp: Fn(f64) -> f64,
{
    let integral = quad::default_rule().integrate(0.0, params.h, |x| f_deriv(x) * g_deriv(x));
    integral + params.alpha * f_at_h * g_at_h
}

/// An ordered, H-orthonormal family of modes.
#[derive(Debug, Clone)]
pub struct Basis {
    params: SlipParams,
    pairs: Vec<EigenPair>,
}

impl Basis {
    /// Solve the first `n` slip eigenvalues and build the basis.
    pub fn new(params: SlipParams, n: usize) -> Result<Self, SpectralError> {
        assert!(n >= 1, "a basis needs at least one mode");
        let mut pairs = Vec::with_capacity(n);
        for i in 1..=n {
            let lambda = solve_eigenvalue(&params, i)?;
            pairs.push(EigenPair {
                index: i,
                lambda,
                amplitude: amplitude(&params, lambda),
            });
        }
        Ok(Self { params, pairs })
    }

    /// The homogeneous-Dirichlet reference basis:
    /// `lambda_i = i pi / h`, `A_i = sqrt(2/h)`.
    ///
    /// These modes vanish at both walls, so they are orthonormal in the
    /// plain `L^2` product; the stored parameters carry `alpha = beta = 0`.
    pub fn dirichlet(h: f64, n: usize) -> Self {
        assert!(n >= 1 && h > 0.0);
        let params = SlipParams::new(0.0, 0.0, h).expect("valid Dirichlet parameters");
        let amplitude = (2.0 / h).sqrt();
        let pairs = (1..=n)
            .map(|i| EigenPair {
                index: i,
                lambda: i as f64 * PI / h,
                amplitude,
            })
            .collect();
        Self { params, pairs }
    }

    pub fn params(&self) -> &SlipParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[EigenPair] {
        &self.pairs
    }

    /// Evaluate mode `i` (1-based) at `x`, rejecting points outside `[0, h]`.
    pub fn eval_mode(&self, i: usize, x: f64) -> Result<f64, SpectralError> {
        if !(0.0..=self.params.h).contains(&x) {
            return Err(SpectralError::Domain { x, h: self.params.h });
        }
        Ok(self.pairs[i - 1].eval(x))
    }

    /// `u_i(h)` for every mode, in index order.
    pub fn boundary_values(&self) -> Vec<f64> {
        let h = self.params.h;
        self.pairs.iter().map(|p| p.eval(h)).collect()
    }

    /// `int_0^h u_i dx = A_i (1 - cos(lambda_i h)) / lambda_i` for every mode.
    pub fn mode_integrals(&self) -> Vec<f64> {
        let h = self.params.h;
        self.pairs
            .iter()
            .map(|p| p.amplitude * (1.0 - (p.lambda * h).cos()) / p.lambda)
            .collect()
    }

    /// Truncated modal sum `sum_i c_i u_i(x)`.
    pub fn synthesize(&self, coeffs: &[f64], x: f64) -> f64 {
        let mut acc = KahanSum::new();
        for (c, p) in coeffs.iter().zip(&self.pairs) {
            acc.add(c * p.eval(x));
        }
        acc.value()
    }

    /// Truncated modal derivative `sum_i c_i u_i'(x)`.
    pub fn synthesize_deriv(&self, coeffs: &[f64], x: f64) -> f64 {
        let mut acc = KahanSum::new();
        for (c, p) in coeffs.iter().zip(&self.pairs) {
            acc.add(c * p.eval_deriv(x));
        }
        acc.value()
    }
}
