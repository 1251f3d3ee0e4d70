//! Start-up flow driven by a moving wall.
//!
//! The wall at `x = h` accelerates linearly to unit speed over a ramp time
//! `delta` (`V(t) = min(t/delta, 1)`) while the fluid starts from rest.  In
//! the slip eigenbasis the solution is `w(t, x) = sum_j c_j(t) u_j(x)` with
//! modal coefficients solving
//!
//! ```text
//! c_j' + lambda_j^2 c_j = (alpha V(t) + beta V'(t)) u_j(h),   c_j(0) = 0,
//! ```
//!
//! which integrates to a two-branch closed form (before and after the kink
//! at `t = delta`).  As `delta -> 0+` the boundary trace collapses to
//!
//! ```text
//! w(t, h) -> sum_i 2 (alpha + (beta lambda_i^2 - alpha) e^{-lambda_i^2 t})
//!            / (h (lambda_i^2 + (beta lambda_i^2 - alpha)^2) + alpha + beta lambda_i^2),
//! ```
//!
//! and for long times the profile settles on the Navier-type stationary
//! solution `w(x) = alpha x / (alpha h + 1)` regardless of `beta`.  The sign
//! of each boundary term is the sign of `beta lambda_i^2 - alpha`, so the
//! low modes counted by [`crate::spectral::count_negative_modes`] decide
//! whether the slip velocity relaxes monotonically or overshoots.

use crate::params::SlipParams;
use crate::spectral::Basis;
use crate::KahanSum;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ShearError {
    #[error("ramp time delta must lie in (0, 1], got {0}")]
    InvalidDelta(f64),
    #[error("scenario uses the analytic delta -> 0 limit; modal coefficients need a finite ramp")]
    AnalyticLimitMisuse,
    #[error("x = {x} outside the channel [0, {h}]")]
    Domain { x: f64, h: f64 },
    #[error("boundary response matches none of the known patterns")]
    Inconclusive,
    #[error("classification grid needs at least {min} increasing positive times, got {got}")]
    BadGrid { min: usize, got: usize },
}

/// Ramp time: finite `delta in (0, 1]` or the analytic `delta -> 0+` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RampDelta {
    Finite(f64),
    AnalyticLimit,
}

/// Wall velocity `V(t) = min(t/delta, 1)`.
pub fn ramp_velocity(delta: f64, t: f64) -> f64 {
    (t / delta).min(1.0)
}

/// Ramp rate `V'(t)`: `1/delta` strictly before the kink, zero from it on.
pub fn ramp_rate(delta: f64, t: f64) -> f64 {
    if t < delta {
        1.0 / delta
    } else {
        0.0
    }
}

/// A moving-wall scenario: basis, mode count and ramp time.
#[derive(Debug, Clone)]
pub struct ShearScenario {
    basis: Basis,
    delta: RampDelta,
}

impl ShearScenario {
    pub fn new(basis: Basis, delta: RampDelta) -> Result<Self, ShearError> {
        if let RampDelta::Finite(d) = delta {
            if !(d > 0.0 && d <= 1.0 && d.is_finite()) {
                return Err(ShearError::InvalidDelta(d));
            }
        }
        Ok(Self { basis, delta })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn delta(&self) -> RampDelta {
        self.delta
    }

    pub fn params(&self) -> &SlipParams {
        self.basis.params()
    }

    fn finite_delta(&self) -> Result<f64, ShearError> {
        match self.delta {
            RampDelta::Finite(d) => Ok(d),
            RampDelta::AnalyticLimit => Err(ShearError::AnalyticLimitMisuse),
        }
    }

    /// Modal coefficient `c_j(t)` (`j` is 1-based).
    ///
    /// Both branches are exact integrals of the modal ODE; the exponential
    /// ramp factor is evaluated through `expm1` and carries only
    /// non-positive exponents, so the formula stays stable for arbitrarily
    /// large `lambda_j^2 * delta`.  The branches meet continuously at
    /// `t = delta`.
    pub fn coeff(&self, j: usize, t: f64) -> Result<f64, ShearError> {
        let delta = self.finite_delta()?;
        let p = self.params();
        let pair = &self.basis.pairs()[j - 1];
        let l2 = pair.lambda * pair.lambda;
        let u_h = pair.eval(p.h);
        let sign_factor = p.beta * l2 - p.alpha;
        if t < 0.0 {
            return Ok(0.0);
        }
        let value = if t < delta {
            // (1 - e^{-l2 t}) / l2 via expm1
            let ramp_int = -(-l2 * t).exp_m1() / l2;
            u_h / (delta * l2) * (p.alpha * t + sign_factor * ramp_int)
        } else {
            // e^{-l2 t} (e^{l2 delta} - 1) / (l2 delta)
            //   = e^{-l2 (t - delta)} * (1 - e^{-l2 delta}) / (l2 delta)
            let decay = (-l2 * (t - delta)).exp() * (-(-l2 * delta).exp_m1()) / (l2 * delta);
            u_h / l2 * (p.alpha + sign_factor * decay)
        };
        Ok(value)
    }

    /// Truncated series `w(t, x) = sum_j c_j(t) u_j(x)`.
    pub fn solution(&self, t: f64, x: f64) -> Result<f64, ShearError> {
        let h = self.params().h;
        if !(0.0..=h).contains(&x) {
            return Err(ShearError::Domain { x, h });
        }
        let mut acc = KahanSum::new();
        for j in 1..=self.basis.len() {
            acc.add(self.coeff(j, t)? * self.basis.pairs()[j - 1].eval(x));
        }
        Ok(acc.value())
    }
}

/// Boundary trace `w(t, h)` in the `delta -> 0+` limit, truncated to the
/// basis modes.
///
/// Only `t > 0` is meaningful: the limit is discontinuous at `t = 0`.
pub fn boundary_slip_limit(basis: &Basis, t: f64) -> f64 {
    let p = basis.params();
    let mut acc = KahanSum::new();
    // summed smallest-terms-last is fine under compensation; keep index order
    for pair in basis.pairs() {
        let l2 = pair.lambda * pair.lambda;
        let sign_factor = p.beta * l2 - p.alpha;
        let denom = p.h * (l2 + sign_factor * sign_factor) + p.alpha + p.beta * l2;
        acc.add(2.0 * (p.alpha + sign_factor * (-l2 * t).exp()) / denom);
    }
    acc.value()
}

/// Stationary profile `w(x) = alpha x / (alpha h + 1)`, the Navier-slip
/// response every transient relaxes to.
pub fn stationary(params: &SlipParams, x: f64) -> f64 {
    params.alpha * x / (params.alpha * params.h + 1.0)
}

/// Slip defect `w(t, h) - w(h)` truncated to the basis modes:
/// `sum_i (u_i(h)^2 / lambda_i^2) (beta lambda_i^2 - alpha) e^{-lambda_i^2 t}`.
pub fn slip_defect(basis: &Basis, t: f64) -> f64 {
    let mut acc = KahanSum::new();
    for pair in basis.pairs() {
        acc.add(slip_defect_term(basis, pair.index, t));
    }
    acc.value()
}

/// Single term of [`slip_defect`] (`i` is 1-based).
pub fn slip_defect_term(basis: &Basis, i: usize, t: f64) -> f64 {
    let p = basis.params();
    let pair = &basis.pairs()[i - 1];
    let l2 = pair.lambda * pair.lambda;
    let u_h = pair.eval(p.h);
    u_h * u_h / l2 * (p.beta * l2 - p.alpha) * (-l2 * t).exp()
}

/// Truncated eigenexpansion of the stationary boundary value,
/// `sum_i alpha u_i(h)^2 / lambda_i^2`.
///
/// Converges to `stationary(params, h) = alpha h / (alpha h + 1)` as the
/// mode count grows; at finite truncation it is the exact difference
/// `boundary_slip_limit - slip_defect` term by term.
pub fn stationary_boundary_series(basis: &Basis) -> f64 {
    let p = basis.params();
    let mut acc = KahanSum::new();
    for pair in basis.pairs() {
        let l2 = pair.lambda * pair.lambda;
        let u_h = pair.eval(p.h);
        acc.add(p.alpha * u_h * u_h / l2);
    }
    acc.value()
}

/// Qualitative boundary response of `1 - w(t, h)` in the `delta -> 0` limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Response {
    /// Relaxes to the stationary value from below, never decreasing.
    Monotone,
    /// Rises past the stationary value before relaxing back: the dynamic
    /// slip signature.
    Overshoot,
    /// Static slip (`beta = 0`): jumps at the origin, then decreases.
    NavierJump,
}

/// Monotonicity slack absorbing series-truncation noise.
const CLASSIFY_TOL: f64 = 1e-9;

/// Classify the relative slip `1 - w(t, h)` sampled on `t_grid`.
///
/// The grid must hold at least 50 strictly increasing positive times.
pub fn classify_response(basis: &Basis, t_grid: &[f64]) -> Result<Response, ShearError> {
    if t_grid.len() < 50 {
        return Err(ShearError::BadGrid {
            min: 50,
            got: t_grid.len(),
        });
    }
    let increasing = t_grid.windows(2).all(|w| w[1] > w[0]);
    if !increasing || t_grid[0] <= 0.0 {
        return Err(ShearError::BadGrid {
            min: 50,
            got: t_grid.len(),
        });
    }
    let s: Vec<f64> = t_grid
        .iter()
        .map(|&t| 1.0 - boundary_slip_limit(basis, t))
        .collect();
    let nondecreasing = s.windows(2).all(|w| w[1] >= w[0] - CLASSIFY_TOL);
    if nondecreasing {
        return Ok(Response::Monotone);
    }
    if basis.params().beta == 0.0 {
        let nonincreasing_after_first = s[1..].windows(2).all(|w| w[1] <= w[0] + CLASSIFY_TOL);
        if nonincreasing_after_first {
            return Ok(Response::NavierJump);
        }
    }
    let (argmax, &max) = s
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is nonempty");
    let interior = argmax > 0 && argmax + 1 < s.len();
    if interior && max > s[0] + CLASSIFY_TOL && max > *s.last().unwrap() + CLASSIFY_TOL {
        return Ok(Response::Overshoot);
    }
    Err(ShearError::Inconclusive)
}
