//! Slip parameters and the regime taxonomy.

use thiserror::Error;

/// Default root tolerance for the eigenvalue solver.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Validation failures for [`SlipParams`].
#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("slip coefficient alpha must be >= 0 and finite, got {0}")]
    Alpha(f64),
    #[error("dynamic coefficient beta must be >= 0 and finite, got {0}")]
    Beta(f64),
    #[error("channel height h must be > 0 and finite, got {0}")]
    Height(f64),
    #[error("tolerance must be > 0 and finite, got {0}")]
    Tolerance(f64),
}

/// Slip regime determined by the sign pattern of `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlipRegime {
    /// `alpha = 0`, `beta = 0`: the wall exerts no tangential stress.
    PerfectSlip,
    /// `alpha > 0`, `beta = 0`: static (Navier) slip.
    Navier,
    /// `beta > 0`: the wall response carries its own time derivative.
    Dynamic,
}

/// The parameter triple `(alpha, beta, h)` plus the root tolerance.
///
/// `alpha` weighs the static stress response, `beta` the dynamic
/// (time-derivative) response, and `h` is the channel height.  All
/// quantities are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlipParams {
    pub alpha: f64,
    pub beta: f64,
    pub h: f64,
    pub tol: f64,
}

impl SlipParams {
    /// Validated constructor with the default root tolerance.
    pub fn new(alpha: f64, beta: f64, h: f64) -> Result<Self, ParamError> {
        Self::with_tol(alpha, beta, h, DEFAULT_TOL)
    }

    /// Validated constructor with an explicit root tolerance.
    pub fn with_tol(alpha: f64, beta: f64, h: f64, tol: f64) -> Result<Self, ParamError> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(ParamError::Alpha(alpha));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(ParamError::Beta(beta));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(ParamError::Height(h));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(ParamError::Tolerance(tol));
        }
        Ok(Self { alpha, beta, h, tol })
    }

    /// Classify the boundary condition.
    ///
    /// Any `beta > 0` is dynamic; `beta = 0` splits into perfect slip
    /// (`alpha = 0`) and Navier slip (`alpha > 0`).  "No slip" is the
    /// `alpha -> infinity` limit and has no finite parameter value.
    pub fn regime(&self) -> SlipRegime {
        if self.beta > 0.0 {
            SlipRegime::Dynamic
        } else if self.alpha > 0.0 {
            SlipRegime::Navier
        } else {
            SlipRegime::PerfectSlip
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_labels() {
        let p = |a, b| SlipParams::new(a, b, std::f64::consts::PI).unwrap();
        assert_eq!(p(0.0, 0.0).regime(), SlipRegime::PerfectSlip);
        assert_eq!(p(10.0, 0.0).regime(), SlipRegime::Navier);
        assert_eq!(p(10.0, 0.5).regime(), SlipRegime::Dynamic);
        assert_eq!(p(0.0, 0.5).regime(), SlipRegime::Dynamic);
    }

    #[test]
    fn rejects_bad_values() {
        assert_eq!(
            SlipParams::new(-1.0, 0.0, 1.0),
            Err(ParamError::Alpha(-1.0))
        );
        assert_eq!(SlipParams::new(0.0, -0.5, 1.0), Err(ParamError::Beta(-0.5)));
        assert_eq!(SlipParams::new(0.0, 0.0, 0.0), Err(ParamError::Height(0.0)));
        assert!(SlipParams::new(0.0, 0.0, f64::NAN).is_err());
        assert!(SlipParams::with_tol(1.0, 1.0, 1.0, 0.0).is_err());
    }
}
