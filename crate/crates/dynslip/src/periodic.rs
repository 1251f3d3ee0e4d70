//! Pressure-driven time-periodic flow.
//!
//! A pressure gradient `cos(2 pi t / T)` along the channel forces
//!
//! ```text
//! d/dt u - d2/dx2 u = -cos(2 pi t / T),
//! ```
//!
//! with `u(t, 0) = 0`, the dynamic slip condition at `x = h`, and
//! periodicity `u(0, x) = u(T, x)`.  Each modal coefficient solves
//!
//! ```text
//! c_j' + lambda_j^2 c_j = (A_j / lambda_j)(cos(lambda_j h) - 1) cos(2 pi t / T)
//! ```
//!
//! whose unique periodic solution is
//!
//! ```text
//! c_j(t) = 2 pi T / (4 pi^2 + lambda_j^4 T^2) * (A_j / lambda_j)(cos(lambda_j h) - 1)
//!          * [ sin(2 pi t / T) + (lambda_j^2 T / (2 pi)) cos(2 pi t / T) ].
//! ```
//!
//! The wall shear stress is the boundary derivative
//! `dx w(t, h) = sum_i c_i(t) lambda_i A_i cos(lambda_i h)`, the quantity
//! compared against the homogeneous-Dirichlet reference solution (whose
//! basis is `sqrt(2/h) sin(i pi x / h)` and whose even modes receive no
//! forcing at all).

use crate::params::SlipParams;
use crate::spectral::Basis;
use crate::KahanSum;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PeriodicError {
    #[error("period must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("x = {x} outside the channel [0, {h}]")]
    Domain { x: f64, h: f64 },
}

/// A pressure-driven periodic scenario: basis plus forcing period.
#[derive(Debug, Clone)]
pub struct PeriodicScenario {
    basis: Basis,
    period: f64,
}

impl PeriodicScenario {
    pub fn new(basis: Basis, period: f64) -> Result<Self, PeriodicError> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(PeriodicError::InvalidPeriod(period));
        }
        Ok(Self { basis, period })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn params(&self) -> &SlipParams {
        self.basis.params()
    }

    /// Forcing amplitude of mode `j`:
    /// `(A_j / lambda_j)(cos(lambda_j h) - 1)`.
    fn forcing_amplitude(&self, j: usize) -> f64 {
        let p = self.basis.params();
        let pair = &self.basis.pairs()[j - 1];
        pair.amplitude / pair.lambda * ((pair.lambda * p.h).cos() - 1.0)
    }

    /// Periodic initial value `c_j(0) = c_j(T)
    /// = lambda_j T^2 / (4 pi^2 + lambda_j^4 T^2) * A_j (cos(lambda_j h) - 1)`.
    pub fn coeff0(&self, j: usize) -> f64 {
        let pair = &self.basis.pairs()[j - 1];
        let p = self.basis.params();
        let l = pair.lambda;
        let t2 = self.period * self.period;
        l * t2 / (4.0 * PI * PI + l.powi(4) * t2) * pair.amplitude * ((l * p.h).cos() - 1.0)
    }

    /// Periodic modal coefficient `c_j(t)`.
    pub fn coeff(&self, j: usize, t: f64) -> f64 {
        let pair = &self.basis.pairs()[j - 1];
        let l2 = pair.lambda * pair.lambda;
        let pref = 2.0 * PI * self.period / (4.0 * PI * PI + l2 * l2 * self.period * self.period);
        let theta = 2.0 * PI * t / self.period;
        pref * self.forcing_amplitude(j)
            * (theta.sin() + l2 * self.period / (2.0 * PI) * theta.cos())
    }

    /// Analytic time derivative of [`Self::coeff`].
    pub fn coeff_deriv(&self, j: usize, t: f64) -> f64 {
        let pair = &self.basis.pairs()[j - 1];
        let l2 = pair.lambda * pair.lambda;
        let pref = 2.0 * PI * self.period / (4.0 * PI * PI + l2 * l2 * self.period * self.period);
        let theta = 2.0 * PI * t / self.period;
        let omega = 2.0 * PI / self.period;
        pref * self.forcing_amplitude(j)
            * omega
            * (theta.cos() - l2 * self.period / (2.0 * PI) * theta.sin())
    }

    /// Residual of the modal ODE, `c_j'(t) + lambda_j^2 c_j(t) - rhs_j(t)`,
    /// using the analytic derivative.  Zero up to rounding.
    pub fn ode_residual(&self, j: usize, t: f64) -> f64 {
        let pair = &self.basis.pairs()[j - 1];
        let l2 = pair.lambda * pair.lambda;
        let theta = 2.0 * PI * t / self.period;
        self.coeff_deriv(j, t) + l2 * self.coeff(j, t) - self.forcing_amplitude(j) * theta.cos()
    }

    /// Interior solution `w(t, x) = sum_i c_i(t) u_i(x)`.
    pub fn solution(&self, t: f64, x: f64) -> Result<f64, PeriodicError> {
        let h = self.params().h;
        if !(0.0..=h).contains(&x) {
            return Err(PeriodicError::Domain { x, h });
        }
        let mut acc = KahanSum::new();
        for j in 1..=self.basis.len() {
            acc.add(self.coeff(j, t) * self.basis.pairs()[j - 1].eval(x));
        }
        Ok(acc.value())
    }

    /// Wall shear stress
    /// `dx w(t, h) = sum_i c_i(t) lambda_i A_i cos(lambda_i h)`.
    pub fn wall_shear(&self, t: f64) -> f64 {
        let h = self.params().h;
        let mut acc = KahanSum::new();
        for j in 1..=self.basis.len() {
            let pair = &self.basis.pairs()[j - 1];
            acc.add(self.coeff(j, t) * pair.lambda * pair.amplitude * (pair.lambda * h).cos());
        }
        acc.value()
    }
}

/// Periodic coefficient of the Dirichlet reference solution (`j` 1-based).
///
/// The Dirichlet modes are `sqrt(2/h) sin(j pi x / h)`, so
/// `cos(lambda_j h) = (-1)^j` identically and even modes receive no
/// forcing: the even coefficients are exactly zero.  The parity is applied
/// symbolically so they vanish bit-exactly.
pub fn dirichlet_coeff(h: f64, period: f64, j: usize, t: f64) -> f64 {
    if j.is_multiple_of(2) {
        return 0.0;
    }
    let lambda = j as f64 * PI / h;
    let amplitude = (2.0 / h).sqrt();
    let l2 = lambda * lambda;
    // cos(lambda_j h) - 1 = (-1)^j - 1 = -2 for odd j
    let forcing = amplitude / lambda * (-2.0);
    let pref = 2.0 * PI * period / (4.0 * PI * PI + l2 * l2 * period * period);
    let theta = 2.0 * PI * t / period;
    pref * forcing * (theta.sin() + l2 * period / (2.0 * PI) * theta.cos())
}

/// Residual of the Dirichlet modal ODE
/// `c_j' + lambda_j^2 c_j = (A_j/lambda_j)((-1)^j - 1) cos(2 pi t / T)`.
pub fn dirichlet_ode_residual(h: f64, period: f64, j: usize, t: f64) -> f64 {
    let lambda = j as f64 * PI / h;
    let amplitude = (2.0 / h).sqrt();
    let l2 = lambda * lambda;
    let parity = if j.is_multiple_of(2) { 0.0 } else { -2.0 };
    let forcing = amplitude / lambda * parity;
    let pref = 2.0 * PI * period / (4.0 * PI * PI + l2 * l2 * period * period);
    let theta = 2.0 * PI * t / period;
    let omega = 2.0 * PI / period;
    let deriv = pref * forcing * omega * (theta.cos() - l2 * period / (2.0 * PI) * theta.sin());
    deriv + l2 * dirichlet_coeff(h, period, j, t) - forcing * theta.cos()
}

/// Wall shear of the Dirichlet reference,
/// `sum_{i<=n} c_i(t) lambda_i A_i (-1)^i`.
pub fn dirichlet_wall_shear(h: f64, period: f64, n: usize, t: f64) -> f64 {
    let amplitude = (2.0 / h).sqrt();
    let mut acc = KahanSum::new();
    for j in 1..=n {
        let lambda = j as f64 * PI / h;
        let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
        acc.add(dirichlet_coeff(h, period, j, t) * lambda * amplitude * sign);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scenario(alpha: f64, beta: f64, n: usize) -> PeriodicScenario {
        let basis = Basis::new(SlipParams::new(alpha, beta, PI).unwrap(), n).unwrap();
        PeriodicScenario::new(basis, 2.0 * PI).unwrap()
    }

    #[test]
    fn rejects_bad_period() {
        let basis = Basis::new(SlipParams::new(1.0, 1.0, PI).unwrap(), 2).unwrap();
        assert_eq!(
            PeriodicScenario::new(basis, 0.0).unwrap_err(),
            PeriodicError::InvalidPeriod(0.0)
        );
    }

    #[test]
    fn coeff0_equals_coeff_at_zero() {
        let sc = scenario(1.0, 0.1, 10);
        for j in 1..=10 {
            assert_abs_diff_eq!(sc.coeff(j, 0.0), sc.coeff0(j), epsilon = 1e-15);
        }
    }

    #[test]
    fn coeff_is_periodic() {
        let sc = scenario(1.0, 4.2, 10);
        for j in 1..=10 {
            let gap = (sc.coeff(j, 0.0) - sc.coeff(j, sc.period())).abs();
            assert!(gap <= 1e-13, "mode {j}: gap {gap:e}");
        }
    }

    #[test]
    fn coeff_has_zero_time_average() {
        // equispaced trapezoid over a full period integrates harmonics exactly
        let sc = scenario(1.0, 4.2, 6);
        let n = 256;
        for j in 1..=6 {
            let mean: f64 = (0..n)
                .map(|k| sc.coeff(j, k as f64 * sc.period() / n as f64))
                .sum::<f64>()
                / n as f64;
            assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn ode_residual_is_tiny_everywhere() {
        let sc = scenario(1.0, 4.2, 10);
        for j in 1..=10 {
            for k in 0..100 {
                let t = k as f64 * sc.period() / 100.0;
                assert!(
                    sc.ode_residual(j, t).abs() <= 1e-10,
                    "mode {j} at t={t}: {}",
                    sc.ode_residual(j, t)
                );
            }
            // special phase where the forcing cosine vanishes
            assert!(sc.ode_residual(j, sc.period() / 4.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn dirichlet_residual_is_tiny() {
        for j in 1..=10 {
            for k in 0..100 {
                let t = k as f64 * 2.0 * PI / 100.0;
                assert!(dirichlet_ode_residual(PI, 2.0 * PI, j, t).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn even_dirichlet_coefficients_vanish_exactly() {
        for j in [2, 4, 6, 8, 10] {
            for k in 0..20 {
                let t = k as f64 * 0.3;
                assert_eq!(dirichlet_coeff(PI, 2.0 * PI, j, t), 0.0);
            }
        }
    }

    #[test]
    fn wall_shear_is_periodic_with_zero_mean() {
        let sc = scenario(1.0, 4.2, 10);
        assert_abs_diff_eq!(
            sc.wall_shear(0.0),
            sc.wall_shear(sc.period()),
            epsilon = 1e-13
        );
        let n = 512;
        let mean: f64 = (0..n)
            .map(|k| sc.wall_shear(k as f64 * sc.period() / n as f64))
            .sum::<f64>()
            / n as f64;
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn solution_checks_domain() {
        let sc = scenario(1.0, 0.1, 4);
        assert!(matches!(
            sc.solution(0.1, PI + 1.0),
            Err(PeriodicError::Domain { .. })
        ));
        assert_eq!(sc.solution(0.1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn slip_wall_shear_approaches_dirichlet_as_alpha_grows() {
        // A_i -> sqrt(2/h) as alpha + beta -> infinity; the trend is monotone
        // over sampled alphas at fixed beta
        let t_samples: Vec<f64> = (1..=8).map(|k| k as f64 * 2.0 * PI / 8.0).collect();
        let mut sup_gaps = Vec::new();
        for alpha in [10.0, 100.0, 1000.0] {
            let sc = scenario(alpha, 1.0, 10);
            let sup = t_samples
                .iter()
                .map(|&t| (sc.wall_shear(t) - dirichlet_wall_shear(PI, 2.0 * PI, 10, t)).abs())
                .fold(0.0_f64, f64::max);
            sup_gaps.push(sup);
        }
        assert!(sup_gaps[1] < sup_gaps[0]);
        assert!(sup_gaps[2] < sup_gaps[1]);
    }
}
