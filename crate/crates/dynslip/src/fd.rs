//! Finite-difference oracle for the channel scenarios.
//!
//! An implicit theta-scheme (Crank–Nicolson by default) for
//! `d/dt u = d2/dx2 u + g(t)` on `[0, h]` with `u(t, 0) = 0` and the dynamic
//! slip condition at `x = h`,
//!
//! ```text
//! alpha [u(t,h) - V(t)] + beta d/dt [u(t,h) - V(t)] + dx u(t,h) = 0,
//! ```
//!
//! discretized with a second-order one-sided boundary derivative
//! `dx u(h) ~ (3 u_m - 4 u_{m-1} + u_{m-2}) / (2 dx)` and the `beta d/dt`
//! term treated implicitly, so the boundary unknown joins the linear system
//! every step.  The system is tridiagonal except for the last row, which
//! reaches back two nodes; one forward sweep plus a scalar solve for the
//! boundary value keeps each step O(m).
//!
//! This solver shares no code with the spectral evaluators; it exists to
//! cross-check them, and the grid-convergence test pins its observed order
//! at two so the agreement tolerances stay meaningful.

use crate::params::SlipParams;
use crate::shear::ramp_velocity;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FdError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("boundary-bordered system became singular at t = {t}")]
    SolveFailure { t: f64 },
    #[error("period map defect {defect:e} still above {required:e} after {periods} periods")]
    NotPeriodic {
        defect: f64,
        required: f64,
        periods: usize,
    },
}

/// Spatial/temporal resolution of the theta-scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdGrid {
    /// Interior cell count; nodes are `x_k = k h / m` for `k = 0..=m`.
    pub m: usize,
    pub dt: f64,
    /// Time-scheme weight; 1/2 is Crank–Nicolson, 1 backward Euler.
    pub theta: f64,
}

impl FdGrid {
    pub fn new(m: usize, dt: f64, theta: f64) -> Result<Self, FdError> {
        if m < 16 {
            return Err(FdError::InvalidGrid(format!("m must be >= 16, got {m}")));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(FdError::InvalidGrid(format!("dt must be > 0, got {dt}")));
        }
        if !(0.0..=1.0).contains(&theta) {
            return Err(FdError::InvalidGrid(format!(
                "theta must lie in [0, 1], got {theta}"
            )));
        }
        Ok(Self { m, dt, theta })
    }

    pub fn crank_nicolson(m: usize, dt: f64) -> Result<Self, FdError> {
        Self::new(m, dt, 0.5)
    }
}

/// Boundary condition imposed at `x = h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallBc {
    /// The dynamic slip law with the solver's `alpha`, `beta`.
    DynamicSlip,
    /// Homogeneous Dirichlet (`u(t, h) = 0`), for the reference solution.
    Dirichlet,
}

/// A sampled space-time field on the solver grid.
#[derive(Debug, Clone)]
pub struct FdField {
    pub x: Vec<f64>,
    pub times: Vec<f64>,
    /// `fields[k][j] = u(times[k], x[j])`.
    pub fields: Vec<Vec<f64>>,
    dx: f64,
}

impl FdField {
    /// One-sided second-order wall derivative at snapshot `k`.
    pub fn wall_shear(&self, k: usize) -> f64 {
        let u = &self.fields[k];
        let m = u.len() - 1;
        (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * self.dx)
    }
}

/// Result of the periodic march: the final period plus convergence data.
#[derive(Debug, Clone)]
pub struct PeriodicField {
    /// Snapshots over the final period; times are relative to its start.
    pub field: FdField,
    pub periods_marched: usize,
    /// Sup-norm distance between the last two period snapshots.
    pub period_defect: f64,
}

/// Constant-in-time factorization data for the bordered tridiagonal system.
struct ThetaScheme {
    m: usize,
    dx: f64,
    dt: f64,
    theta: f64,
    mu: f64,
    /// Forward-sweep multipliers `q_k` with `u_k = p_k - q_k u_{k+1}`.
    q: Vec<f64>,
    inv_denom: Vec<f64>,
    a0: f64,
    a1: f64,
    a2: f64,
    alpha: f64,
    beta: f64,
}

impl ThetaScheme {
    fn new(params: &SlipParams, grid: &FdGrid, bc: WallBc) -> Result<Self, FdError> {
        let m = grid.m;
        let dx = params.h / m as f64;
        let mu = grid.dt / (dx * dx);
        let theta = grid.theta;
        let (a, b, c) = (-theta * mu, 1.0 + 2.0 * theta * mu, -theta * mu);
        // constant forward sweep for rows 1..m-1
        let mut q = vec![0.0; m];
        let mut inv_denom = vec![0.0; m];
        inv_denom[1] = 1.0 / b;
        q[1] = c / b;
        for k in 2..m {
            let denom = b - a * q[k - 1];
            if denom.abs() < 1e-300 {
                return Err(FdError::SolveFailure { t: 0.0 });
            }
            inv_denom[k] = 1.0 / denom;
            q[k] = c * inv_denom[k];
        }
        let (a0, a1, a2) = match bc {
            WallBc::DynamicSlip => (
                params.beta / grid.dt + theta * params.alpha + 3.0 * theta / (2.0 * dx),
                -4.0 * theta / (2.0 * dx),
                theta / (2.0 * dx),
            ),
            WallBc::Dirichlet => (1.0, 0.0, 0.0),
        };
        Ok(Self {
            m,
            dx,
            dt: grid.dt,
            theta,
            mu,
            q,
            inv_denom,
            a0,
            a1,
            a2,
            alpha: params.alpha,
            beta: params.beta,
        })
    }

    fn wall_derivative(&self, u: &[f64]) -> f64 {
        let m = self.m;
        (3.0 * u[m] - 4.0 * u[m - 1] + u[m - 2]) / (2.0 * self.dx)
    }

    /// Advance `u` from `t0` to `t0 + dt`.  `g0`, `g1` are the interior
    /// forcing values and `v0`, `v1` the wall velocity at the two time
    /// levels; `bc` chose the last row at construction.
    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        u: &mut [f64],
        t0: f64,
        g0: f64,
        g1: f64,
        v0: f64,
        v1: f64,
        bc: WallBc,
    ) -> Result<(), FdError> {
        let m = self.m;
        let (theta, mu, dt) = (self.theta, self.mu, self.dt);
        let a = -theta * mu;
        let forcing = dt * (theta * g1 + (1.0 - theta) * g0);
        // explicit right-hand side for the interior rows
        let mut p = vec![0.0; m];
        let explicit = |k: usize| {
            u[k] + (1.0 - theta) * mu * (u[k - 1] - 2.0 * u[k] + u[k + 1]) + forcing
        };
        p[1] = explicit(1) * self.inv_denom[1];
        for k in 2..m {
            p[k] = (explicit(k) - a * p[k - 1]) * self.inv_denom[k];
        }
        let rhs_m = match bc {
            WallBc::DynamicSlip => {
                let slip0 = u[m] - v0;
                self.beta / dt * (slip0 + v1) + theta * self.alpha * v1
                    - (1.0 - theta) * (self.alpha * slip0 + self.wall_derivative(u))
            }
            WallBc::Dirichlet => 0.0,
        };
        let denom = self.a0 - self.a1 * self.q[m - 1] + self.a2 * self.q[m - 2] * self.q[m - 1];
        if denom.abs() < 1e-300 || !denom.is_finite() {
            return Err(FdError::SolveFailure { t: t0 });
        }
        let numer = rhs_m - self.a2 * p[m - 2] + self.a2 * self.q[m - 2] * p[m - 1]
            - self.a1 * p[m - 1];
        let u_m = numer / denom;
        u[m] = u_m;
        for k in (1..m).rev() {
            u[k] = p[k] - self.q[k] * u[k + 1];
        }
        u[0] = 0.0;
        Ok(())
    }
}

/// Solve the moving-wall scenario and snapshot the field at `sample_times`.
///
/// Marches from rest with wall velocity `V(t) = min(t/delta, 1)`; each
/// requested sample is matched to the nearest step time (within half a
/// step).
pub fn fd_solve_shear(
    params: &SlipParams,
    delta: f64,
    grid: &FdGrid,
    t_end: f64,
    sample_times: &[f64],
) -> Result<FdField, FdError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(FdError::InvalidGrid(format!(
            "ramp delta must be > 0, got {delta}"
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(FdError::InvalidGrid(format!(
            "t_end must be > 0, got {t_end}"
        )));
    }
    let n_steps = (t_end / grid.dt).round().max(1.0) as usize;
    let dt_eff = t_end / n_steps as f64;
    let grid_eff = FdGrid {
        dt: dt_eff,
        ..*grid
    };
    let scheme = ThetaScheme::new(params, &grid_eff, WallBc::DynamicSlip)?;
    let m = grid.m;
    let x: Vec<f64> = (0..=m).map(|k| k as f64 * params.h / m as f64).collect();
    let mut u = vec![0.0; m + 1];
    let mut field = FdField {
        x,
        times: Vec::new(),
        fields: Vec::new(),
        dx: params.h / m as f64,
    };
    let mut next_sample = 0;
    let mut record = |t: f64, u: &[f64], next_sample: &mut usize| {
        while *next_sample < sample_times.len()
            && sample_times[*next_sample] <= t + 0.5 * dt_eff
        {
            field.times.push(t);
            field.fields.push(u.to_vec());
            *next_sample += 1;
        }
    };
    record(0.0, &u, &mut next_sample);
    for n in 0..n_steps {
        let t0 = n as f64 * dt_eff;
        let t1 = (n + 1) as f64 * dt_eff;
        let v0 = ramp_velocity(delta, t0);
        let v1 = ramp_velocity(delta, t1);
        scheme.step(&mut u, t0, 0.0, 0.0, v0, v1, WallBc::DynamicSlip)?;
        record(t1, &u, &mut next_sample);
    }
    Ok(field)
}

/// Period-map contraction threshold.
const PERIODIC_DEFECT_TOL: f64 = 1e-8;

/// Solve the pressure-driven periodic scenario.
///
/// Marches `n_periods` periods from rest under the forcing
/// `g(t) = -cos(2 pi t / T)`, requires the final period map to contract to
/// `1e-8` in the sup norm, and returns `samples_per_period` snapshots of the
/// last period.
pub fn fd_solve_periodic(
    params: &SlipParams,
    period: f64,
    grid: &FdGrid,
    n_periods: usize,
    samples_per_period: usize,
    bc: WallBc,
) -> Result<PeriodicField, FdError> {
    if n_periods < 20 {
        return Err(FdError::InvalidGrid(format!(
            "need at least 20 periods to reach the periodic regime, got {n_periods}"
        )));
    }
    if !(period > 0.0 && period.is_finite()) {
        return Err(FdError::InvalidGrid(format!(
            "period must be > 0, got {period}"
        )));
    }
    if samples_per_period == 0 {
        return Err(FdError::InvalidGrid("samples_per_period must be > 0".into()));
    }
    let steps_per_period = (period / grid.dt).round().max(1.0) as usize;
    let dt_eff = period / steps_per_period as f64;
    let grid_eff = FdGrid {
        dt: dt_eff,
        ..*grid
    };
    let scheme = ThetaScheme::new(params, &grid_eff, bc)?;
    let m = grid.m;
    let omega = 2.0 * std::f64::consts::PI / period;
    let g = |t: f64| -(omega * t).cos();
    let mut u = vec![0.0; m + 1];
    let mut prev_snapshot = u.clone();
    let mut defect = f64::INFINITY;
    // snapshot step indices within a period (0-based, strictly inside or at 0)
    let sample_steps: Vec<usize> = (0..samples_per_period)
        .map(|j| j * steps_per_period / samples_per_period)
        .collect();
    let x: Vec<f64> = (0..=m).map(|k| k as f64 * params.h / m as f64).collect();
    let mut field = FdField {
        x,
        times: Vec::new(),
        fields: Vec::new(),
        dx: params.h / m as f64,
    };
    for p_idx in 0..n_periods {
        let record_this = p_idx + 1 == n_periods;
        for s in 0..steps_per_period {
            if record_this && sample_steps.contains(&s) {
                field.times.push(s as f64 * dt_eff);
                field.fields.push(u.clone());
            }
            // absolute phase only matters modulo the period
            let t0 = s as f64 * dt_eff;
            let t1 = (s + 1) as f64 * dt_eff;
            scheme.step(&mut u, t0, g(t0), g(t1), 0.0, 0.0, bc)?;
        }
        defect = u
            .iter()
            .zip(&prev_snapshot)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prev_snapshot.copy_from_slice(&u);
    }
    if defect > PERIODIC_DEFECT_TOL {
        return Err(FdError::NotPeriodic {
            defect,
            required: PERIODIC_DEFECT_TOL,
            periods: n_periods,
        });
    }
    Ok(PeriodicField {
        field,
        periods_marched: n_periods,
        period_defect: defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::{dirichlet_wall_shear, PeriodicScenario};
    use crate::shear::{RampDelta, ShearScenario};
    use crate::spectral::Basis;
    use std::f64::consts::PI;

    fn params(alpha: f64, beta: f64) -> SlipParams {
        SlipParams::new(alpha, beta, PI).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(FdGrid::new(8, 1e-3, 0.5).is_err());
        assert!(FdGrid::new(32, 0.0, 0.5).is_err());
        assert!(FdGrid::new(32, 1e-3, 1.5).is_err());
        assert!(FdGrid::crank_nicolson(32, 1e-3).is_ok());
    }

    #[test]
    fn zero_wall_data_stays_at_rest() {
        let p = params(10.0, 0.5);
        let grid = FdGrid::crank_nicolson(32, 1e-3).unwrap();
        let scheme = ThetaScheme::new(&p, &grid, WallBc::DynamicSlip).unwrap();
        let mut u = vec![0.0; 33];
        for n in 0..50 {
            scheme
                .step(&mut u, n as f64 * 1e-3, 0.0, 0.0, 0.0, 0.0, WallBc::DynamicSlip)
                .unwrap();
        }
        assert!(u.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn shear_agrees_with_spectral_solution() {
        let p = params(10.0, 0.5);
        let grid = FdGrid::crank_nicolson(256, 2e-4).unwrap();
        let samples = [0.1, 0.3, 0.5];
        let fd = fd_solve_shear(&p, 0.01, &grid, 0.5, &samples).unwrap();
        let basis = Basis::new(p, 800).unwrap();
        let scenario = ShearScenario::new(basis, RampDelta::Finite(0.01)).unwrap();
        let mut sup = 0.0_f64;
        for (k, &t) in fd.times.iter().enumerate() {
            for j in (0..=256).step_by(32) {
                let x = fd.x[j];
                let diff = (fd.fields[k][j] - scenario.solution(t, x).unwrap()).abs();
                sup = sup.max(diff);
            }
        }
        assert!(sup <= 2e-3, "sup error {sup:e}");
    }

    #[test]
    fn shear_grid_self_convergence_is_second_order() {
        let p = params(10.0, 0.5);
        let t_end = 0.2;
        let dt = 2.5e-5;
        let sample = [t_end];
        let reference = fd_solve_shear(
            &p,
            0.01,
            &FdGrid::crank_nicolson(512, dt).unwrap(),
            t_end,
            &sample,
        )
        .unwrap();
        let mut errs = Vec::new();
        for m in [64, 128] {
            let coarse = fd_solve_shear(
                &p,
                0.01,
                &FdGrid::crank_nicolson(m, dt).unwrap(),
                t_end,
                &sample,
            )
            .unwrap();
            let stride = 512 / m;
            let err = (0..=m)
                .map(|j| (coarse.fields[0][j] - reference.fields[0][j * stride]).abs())
                .fold(0.0, f64::max);
            errs.push(err);
        }
        let order = (errs[0] / errs[1]).log2();
        assert!(
            (1.6..=2.4).contains(&order),
            "observed order {order}, errors {errs:?}"
        );
    }

    // The spectral side of wall-shear comparisons needs deep truncation:
    // the termwise-differentiated series converges like ~0.64/n at the
    // boundary, so 2e4 modes put its tail near 3e-5.

    #[test]
    fn periodic_reaches_steady_state_and_matches_wall_shear() {
        let p = params(1.0, 4.2);
        let grid = FdGrid::crank_nicolson(256, 1.5e-3).unwrap();
        let sol = fd_solve_periodic(&p, 2.0 * PI, &grid, 20, 8, WallBc::DynamicSlip).unwrap();
        assert!(sol.period_defect <= 1e-8);
        let basis = Basis::new(p, 20_000).unwrap();
        let spectral = PeriodicScenario::new(basis, 2.0 * PI).unwrap();
        for (k, &t) in sol.field.times.iter().enumerate() {
            let diff = (sol.field.wall_shear(k) - spectral.wall_shear(t)).abs();
            assert!(diff <= 5e-4, "wall shear mismatch {diff:e} at t = {t}");
        }
    }

    #[test]
    fn periodic_dirichlet_variant_matches_reference() {
        let p = params(1.0, 4.2); // alpha, beta unused under Dirichlet
        let grid = FdGrid::crank_nicolson(256, 1.5e-3).unwrap();
        let sol = fd_solve_periodic(&p, 2.0 * PI, &grid, 20, 8, WallBc::Dirichlet).unwrap();
        for (k, &t) in sol.field.times.iter().enumerate() {
            let diff =
                (sol.field.wall_shear(k) - dirichlet_wall_shear(PI, 2.0 * PI, 20_000, t)).abs();
            assert!(diff <= 5e-4, "Dirichlet wall shear mismatch {diff:e} at t = {t}");
        }
    }

    #[test]
    fn fully_explicit_scheme_cannot_carry_the_static_wall() {
        // theta = 0 with beta = 0 leaves no implicit term in the last row
        let p = params(10.0, 0.0);
        let grid = FdGrid::new(32, 1e-4, 0.0).unwrap();
        assert!(matches!(
            fd_solve_shear(&p, 0.01, &grid, 0.01, &[0.01]),
            Err(FdError::SolveFailure { .. })
        ));
    }

    #[test]
    fn slow_contraction_is_reported_as_not_periodic() {
        // large beta makes the slowest mode decay by only ~4% per period
        let p = params(0.01, 50.0);
        let grid = FdGrid::crank_nicolson(32, 5e-3).unwrap();
        let err = fd_solve_periodic(&p, 2.0 * PI, &grid, 20, 4, WallBc::DynamicSlip).unwrap_err();
        assert!(matches!(err, FdError::NotPeriodic { .. }), "{err}");
    }

    #[test]
    fn periodic_requires_enough_periods() {
        let p = params(1.0, 4.2);
        let grid = FdGrid::crank_nicolson(32, 1e-2).unwrap();
        assert!(matches!(
            fd_solve_periodic(&p, 2.0 * PI, &grid, 5, 4, WallBc::DynamicSlip),
            Err(FdError::InvalidGrid(_))
        ));
    }
}
