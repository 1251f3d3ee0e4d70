//! Modal Galerkin time-stepper with the beta-weighted inner product.
//!
//! The velocity is expanded in the slip eigenbasis,
//! `v(t, x) = sum_i c_i(t) u_i(x)`, and tested against the same modes in the
//! `H` product.  Because the basis is H-orthonormal the system is explicit
//! in the coefficient derivatives:
//!
//! ```text
//! c_i' = <f, u_i>  -  int_0^h S*(v_x) u_i' dx  -  alpha sigma*(v(h)) u_i(h),
//! c_i(0) = (v0, u_i)_H,
//! ```
//!
//! where `S*` is a constitutive selection (explicit or regularized) and
//! `sigma*` the boundary selection.  The two concrete forcings are the
//! moving-wall ramp, whose duality is the boundary term
//! `(alpha V(t) + beta V'(t)) u_i(h)`, and the periodic pressure gradient,
//! whose duality is `-cos(2 pi t / T) int_0^h u_i dx`.  With a linear graph
//! (`S = D`, i.e. `nu = 1/2`) and unit boundary selection the system
//! collapses mode-by-mode onto the closed-form ODEs of the explicit
//! scenarios, which is the fidelity check the tests lean on.
//!
//! Testing the system with `v` itself yields the energy balance
//!
//! ```text
//! d/dt (1/2 ||v||_H^2) + int S*(v_x) v_x dx + alpha sigma*(v(h)) v(h) = <f, v>,
//! ```
//!
//! tracked by the [`EnergyLedger`].  The dissipation, boundary-dissipation
//! and work integrals ride along the Runge–Kutta stages as extra state
//! components, so the recorded balance errs only at the integrator's own
//! order rather than the second-order drift a separate trapezoid pass would
//! reintroduce (backward Euler, itself first-order, uses a trapezoid pass).
//! The wall-velocity ramp has a kink at `t = delta`; steps never straddle it
//! (the schedule inserts a node there) and each step evaluates the ramp rate
//! on its own side of the kink.

use crate::constitutive::{select_boundary, BoundaryGraphModel, GraphModel};
use crate::params::SlipParams;
use crate::quad;
use crate::shear::{ramp_rate, ramp_velocity};
use crate::spectral::{h_inner, h_norm_sq, Basis, SpectralError};
use crate::KahanSum;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GalerkinError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("nonlinear quadrature produced a non-finite value at t = {t}")]
    QuadratureFailure { t: f64 },
    #[error("coefficient magnitude exceeded 1e12 at t = {t}")]
    StepDiverged { t: f64 },
    #[error("backward Euler fixed point stalled at t = {t} after {iterations} iterations")]
    FixedPointStall { t: f64, iterations: usize },
    #[error("constitutive selection failed: {0}")]
    Graph(#[from] crate::constitutive::GraphError),
}

/// Forcing applied to the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Forcing {
    None,
    /// Moving wall with ramp time `delta`: duality
    /// `(alpha V + beta V') u_i(h)`.
    ShearRamp { delta: f64 },
    /// Pressure gradient `cos(2 pi t / T)`: duality
    /// `-cos(2 pi t / T) int u_i dx`.
    PeriodicPressure { period: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Rk4,
    BackwardEuler,
}

/// Everything a run needs: channel parameters, mode count, constitutive
/// graphs, forcing and time discretization.
#[derive(Debug, Clone)]
pub struct GalerkinConfig {
    pub params: SlipParams,
    pub n_modes: usize,
    pub graph: GraphModel,
    pub boundary_graph: BoundaryGraphModel,
    pub forcing: Forcing,
    pub dt: f64,
    pub t_end: f64,
    pub integrator: Integrator,
}

impl GalerkinConfig {
    fn validate(&self) -> Result<(), GalerkinError> {
        if self.n_modes < 1 {
            return Err(GalerkinError::Config("n_modes must be >= 1".into()));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(GalerkinError::Config(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= self.dt && self.t_end.is_finite()) {
            return Err(GalerkinError::Config(format!(
                "t_end must be >= dt, got {}",
                self.t_end
            )));
        }
        if let Forcing::ShearRamp { delta } = self.forcing {
            if !(delta > 0.0 && delta.is_finite()) {
                return Err(GalerkinError::Config(format!(
                    "ramp delta must be > 0, got {delta}"
                )));
            }
        }
        if let Forcing::PeriodicPressure { period } = self.forcing {
            if !(period > 0.0 && period.is_finite()) {
                return Err(GalerkinError::Config(format!(
                    "period must be > 0, got {period}"
                )));
            }
        }
        Ok(())
    }
}

/// Time plus modal coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinState {
    pub t: f64,
    pub c: Vec<f64>,
}

/// One row of the energy ledger: the half H-norm and the three accumulated
/// integrals of the energy balance at time `t`.
#[derive(Debug, Clone, Copy)]
pub struct EnergySample {
    pub t: f64,
    /// `1/2 ||v(t)||_H^2 = 1/2 sum_i c_i(t)^2`.
    pub h_norm_sq_half: f64,
    /// `int_0^t int_Omega S*(v_x) v_x dx dtau`.
    pub dissipation: f64,
    /// `alpha int_0^t sigma*(v(h)) v(h) dtau`.
    pub boundary_dissipation: f64,
    /// `int_0^t <f, v> dtau`.
    pub work: f64,
}

/// Energy bookkeeping for a trajectory.
#[derive(Debug, Clone)]
pub struct EnergyLedger {
    pub samples: Vec<EnergySample>,
    /// Minimum of the pointwise dissipation density `S*(v_x) v_x` seen at
    /// any quadrature node during the run; nonnegative for monotone graphs.
    pub min_pointwise_dissipation: f64,
    /// Minimum of `alpha sigma*(v(h)) v(h)` seen during the run.
    pub min_boundary_dissipation: f64,
}

/// Coefficient snapshots at every accepted step.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub coeffs: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub trajectory: Trajectory,
    pub ledger: EnergyLedger,
}

/// Project initial data onto the basis: `c_i = (v0, u_i)_H`.
///
/// The projection contracts both the H and the V norm, so
/// `sum c_i^2 <= ||v0||_H^2` whatever the truncation.
pub fn project_initial<F: Fn(f64) -> f64>(basis: &Basis, v0: F) -> Vec<f64> {
    let params = basis.params();
    basis
        .pairs()
        .iter()
        .map(|pair| h_inner(params, &v0, |x| pair.eval(x)))
        .collect()
}

/// Precomputed mode data shared by every right-hand-side evaluation.
struct Operator {
    basis: Basis,
    weights: Vec<f64>,
    /// `mode_vals[i][q] = u_i(x_q)`, `mode_derivs[i][q] = u_i'(x_q)`.
    mode_derivs: Vec<Vec<f64>>,
    u_h: Vec<f64>,
    mode_ints: Vec<f64>,
}

/// Instantaneous derivative of the augmented state.
struct Deriv {
    c_dot: Vec<f64>,
    dissipation_rate: f64,
    boundary_dissipation_rate: f64,
    work_rate: f64,
    min_density: f64,
    min_boundary_density: f64,
}

impl Operator {
    fn build(config: &GalerkinConfig) -> Result<Self, GalerkinError> {
        let basis = Basis::new(config.params, config.n_modes)?;
        let rule = quad::default_rule();
        let (nodes, weights) = rule.mapped(0.0, config.params.h);
        let mode_derivs = basis
            .pairs()
            .iter()
            .map(|p| nodes.iter().map(|&x| p.eval_deriv(x)).collect())
            .collect();
        let u_h = basis.boundary_values();
        let mode_ints = basis.mode_integrals();
        Ok(Self {
            basis,
            weights,
            mode_derivs,
            u_h,
            mode_ints,
        })
    }

    /// Forcing duality vector factor and its pairing with `v`.
    ///
    /// `branch_t` selects the ramp-rate side when `t` sits exactly on the
    /// kink; integrators pass their step midpoint.
    fn forcing_scalar(&self, config: &GalerkinConfig, t: f64, branch_t: f64) -> f64 {
        match config.forcing {
            Forcing::None => 0.0,
            Forcing::ShearRamp { delta } => {
                let p = config.params;
                p.alpha * ramp_velocity(delta, t) + p.beta * ramp_rate(delta, branch_t)
            }
            Forcing::PeriodicPressure { period } => -(2.0 * PI * t / period).cos(),
        }
    }

    fn derivative(
        &self,
        config: &GalerkinConfig,
        t: f64,
        branch_t: f64,
        c: &[f64],
    ) -> Result<Deriv, GalerkinError> {
        let n = c.len();
        let q = self.weights.len();
        let alpha = config.params.alpha;
        // shear rate at the quadrature nodes
        let mut vx = vec![0.0; q];
        for (i, derivs) in self.mode_derivs.iter().enumerate() {
            let ci = c[i];
            if ci != 0.0 {
                for (k, d) in derivs.iter().enumerate() {
                    vx[k] += ci * d;
                }
            }
        }
        // constitutive selection and dissipation density per node
        let mut stress = vec![0.0; q];
        let mut dissipation_rate = KahanSum::new();
        let mut min_density = f64::INFINITY;
        for ((slot, &vxk), &w) in stress.iter_mut().zip(&vx).zip(&self.weights) {
            let s = config.graph.select(vxk)?;
            if !s.is_finite() {
                return Err(GalerkinError::QuadratureFailure { t });
            }
            *slot = s;
            let density = s * vxk;
            if density < min_density {
                min_density = density;
            }
            dissipation_rate.add(w * density);
        }
        let v_h: f64 = c.iter().zip(&self.u_h).map(|(ci, uh)| ci * uh).sum();
        let sigma = select_boundary(&config.boundary_graph, v_h);
        let boundary_density = alpha * sigma * v_h;
        let forcing = self.forcing_scalar(config, t, branch_t);
        let mut c_dot = vec![0.0; n];
        let mut work_rate = 0.0;
        match config.forcing {
            Forcing::ShearRamp { .. } => {
                work_rate = forcing * v_h;
            }
            Forcing::PeriodicPressure { .. } => {
                work_rate = forcing * c.iter().zip(&self.mode_ints).map(|(ci, m)| ci * m).sum::<f64>();
            }
            Forcing::None => {}
        }
        for (i, slot) in c_dot.iter_mut().enumerate() {
            let mut stiff = KahanSum::new();
            for ((w, s), du) in self.weights.iter().zip(&stress).zip(&self.mode_derivs[i]) {
                stiff.add(w * s * du);
            }
            let duality = match config.forcing {
                Forcing::ShearRamp { .. } => forcing * self.u_h[i],
                Forcing::PeriodicPressure { .. } => forcing * self.mode_ints[i],
                Forcing::None => 0.0,
            };
            *slot = duality - stiff.value() - alpha * sigma * self.u_h[i];
            if !slot.is_finite() {
                return Err(GalerkinError::QuadratureFailure { t });
            }
        }
        Ok(Deriv {
            c_dot,
            dissipation_rate: dissipation_rate.value(),
            boundary_dissipation_rate: boundary_density,
            work_rate,
            min_density,
            min_boundary_density: boundary_density,
        })
    }
}

/// Coefficient derivative vector at the state's own time.
///
/// This is the semi-discrete right-hand side; with a linear graph it equals
/// the closed-form modal ODEs to quadrature accuracy.
pub fn rhs(config: &GalerkinConfig, state: &GalerkinState) -> Result<Vec<f64>, GalerkinError> {
    config.validate()?;
    let op = Operator::build(config)?;
    if state.c.len() != config.n_modes {
        return Err(GalerkinError::Config(format!(
            "state has {} coefficients, config expects {}",
            state.c.len(),
            config.n_modes
        )));
    }
    Ok(op.derivative(config, state.t, state.t, &state.c)?.c_dot)
}

const DIVERGENCE_LIMIT: f64 = 1e12;
const FIXED_POINT_TOL: f64 = 1e-12;
const FIXED_POINT_MAX_ITER: usize = 100;

/// Augmented state: coefficients plus the three running integrals.
struct AugmentedState {
    t: f64,
    c: Vec<f64>,
    dissipation: f64,
    boundary_dissipation: f64,
    work: f64,
}

fn rk4_step(
    op: &Operator,
    config: &GalerkinConfig,
    state: &mut AugmentedState,
    dt: f64,
    min_density: &mut f64,
    min_boundary: &mut f64,
) -> Result<(), GalerkinError> {
    let t = state.t;
    let branch_t = t + 0.5 * dt;
    let fold = |d: &Deriv, min_density: &mut f64, min_boundary: &mut f64| {
        if d.min_density < *min_density {
            *min_density = d.min_density;
        }
        if d.min_boundary_density < *min_boundary {
            *min_boundary = d.min_boundary_density;
        }
    };
    let k1 = op.derivative(config, t, branch_t, &state.c)?;
    fold(&k1, min_density, min_boundary);
    let c2: Vec<f64> = state
        .c
        .iter()
        .zip(&k1.c_dot)
        .map(|(c, k)| c + 0.5 * dt * k)
        .collect();
    let k2 = op.derivative(config, t + 0.5 * dt, branch_t, &c2)?;
    let c3: Vec<f64> = state
        .c
        .iter()
        .zip(&k2.c_dot)
        .map(|(c, k)| c + 0.5 * dt * k)
        .collect();
    let k3 = op.derivative(config, t + 0.5 * dt, branch_t, &c3)?;
    let c4: Vec<f64> = state
        .c
        .iter()
        .zip(&k3.c_dot)
        .map(|(c, k)| c + dt * k)
        .collect();
    let k4 = op.derivative(config, t + dt, branch_t, &c4)?;
    fold(&k4, min_density, min_boundary);
    for i in 0..state.c.len() {
        state.c[i] +=
            dt / 6.0 * (k1.c_dot[i] + 2.0 * k2.c_dot[i] + 2.0 * k3.c_dot[i] + k4.c_dot[i]);
    }
    state.dissipation += dt / 6.0
        * (k1.dissipation_rate
            + 2.0 * k2.dissipation_rate
            + 2.0 * k3.dissipation_rate
            + k4.dissipation_rate);
    state.boundary_dissipation += dt / 6.0
        * (k1.boundary_dissipation_rate
            + 2.0 * k2.boundary_dissipation_rate
            + 2.0 * k3.boundary_dissipation_rate
            + k4.boundary_dissipation_rate);
    state.work += dt / 6.0
        * (k1.work_rate + 2.0 * k2.work_rate + 2.0 * k3.work_rate + k4.work_rate);
    state.t = t + dt;
    Ok(())
}

fn backward_euler_step(
    op: &Operator,
    config: &GalerkinConfig,
    state: &mut AugmentedState,
    dt: f64,
    min_density: &mut f64,
    min_boundary: &mut f64,
) -> Result<(), GalerkinError> {
    let t_new = state.t + dt;
    let branch_t = state.t + 0.5 * dt;
    let start = op.derivative(config, state.t, branch_t, &state.c)?;
    if start.min_density < *min_density {
        *min_density = start.min_density;
    }
    if start.min_boundary_density < *min_boundary {
        *min_boundary = start.min_boundary_density;
    }
    let mut c_new = state.c.clone();
    let mut converged = false;
    for _iter in 0..FIXED_POINT_MAX_ITER {
        let d = op.derivative(config, t_new, branch_t, &c_new)?;
        let mut delta: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for (i, current) in c_new.iter_mut().enumerate() {
            let next = state.c[i] + dt * d.c_dot[i];
            delta = delta.max((next - *current).abs());
            scale = scale.max(next.abs());
            *current = next;
        }
        if delta <= FIXED_POINT_TOL * scale {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(GalerkinError::FixedPointStall {
            t: t_new,
            iterations: FIXED_POINT_MAX_ITER,
        });
    }
    // trapezoid on the endpoint rates, consistent with the scheme's order
    let end = op.derivative(config, t_new, branch_t, &c_new)?;
    if end.min_density < *min_density {
        *min_density = end.min_density;
    }
    if end.min_boundary_density < *min_boundary {
        *min_boundary = end.min_boundary_density;
    }
    state.dissipation += 0.5 * dt * (start.dissipation_rate + end.dissipation_rate);
    state.boundary_dissipation +=
        0.5 * dt * (start.boundary_dissipation_rate + end.boundary_dissipation_rate);
    state.work += 0.5 * dt * (start.work_rate + end.work_rate);
    state.c = c_new;
    state.t = t_new;
    Ok(())
}

/// Advance one step of size `config.dt` with the configured integrator.
pub fn step(config: &GalerkinConfig, state: &GalerkinState) -> Result<GalerkinState, GalerkinError> {
    config.validate()?;
    let op = Operator::build(config)?;
    let mut aug = AugmentedState {
        t: state.t,
        c: state.c.clone(),
        dissipation: 0.0,
        boundary_dissipation: 0.0,
        work: 0.0,
    };
    let (mut md, mut mb) = (f64::INFINITY, f64::INFINITY);
    match config.integrator {
        Integrator::Rk4 => rk4_step(&op, config, &mut aug, config.dt, &mut md, &mut mb)?,
        Integrator::BackwardEuler => {
            backward_euler_step(&op, config, &mut aug, config.dt, &mut md, &mut mb)?
        }
    }
    check_magnitude(&aug)?;
    Ok(GalerkinState { t: aug.t, c: aug.c })
}

fn check_magnitude(state: &AugmentedState) -> Result<(), GalerkinError> {
    if state.c.iter().any(|c| !c.is_finite() || c.abs() > DIVERGENCE_LIMIT) {
        return Err(GalerkinError::StepDiverged { t: state.t });
    }
    Ok(())
}

/// Step boundaries: the uniform `dt` grid with the ramp kink inserted, so no
/// step integrates across the discontinuity of `V'`.
fn schedule(config: &GalerkinConfig) -> Vec<f64> {
    let n_steps = (config.t_end / config.dt).round().max(1.0) as usize;
    let mut ts: Vec<f64> = (0..=n_steps)
        .map(|k| (k as f64 / n_steps as f64) * config.t_end)
        .collect();
    if let Forcing::ShearRamp { delta } = config.forcing {
        if delta < config.t_end {
            let already = ts
                .iter()
                .any(|&t| (t - delta).abs() <= 1e-12 * config.t_end.max(1.0));
            if !already {
                ts.push(delta);
                ts.sort_by(f64::total_cmp);
            }
        }
    }
    ts
}

/// Run from initial data `v0`, returning the trajectory and energy ledger.
pub fn run<F: Fn(f64) -> f64>(
    config: &GalerkinConfig,
    v0: F,
) -> Result<RunOutput, GalerkinError> {
    config.validate()?;
    let op = Operator::build(config)?;
    let c0 = project_initial(&op.basis, v0);
    run_from(config, &op, c0)
}

fn run_from(
    config: &GalerkinConfig,
    op: &Operator,
    c0: Vec<f64>,
) -> Result<RunOutput, GalerkinError> {
    let ts = schedule(config);
    let mut state = AugmentedState {
        t: 0.0,
        c: c0,
        dissipation: 0.0,
        boundary_dissipation: 0.0,
        work: 0.0,
    };
    let mut min_density = f64::INFINITY;
    let mut min_boundary = f64::INFINITY;
    let half_norm = |c: &[f64]| 0.5 * c.iter().map(|x| x * x).sum::<f64>();
    let mut trajectory = Trajectory {
        times: vec![0.0],
        coeffs: vec![state.c.clone()],
    };
    let mut samples = vec![EnergySample {
        t: 0.0,
        h_norm_sq_half: half_norm(&state.c),
        dissipation: 0.0,
        boundary_dissipation: 0.0,
        work: 0.0,
    }];
    for w in ts.windows(2) {
        let dt = w[1] - w[0];
        if dt <= 0.0 {
            continue;
        }
        match config.integrator {
            Integrator::Rk4 => {
                rk4_step(op, config, &mut state, dt, &mut min_density, &mut min_boundary)?
            }
            Integrator::BackwardEuler => backward_euler_step(
                op,
                config,
                &mut state,
                dt,
                &mut min_density,
                &mut min_boundary,
            )?,
        }
        state.t = w[1];
        check_magnitude(&state)?;
        trajectory.times.push(state.t);
        trajectory.coeffs.push(state.c.clone());
        samples.push(EnergySample {
            t: state.t,
            h_norm_sq_half: half_norm(&state.c),
            dissipation: state.dissipation,
            boundary_dissipation: state.boundary_dissipation,
            work: state.work,
        });
    }
    Ok(RunOutput {
        trajectory,
        ledger: EnergyLedger {
            samples,
            min_pointwise_dissipation: min_density,
            min_boundary_dissipation: min_boundary,
        },
    })
}

/// Residual time series of the energy balance,
/// `residual(t) = work(t) + E(0) - E(t) - dissipation(t) - boundary(t)`
/// with `E = 1/2 ||v||_H^2`.
///
/// Zero for the exact semi-discrete flow; the recorded value carries only
/// the time integrator's error.  Monotone graphs force it to be
/// nonnegative up to that error.
pub fn energy_report(ledger: &EnergyLedger) -> Vec<(f64, f64)> {
    let e0 = ledger.samples.first().map_or(0.0, |s| s.h_norm_sq_half);
    ledger
        .samples
        .iter()
        .map(|s| {
            (
                s.t,
                s.work + e0 - s.h_norm_sq_half - s.dissipation - s.boundary_dissipation,
            )
        })
        .collect()
}

/// Convenience: `||v0||_H^2` by quadrature, for projection-bound checks.
pub fn h_norm_sq_of<F: Fn(f64) -> f64>(params: &SlipParams, v0: F) -> f64 {
    h_norm_sq(params, v0)
}
