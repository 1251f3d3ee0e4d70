//! Self-check suites behind `dynslip verify`.
//!
//! Each suite replays a condensed version of the crate's verification
//! battery and reports one pass/fail line per check.  These are smoke-level
//! versions of the full test suite, sized to finish in a few seconds.

use crate::constitutive::{
    check_axioms, min_coercivity_check, regularize_resolve, regularize_select, select_stress,
    GraphModel,
};
use crate::galerkin::{energy_report, run, Forcing, GalerkinConfig, Integrator};
use crate::params::SlipParams;
use crate::periodic::{dirichlet_coeff, dirichlet_ode_residual, PeriodicScenario};
use crate::shear::{
    boundary_slip_limit, classify_response, slip_defect, stationary_boundary_series, RampDelta,
    Response, ShearScenario,
};
use crate::spectral::{eigen_condition, h_inner, solve_eigenvalue, Basis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// One verification line.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

pub const SUITES: &[&str] = &["eigen", "graphs", "shear", "periodic", "galerkin", "all"];

/// Run a named suite; `all` concatenates every suite.
pub fn run_suite(suite: &str) -> Option<Vec<Check>> {
    match suite {
        "eigen" => Some(eigen_suite()),
        "graphs" => Some(graphs_suite()),
        "shear" => Some(shear_suite()),
        "periodic" => Some(periodic_suite()),
        "galerkin" => Some(galerkin_suite()),
        "all" => Some(
            [
                eigen_suite(),
                graphs_suite(),
                shear_suite(),
                periodic_suite(),
                galerkin_suite(),
            ]
            .concat(),
        ),
        _ => None,
    }
}

fn eigen_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    let mut worst = 0.0_f64;
    let mut localized = true;
    for _ in 0..50 {
        let params = SlipParams::new(
            rng.gen_range(0.0..50.0),
            rng.gen_range(1e-3..20.0),
            rng.gen_range(0.5..5.0),
        )
        .unwrap();
        for i in 1..=20 {
            match solve_eigenvalue(&params, i) {
                Ok(lambda) => {
                    let lo = (i as f64 - 1.0) * PI / params.h;
                    let hi = i as f64 * PI / params.h;
                    localized &= lambda > lo && lambda < hi;
                    let scale = (params.alpha - params.beta * lambda * lambda).abs().max(1.0);
                    worst = worst.max(eigen_condition(&params, lambda).abs() / scale);
                }
                Err(_) => localized = false,
            }
        }
    }
    checks.push(Check::new(
        "eigenvalue localization + residual (50 random params, 20 modes)",
        localized && worst <= 1e-10,
        format!("worst scaled residual {worst:.2e}"),
    ));

    let params = SlipParams::new(10.0, 0.5, PI).unwrap();
    let basis = Basis::new(params, 8).unwrap();
    let mut max_dev = 0.0_f64;
    for i in 0..8 {
        for j in 0..8 {
            let val = h_inner(
                &params,
                |x| basis.pairs()[i].eval(x),
                |x| basis.pairs()[j].eval(x),
            );
            let expected = if i == j { 1.0 } else { 0.0 };
            max_dev = max_dev.max((val - expected).abs());
        }
    }
    checks.push(Check::new(
        "H-orthonormality of the slip basis (8 modes)",
        max_dev <= 1e-9,
        format!("max deviation {max_dev:.2e}"),
    ));
    checks
}

fn graphs_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a4f);
    for (r, eps) in [(1.2, 0.5), (3.0, 0.01)] {
        let base = GraphModel::power_law(1.0, 0.0, r).unwrap();
        let mut mono_ok = true;
        let mut lip_ok = true;
        let mut res_ok = true;
        for _ in 0..1000 {
            let d1: f64 = rng.gen_range(-10.0..10.0);
            let d2: f64 = rng.gen_range(-10.0..10.0);
            let s1 = regularize_select(&base, eps, d1).unwrap();
            let s2 = regularize_select(&base, eps, d2).unwrap();
            let dd = d1 - d2;
            mono_ok &= (s1 - s2) * dd >= eps * dd * dd - 1e-10;
            lip_ok &= (s1 - s2).abs() <= (eps + 1.0 / eps) * dd.abs() + 1e-10;
            let point = regularize_resolve(&base, eps, d1).unwrap();
            let rebuilt = point.d_bar + eps * select_stress(&base, point.d_bar).unwrap();
            res_ok &= (rebuilt - d1).abs() <= 1e-10 * d1.abs().max(1.0);
        }
        checks.push(Check::new(
            &format!("uniform monotonicity >= eps|dD|^2 (r={r}, eps={eps})"),
            mono_ok,
            "1000 sampled pairs".into(),
        ));
        checks.push(Check::new(
            &format!("Lipschitz bound (eps + 1/eps) (r={r}, eps={eps})"),
            lip_ok,
            "1000 sampled pairs".into(),
        ));
        checks.push(Check::new(
            &format!("resolvent identity to 1e-10 (r={r}, eps={eps})"),
            res_ok,
            "1000 sampled points".into(),
        ));
    }
    let axioms_ok = [1.2, 1.5, 2.0, 3.0].iter().all(|&r| {
        check_axioms(&GraphModel::power_law(1.0, 0.0, r).unwrap(), 200, 11).is_ok()
    });
    checks.push(Check::new(
        "axioms A1/A2/A4 for power-law bases r in {1.2, 1.5, 2, 3}",
        axioms_ok,
        "200 samples each".into(),
    ));
    let mc = min_coercivity_check(&GraphModel::power_law(1.0, 0.0, 1.2).unwrap(), 0.5, 200)
        .unwrap();
    checks.push(Check::new(
        "minimum coercivity of the regularized graph (r=1.2, eps=0.5)",
        mc.holds(),
        format!(
            "base constants {:?}, regularized constants {:?}",
            mc.base_constants, mc.regularized_constants
        ),
    ));
    checks
}

fn shear_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let grid: Vec<f64> = (1..=200).map(|k| k as f64 / 200.0).collect();
    let classify = |alpha: f64, beta: f64| {
        let basis = Basis::new(SlipParams::new(alpha, beta, PI).unwrap(), 10).unwrap();
        classify_response(&basis, &grid)
    };
    let trio = classify(1.0, 4.0) == Ok(Response::Monotone)
        && classify(10.0, 0.5) == Ok(Response::Overshoot)
        && classify(10.0, 0.0) == Ok(Response::NavierJump);
    checks.push(Check::new(
        "boundary response classification (monotone / overshoot / Navier)",
        trio,
        "(1,4), (10,0.5), (10,0) at h=pi".into(),
    ));

    let basis = Basis::new(SlipParams::new(10.0, 0.5, PI).unwrap(), 10).unwrap();
    let scenario = ShearScenario::new(basis.clone(), RampDelta::Finite(0.01)).unwrap();
    let mut gap = 0.0_f64;
    for j in 1..=10 {
        let left = scenario.coeff(j, 0.01 - 1e-12).unwrap();
        let right = scenario.coeff(j, 0.01).unwrap();
        gap = gap.max((left - right).abs() / right.abs().max(1e-30));
    }
    checks.push(Check::new(
        "coefficient continuity across the ramp kink",
        gap <= 1e-9,
        format!("max relative gap {gap:.2e}"),
    ));

    let t = 0.5;
    let identity =
        (boundary_slip_limit(&basis, t) - stationary_boundary_series(&basis) - slip_defect(&basis, t))
            .abs();
    checks.push(Check::new(
        "slip defect + stationary series = boundary limit (truncated)",
        identity <= 1e-12,
        format!("defect {identity:.2e}"),
    ));
    checks
}

fn periodic_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let basis = Basis::new(SlipParams::new(1.0, 4.2, PI).unwrap(), 10).unwrap();
    let sc = PeriodicScenario::new(basis, 2.0 * PI).unwrap();
    let mut period_gap = 0.0_f64;
    let mut residual = 0.0_f64;
    for j in 1..=10 {
        period_gap = period_gap.max((sc.coeff(j, 0.0) - sc.coeff(j, sc.period())).abs());
        for k in 0..100 {
            let t = k as f64 * sc.period() / 100.0;
            residual = residual.max(sc.ode_residual(j, t).abs());
        }
    }
    checks.push(Check::new(
        "periodicity c_j(0) = c_j(T)",
        period_gap <= 1e-12,
        format!("max gap {period_gap:.2e}"),
    ));
    checks.push(Check::new(
        "modal ODE residual (slip family)",
        residual <= 1e-10,
        format!("max residual {residual:.2e}"),
    ));
    let mut dirichlet_res = 0.0_f64;
    let mut evens_zero = true;
    for j in 1..=10 {
        for k in 0..100 {
            let t = k as f64 * 2.0 * PI / 100.0;
            dirichlet_res = dirichlet_res.max(dirichlet_ode_residual(PI, 2.0 * PI, j, t).abs());
            if j % 2 == 0 {
                evens_zero &= dirichlet_coeff(PI, 2.0 * PI, j, t) == 0.0;
            }
        }
    }
    checks.push(Check::new(
        "modal ODE residual (Dirichlet family) + even modes exactly zero",
        dirichlet_res <= 1e-10 && evens_zero,
        format!("max residual {dirichlet_res:.2e}"),
    ));
    let n = 512;
    let mean = (0..n)
        .map(|k| sc.wall_shear(k as f64 * sc.period() / n as f64))
        .sum::<f64>()
        / n as f64;
    checks.push(Check::new(
        "period-mean wall shear vanishes",
        mean.abs() <= 1e-10,
        format!("mean {mean:.2e}"),
    ));
    checks
}

fn galerkin_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let config = GalerkinConfig {
        params: SlipParams::new(10.0, 0.5, PI).unwrap(),
        n_modes: 10,
        graph: GraphModel::linear(0.5).unwrap(),
        boundary_graph: crate::constitutive::BoundaryGraphModel::navier_linear(1.0).unwrap(),
        forcing: Forcing::ShearRamp { delta: 0.01 },
        dt: 5e-4,
        t_end: 0.3,
        integrator: Integrator::Rk4,
    };
    match run(&config, |_| 0.0) {
        Ok(out) => {
            let basis = Basis::new(config.params, 10).unwrap();
            let scenario = ShearScenario::new(basis, RampDelta::Finite(0.01)).unwrap();
            let mut sup = 0.0_f64;
            for (k, t) in out.trajectory.times.iter().enumerate() {
                for j in 1..=10 {
                    sup = sup.max(
                        (out.trajectory.coeffs[k][j - 1] - scenario.coeff(j, *t).unwrap()).abs(),
                    );
                }
            }
            checks.push(Check::new(
                "linear Galerkin matches the closed-form coefficients",
                sup <= 1e-5,
                format!("sup error {sup:.2e}"),
            ));
            let min_residual = energy_report(&out.ledger)
                .iter()
                .map(|&(_, r)| r)
                .fold(f64::INFINITY, f64::min);
            checks.push(Check::new(
                "discrete energy balance residual",
                min_residual >= -1e-8,
                format!("min residual {min_residual:.2e}"),
            ));
        }
        Err(e) => checks.push(Check::new(
            "linear Galerkin run",
            false,
            format!("failed: {e}"),
        )),
    }
    let nonlinear = GalerkinConfig {
        graph: GraphModel::power_law(1.0, 0.0, 3.0).unwrap(),
        t_end: 0.2,
        ..config
    };
    match run(&nonlinear, |_| 0.0) {
        Ok(out) => {
            checks.push(Check::new(
                "nonlinear run keeps dissipation nonnegative",
                out.ledger.min_pointwise_dissipation >= 0.0
                    && out.ledger.min_boundary_dissipation >= 0.0,
                format!(
                    "min density {:.2e}, min boundary {:.2e}",
                    out.ledger.min_pointwise_dissipation, out.ledger.min_boundary_dissipation
                ),
            ));
        }
        Err(e) => checks.push(Check::new(
            "nonlinear Galerkin run",
            false,
            format!("failed: {e}"),
        )),
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for suite in SUITES {
            let checks = run_suite(suite).unwrap();
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.passed, "[{suite}] {}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nonsense").is_none());
    }
}
