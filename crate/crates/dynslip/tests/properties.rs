//! Property tests for the numerical kernels.
//!
//! Randomized parameters go through proptest; each property states an exact
//! structural fact (bracket containment, sign patterns, algebraic
//! identities) with a tolerance only where quadrature or root-finding
//! precision genuinely enters.

use dynslip::constitutive::{regularize_resolve, select_stress, GraphModel};
use dynslip::periodic::PeriodicScenario;
use dynslip::shear::{slip_defect_term, RampDelta, ShearScenario};
use dynslip::spectral::{
    count_negative_modes, eigen_condition, h_inner, solve_eigenvalue, Basis, ModeCount,
};
use dynslip::SlipParams;
use proptest::prelude::*;
use std::f64::consts::PI;

fn params_strategy() -> impl Strategy<Value = SlipParams> {
    (0.0..50.0f64, 1e-3..20.0f64, 0.5..5.0f64)
        .prop_map(|(alpha, beta, h)| SlipParams::new(alpha, beta, h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_localized_with_small_residual(params in params_strategy(), i in 1usize..25) {
        let lambda = solve_eigenvalue(&params, i).unwrap();
        let lo = (i as f64 - 1.0) * PI / params.h;
        let hi = i as f64 * PI / params.h;
        prop_assert!(lambda > lo && lambda < hi);
        let scale = (params.alpha - params.beta * lambda * lambda).abs().max(1.0);
        prop_assert!(eigen_condition(&params, lambda).abs() <= 1e-10 * scale);
    }

    #[test]
    fn eigenvalue_gaps_bounded(params in params_strategy()) {
        let basis = Basis::new(params, 12).unwrap();
        for w in basis.pairs().windows(2) {
            let gap = w[1].lambda - w[0].lambda;
            prop_assert!(gap > 0.0);
            prop_assert!(gap < 2.0 * PI / params.h);
        }
    }

    #[test]
    fn negative_mode_count_is_exact_split(params in params_strategy()) {
        // closed form <=> direct sign test, mode by mode
        let n = match count_negative_modes(&params) {
            ModeCount::Finite(n) => n as usize,
            ModeCount::Infinite => unreachable!("beta > 0 in the strategy"),
        };
        for i in 1..=20usize {
            let lambda = solve_eigenvalue(&params, i).unwrap();
            let negative = params.beta * lambda * lambda - params.alpha < 0.0;
            prop_assert_eq!(negative, i <= n, "mode {} vs count {}", i, n);
        }
    }

    #[test]
    fn perfect_slip_closed_form(h in 0.5..5.0f64, i in 1usize..30) {
        let params = SlipParams::new(0.0, 0.0, h).unwrap();
        let lambda = solve_eigenvalue(&params, i).unwrap();
        prop_assert_eq!(lambda, (i as f64 - 0.5) * PI / h);
    }

    #[test]
    fn basis_is_h_orthonormal(params in params_strategy()) {
        let basis = Basis::new(params, 5).unwrap();
        for i in 0..basis.len() {
            for j in 0..=i {
                let val = h_inner(
                    &params,
                    |x| basis.pairs()[i].eval(x),
                    |x| basis.pairs()[j].eval(x),
                );
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((val - expected).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn shear_coeff_continuous_at_kink(
        params in params_strategy(),
        delta in 1e-4..1.0f64,
        j in 1usize..8,
    ) {
        let basis = Basis::new(params, 8).unwrap();
        let scenario = ShearScenario::new(basis, RampDelta::Finite(delta)).unwrap();
        let left = scenario.coeff(j, delta * (1.0 - 1e-12)).unwrap();
        let right = scenario.coeff(j, delta).unwrap();
        let scale = left.abs().max(right.abs()).max(1e-30);
        prop_assert!((left - right).abs() / scale <= 1e-9);
    }

    #[test]
    fn defect_term_sign_matches_mode_split(params in params_strategy(), t in 0.01..2.0f64) {
        let basis = Basis::new(params, 12).unwrap();
        let n = match count_negative_modes(&params) {
            ModeCount::Finite(n) => n as usize,
            ModeCount::Infinite => unreachable!(),
        };
        for i in 1..=12usize {
            let term = slip_defect_term(&basis, i, t);
            if i <= n {
                prop_assert!(term < 0.0);
            } else {
                prop_assert!(term >= 0.0);
            }
        }
    }

    #[test]
    fn boundary_limit_is_bounded_by_stationary_plus_defect(
        params in params_strategy(),
        t in 0.01..5.0f64,
    ) {
        use dynslip::shear::{boundary_slip_limit, slip_defect_term, stationary};
        let basis = Basis::new(params, 10).unwrap();
        let defect_abs: f64 = (1..=10)
            .map(|i| slip_defect_term(&basis, i, t).abs())
            .sum();
        let bound = stationary(&params, params.h).max(1.0) + defect_abs;
        prop_assert!(boundary_slip_limit(&basis, t).abs() <= bound + 1e-12);
    }

    #[test]
    fn periodic_coefficients_close_up(
        params in params_strategy(),
        period in 0.5..20.0f64,
        j in 1usize..8,
    ) {
        let basis = Basis::new(params, 8).unwrap();
        let sc = PeriodicScenario::new(basis, period).unwrap();
        prop_assert!((sc.coeff(j, 0.0) - sc.coeff(j, period)).abs() <= 1e-12);
        prop_assert!((sc.coeff(j, 0.0) - sc.coeff0(j)).abs() <= 1e-13);
        for k in 0..16 {
            let t = k as f64 * period / 16.0;
            prop_assert!(sc.ode_residual(j, t).abs() <= 1e-10);
        }
    }

    #[test]
    fn regularized_selection_bounds(
        r in 1.05..4.0f64,
        eps in 0.01..0.9f64,
        d1 in -10.0..10.0f64,
        d2 in -10.0..10.0f64,
    ) {
        let base = GraphModel::power_law(1.0, 0.0, r).unwrap();
        let p1 = regularize_resolve(&base, eps, d1).unwrap();
        let p2 = regularize_resolve(&base, eps, d2).unwrap();
        let dd = d1 - d2;
        let ds = p1.s - p2.s;
        // uniform monotonicity with modulus eps
        prop_assert!(ds * dd >= eps * dd * dd - 1e-9 * dd.abs().max(1.0));
        // Lipschitz constant at most eps + 1/eps
        prop_assert!(ds.abs() <= (eps + 1.0 / eps) * dd.abs() + 1e-9);
        // resolvent residual: d = d_bar + eps g(d_bar)
        let rebuilt = p1.d_bar + eps * select_stress(&base, p1.d_bar).unwrap();
        prop_assert!((rebuilt - d1).abs() <= 1e-10 * d1.abs().max(1.0));
    }

    #[test]
    fn cutoff_shape(delta in 1e-3..0.99f64, s in -100.0..100.0f64) {
        let value = dynslip::constitutive::cutoff(delta, s);
        prop_assert!((0.0..=1.0).contains(&value));
        prop_assert_eq!(value, dynslip::constitutive::cutoff(delta, -s));
        // monotone nonincreasing in |s|
        let further = dynslip::constitutive::cutoff(delta, s * 1.5);
        prop_assert!(further <= value + 1e-15);
    }
}
