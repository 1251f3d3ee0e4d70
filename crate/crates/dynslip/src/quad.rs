//! Gauss–Legendre quadrature.
//!
//! A fixed-order rule is enough here: every integrand is a smooth
//! trigonometric or constitutive expression on `[0, h]`.  The 64-point
//! default integrates products of the first ~50 modes to well below 1e-10;
//! the order can be overridden through the `DYNSLIP_QUAD_POINTS` environment
//! variable (read once per process).

use std::sync::OnceLock;

pub const DEFAULT_POINTS: usize = 64;

/// Nodes and weights on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Build the `n`-point rule by Newton iteration on the Legendre
    /// polynomial `P_n`, starting from the Chebyshev angle estimate.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "quadrature order must be at least 2");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Roots come in +/- pairs; solve the upper half.
        for k in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
            weights[k] = w;
            weights[n - 1 - k] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes mapped to `[a, b]`, paired with mapped weights.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let xs = self.nodes.iter().map(|&t| mid + half * t).collect();
        let ws = self.weights.iter().map(|&w| half * w).collect();
        (xs, ws)
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = crate::KahanSum::new();
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * t));
        }
        half * acc.value()
    }
}

/// `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

/// Quadrature order used when none is requested explicitly.
pub fn default_points() -> usize {
    static POINTS: OnceLock<usize> = OnceLock::new();
    *POINTS.get_or_init(|| {
        std::env::var("DYNSLIP_QUAD_POINTS")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n >= 2)
            .unwrap_or(DEFAULT_POINTS)
    })
}

/// The default rule, built once.
pub fn default_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(default_points()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_exactness() {
        // n points integrate degree 2n-1 exactly
        let rule = GaussLegendre::new(5);
        let exact = 2.0 / 10.0; // int_{-1}^{1} x^9 dx = 0; use x^8: 2/9
        let val = rule.integrate(-1.0, 1.0, |x| x.powi(8));
        assert_abs_diff_eq!(val, 2.0 / 9.0, epsilon = 1e-14);
        let val9 = rule.integrate(-1.0, 1.0, |x| x.powi(9));
        assert_abs_diff_eq!(val9, 0.0, epsilon = 1e-15);
        let _ = exact;
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [2, 3, 16, 64, 96] {
            let rule = GaussLegendre::new(n);
            let total: f64 = rule.weights.iter().sum();
            assert_abs_diff_eq!(total, 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn oscillatory_integrand() {
        // int_0^pi sin(20x)^2 dx = pi/2
        let rule = GaussLegendre::new(64);
        let val = rule.integrate(0.0, std::f64::consts::PI, |x| (20.0 * x).sin().powi(2));
        assert_abs_diff_eq!(val, std::f64::consts::FRAC_PI_2, epsilon = 1e-11);
    }
}
