//! Gauss-Legendre rules and a bisecting adaptive integrator.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Real;

const RULE_POINTS: usize = 10;
const MAX_DEPTH: usize = 48;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn default_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(RULE_POINTS))
}

/// Fixed-order rule over [a, b].
pub fn fixed<F: Real>(f: &impl Fn(F) -> F, a: F, b: F) -> F {
    let (nodes, weights) = default_rule();
    let half = (b - a) / F::lit(2.0);
    let mid = (a + b) / F::lit(2.0);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| F::lit(w) * f(mid + half * F::lit(x)))
        .sum::<F>()
        * half
}

/// Adaptive integral of `f` over [a, b] with absolute error target `tol`.
///
/// Each interval is compared against the sum over its two halves; intervals
/// whose difference exceeds their share of the tolerance are bisected.
pub fn adaptive<F: Real>(f: impl Fn(F) -> F, a: F, b: F, tol: F) -> Result<F> {
    if !(tol > F::zero()) || !tol.is_finite() {
        return Err(Error::BadTolerance);
    }
    if a == b {
        return Ok(F::zero());
    }
    let mut total = F::zero();
    let mut stack = vec![(a, b, fixed(&f, a, b), tol, 0usize)];
    while let Some((lo, hi, whole, budget, depth)) = stack.pop() {
        let mid = (lo + hi) / F::lit(2.0);
        let left = fixed(&f, lo, mid);
        let right = fixed(&f, mid, hi);
        let refined = left + right;
        let err = (refined - whole).abs();
        let floor = F::lit(16.0) * F::epsilon() * refined.abs();
        if err <= budget || err <= floor {
            total = total + refined;
        } else if depth >= MAX_DEPTH {
            return Err(Error::QuadratureDiverged(lo.as_f64(), hi.as_f64()));
        } else {
            let half_budget = budget / F::lit(2.0);
            stack.push((lo, mid, left, half_budget, depth + 1));
            stack.push((mid, hi, right, half_budget, depth + 1));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(10);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-14);
        // degree 19 is the exactness limit
        let val: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert_relative_eq!(val, 2.0 / 19.0, epsilon = 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // arctan derivative with a narrow peak
        let eps = 1e-3;
        let val = adaptive(|x: f64| eps / (x * x + eps * eps), -1.0, 1.0, 1e-10).unwrap();
        assert_relative_eq!(val, 2.0 * (1.0 / eps).atan(), epsilon = 1e-9);
    }

    #[test]
    fn adaptive_generic_over_f32() {
        let val = adaptive(|x: f32| x.sin(), 0.0, std::f32::consts::PI, 1e-5).unwrap();
        assert!((val - 2.0).abs() < 1e-5);
    }

    #[test]
    fn bad_tolerance_rejected() {
        assert_eq!(adaptive(|x: f64| x, 0.0, 1.0, 0.0), Err(Error::BadTolerance));
    }
}
