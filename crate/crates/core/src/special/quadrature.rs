use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};

/// Gauss–Legendre rule on (a, b), nodes ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Barycentric interpolant through the nodes of this rule.
    pub fn interpolator(&self) -> Barycentric {
        let (a, b) = self.interval;
        let half = (b - a) / 2.0;
        // λ_j ∝ (-1)^j sqrt((1 - t_j²) w_j) on the reference interval.
        let lambdas = self
            .nodes
            .iter()
            .zip(&self.weights)
            .enumerate()
            .map(|(j, (&x, &w))| {
                let t = (2.0 * x - a - b) / (b - a);
                let s = ((1.0 - t * t) * w / half).sqrt();
                if j % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect();
        Barycentric {
            nodes: self.nodes.clone(),
            lambdas,
        }
    }
}

/// q-point Gauss–Legendre rule on (a, b).
pub fn gauss_legendre(q: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if q == 0 {
        return Err(CpswfError::InvalidParameter("quadrature needs q >= 1".into()));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(CpswfError::InvalidParameter(format!(
            "quadrature interval ({a}, {b}) is empty"
        )));
    }
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let qf = q as f64;
    for i in 0..q.div_ceil(2) {
        // Roots come in ± pairs; iterate on the positive one.
        let mut t = (PI * (i as f64 + 0.75) / (qf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_deriv(q, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_deriv(q, t);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        nodes[i] = mid - half * t;
        nodes[q - 1 - i] = mid + half * t;
        weights[i] = w * half;
        weights[q - 1 - i] = w * half;
    }
    if q % 2 == 1 {
        nodes[q / 2] = mid;
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (a, b),
    })
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
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

/// Second-form barycentric interpolation on a fixed node set.
#[derive(Debug, Clone)]
pub struct Barycentric {
    nodes: Vec<f64>,
    lambdas: Vec<f64>,
}

impl Barycentric {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn eval(&self, values: &[f64], x: f64) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xj, &lj), &fj) in self.nodes.iter().zip(&self.lambdas).zip(values) {
            let d = x - xj;
            if d == 0.0 {
                return fj;
            }
            let t = lj / d;
            num += t * fj;
            den += t;
        }
        num / den
    }

    /// Interpolation weights ℓ_j(x), so that p(x) = Σ ℓ_j f_j.
    pub fn basis_row(&self, x: f64) -> Vec<f64> {
        let mut row = vec![0.0; self.nodes.len()];
        if let Some(j) = self.nodes.iter().position(|&xj| xj == x) {
            row[j] = 1.0;
            return row;
        }
        let mut den = 0.0;
        for (j, (&xj, &lj)) in self.nodes.iter().zip(&self.lambdas).enumerate() {
            let t = lj / (x - xj);
            row[j] = t;
            den += t;
        }
        row.iter_mut().for_each(|v| *v /= den);
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_rules() {
        let r1 = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert_eq!(r1.nodes, vec![0.0]);
        assert!((r1.weights[0] - 2.0).abs() < 1e-15);
        let r2 = gauss_legendre(2, -1.0, 1.0).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        assert!((r2.weights[0] - 1.0).abs() < 1e-15 && (r2.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quintic_with_three_nodes() {
        let r = gauss_legendre(3, 0.0, 1.0).unwrap();
        assert!((r.integrate(|x| x.powi(5)) - 1.0 / 6.0).abs() <= 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
    }

    #[test]
    fn large_rules_sum_and_order() {
        for q in [64, 256, 512, 1000] {
            let r = gauss_legendre(q, 0.0, 1.0).unwrap();
            let sum: f64 = r.weights.iter().sum();
            assert!((sum - 1.0).abs() <= 1e-13, "q={q}: {sum}");
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(r.nodes[0] > 0.0 && r.nodes[q - 1] < 1.0);
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn exact_up_to_degree_2q_minus_1() {
        for q in [1usize, 2, 5, 16, 40] {
            let r = gauss_legendre(q, -0.5, 2.0).unwrap();
            for d in 0..2 * q {
                let want = (2f64.powi(d as i32 + 1) - (-0.5f64).powi(d as i32 + 1)) / (d as f64 + 1.0);
                let got = r.integrate(|x| x.powi(d as i32));
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn barycentric_reproduces_polynomials() {
        let r = gauss_legendre(30, 0.0, 1.0).unwrap();
        let f = |x: f64| 3.0 * x.powi(29) - x.powi(7) + 0.5;
        let vals: Vec<f64> = r.nodes.iter().map(|&x| f(x)).collect();
        let b = r.interpolator();
        for &x in &[0.0, 1e-3, 0.3333, 0.71, 1.0] {
            assert!((b.eval(&vals, x) - f(x)).abs() < 1e-12);
            let row = b.basis_row(x);
            let v: f64 = row.iter().zip(&vals).map(|(a, b)| a * b).sum();
            assert!((v - f(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn barycentric_is_stable_at_high_order() {
        let r = gauss_legendre(256, 0.0, 1.0).unwrap();
        let vals: Vec<f64> = r.nodes.iter().map(|&x| (7.0 * x).cos()).collect();
        let b = r.interpolator();
        for i in 0..50 {
            let x = i as f64 / 49.0;
            assert!((b.eval(&vals, x) - (7.0 * x).cos()).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn weights_sum_to_length(q in 1usize..200, a in -3.0f64..3.0, len in 0.1f64..5.0) {
            let r = gauss_legendre(q, a, a + len).unwrap();
            let s: f64 = r.weights.iter().sum();
            prop_assert!((s - len).abs() <= 1e-13 * len);
        }
    }
}
