//! Exact calculus on fields Σ_s a_s x^s Y_k, where x is the vector variable.
//!
//! The Dirac operator acts termwise:
//!   ∂(x^s Y_k) = -s x^{s-1} Y_k             (s even)
//!   ∂(x^s Y_k) = -(s+2k+m-1) x^{s-1} Y_k    (s odd)
//! and |x|² = -x², so every operator in the radial theory stays in this class.

use std::f64::consts::PI;

use crate::clifford::{Multivector, VectorM};
use crate::error::Result;
use crate::monogenics::monogenic_eval;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSymbol {
    pub k: usize,
    pub m: usize,
    /// Coefficient of x^s Y_k at index s.
    pub coeffs: Vec<f64>,
}

impl RadialSymbol {
    pub fn zero(k: usize, m: usize) -> Self {
        RadialSymbol { k, m, coeffs: Vec::new() }
    }

    pub fn monomial(s: usize, k: usize, m: usize) -> Self {
        let mut coeffs = vec![0.0; s + 1];
        coeffs[s] = 1.0;
        RadialSymbol { k, m, coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn dirac(&self) -> Self {
        let mut out = vec![0.0; self.coeffs.len().saturating_sub(1)];
        for (s, &a) in self.coeffs.iter().enumerate().skip(1) {
            let factor = if s % 2 == 0 {
                s as f64
            } else {
                (s + 2 * self.k + self.m - 1) as f64
            };
            out[s - 1] = -factor * a;
        }
        RadialSymbol { coeffs: out, ..*self }
    }

    /// Left multiplication by x^j.
    pub fn shift(&self, j: usize) -> Self {
        let mut out = vec![0.0; j];
        out.extend_from_slice(&self.coeffs);
        RadialSymbol { coeffs: out, ..*self }
    }

    pub fn scale(&self, s: f64) -> Self {
        RadialSymbol {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..*self
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.m), (other.k, other.m), "symbols of different type");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
            .collect();
        RadialSymbol { coeffs, ..*self }
    }

    /// (1 - |x|²) f = (1 + x²) f.
    pub fn times_one_minus_norm_sq(&self) -> Self {
        self.add(&self.shift(2))
    }

    /// |x|² f = -x² f.
    pub fn times_norm_sq(&self) -> Self {
        self.shift(2).scale(-1.0)
    }

    /// L_c f = ∂((1 - |x|²) ∂f) + 4π²c²|x|² f.
    pub fn apply_lc(&self, c: f64) -> Self {
        let kinetic = self.dirac().times_one_minus_norm_sq().dirac();
        kinetic.add(&self.times_norm_sq().scale(4.0 * PI * PI * c * c))
    }

    /// ∂ⁿ[(1 - |x|²)ⁿ Y_k] expanded exactly.
    pub fn clifford_legendre(n: usize, k: usize, m: usize) -> Self {
        let mut f = RadialSymbol::monomial(0, k, m);
        for _ in 0..n {
            f = f.times_one_minus_norm_sq();
        }
        for _ in 0..n {
            f = f.dirac();
        }
        f
    }

    /// Field value at a planar point.
    pub fn eval(&self, x: &VectorM) -> Result<Multivector> {
        let y = monogenic_eval(self.k, x)?;
        let r2 = x.norm_sqr();
        let mut even = 0.0;
        let mut odd = 0.0;
        for (s, &a) in self.coeffs.iter().enumerate() {
            let j = s / 2;
            let v = a * (-r2).powi(j as i32);
            if s % 2 == 0 {
                even += v;
            } else {
                odd += v;
            }
        }
        let xy = &x.to_multivector() * &y;
        Ok(&y.scale_real(even) + &xy.scale_real(odd))
    }
}
