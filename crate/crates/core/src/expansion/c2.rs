//! Fixed-size elements of ℂ_2 for the planar pipelines, where the general
//! [`Multivector`] would allocate and dispatch per sample.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, Multivector};
use crate::error::{CpswfError, Result};

const Z: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients on 1, e1, e2, e12 (blade masks 0..4).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct C2(pub [Complex64; 4]);

// SIGN[a][b]: e_a e_b = SIGN[a][b] e_{a^b}, with e1² = e2² = -1.
const SIGN: [[f64; 4]; 4] = [
    [1.0, 1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0],
];

// Conjugation: reversal with e_j ↦ -e_j, so grades 1 and 2 flip sign.
const CONJ: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

impl C2 {
    pub const ZERO: C2 = C2([Z; 4]);
    pub const ONE: C2 = C2([Complex64::new(1.0, 0.0), Z, Z, Z]);
    pub const E1: C2 = C2([Z, Complex64::new(1.0, 0.0), Z, Z]);
    pub const E2: C2 = C2([Z, Z, Complex64::new(1.0, 0.0), Z]);
    pub const E12: C2 = C2([Z, Z, Z, Complex64::new(1.0, 0.0)]);

    pub fn scalar(c: Complex64) -> Self {
        C2([c, Z, Z, Z])
    }

    pub fn real(x: f64) -> Self {
        Self::scalar(Complex64::new(x, 0.0))
    }

    /// a + b e12 with real a, b.
    pub fn rotor(a: f64, b: f64) -> Self {
        C2([Complex64::new(a, 0.0), Z, Z, Complex64::new(b, 0.0)])
    }

    pub fn conj(&self) -> Self {
        let mut out = [Z; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].conj() * CONJ[i];
        }
        C2(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        C2(self.0.map(|c| c * s))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        C2(self.0.map(|c| c * s))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.0[0]
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut mv = Multivector::zero(2);
        for (i, &c) in self.0.iter().enumerate() {
            if c != Z {
                mv.set(Blade(i as u64), c).expect("blade fits dimension 2");
            }
        }
        mv
    }

    pub fn from_multivector(mv: &Multivector) -> Result<Self> {
        if mv.dim() != 2 {
            return Err(CpswfError::DimensionMismatch {
                expected: 2,
                got: mv.dim(),
            });
        }
        Ok(C2([0u64, 1, 2, 3].map(|b| mv.get(Blade(b)))))
    }
}

impl Mul for C2 {
    type Output = C2;
    fn mul(self, rhs: C2) -> C2 {
        let mut out = [Z; 4];
        for a in 0..4 {
            if self.0[a] == Z {
                continue;
            }
            for b in 0..4 {
                out[a ^ b] += self.0[a] * rhs.0[b] * SIGN[a][b];
            }
        }
        C2(out)
    }
}

impl Add for C2 {
    type Output = C2;
    fn add(self, rhs: C2) -> C2 {
        C2([0, 1, 2, 3].map(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for C2 {
    type Output = C2;
    fn sub(self, rhs: C2) -> C2 {
        C2([0, 1, 2, 3].map(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for C2 {
    type Output = C2;
    fn neg(self) -> C2 {
        C2(self.0.map(|c| -c))
    }
}

impl AddAssign for C2 {
    fn add_assign(&mut self, rhs: C2) {
        for i in 0..4 {
            self.0[i] += rhs.0[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_c2() -> impl Strategy<Value = C2> {
        prop::array::uniform8(-2.0f64..2.0).prop_map(|v| {
            C2([0, 1, 2, 3].map(|i| Complex64::new(v[2 * i], v[2 * i + 1])))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_general_multivector(a in arb_c2(), b in arb_c2()) {
            let prod = (a * b).to_multivector();
            let want = a.to_multivector().geometric_product(&b.to_multivector()).unwrap();
            prop_assert!((&prod - &want).max_abs() < 1e-12);
            let conj = a.conj().to_multivector();
            prop_assert!((&conj - &a.to_multivector().conjugate()).max_abs() < 1e-15);
            prop_assert_eq!(C2::from_multivector(&a.to_multivector()).unwrap(), a);
        }
    }

    #[test]
    fn generator_squares() {
        for e in [C2::E1, C2::E2, C2::E12] {
            assert_eq!(e * e, -C2::ONE);
        }
        assert_eq!(C2::E1 * C2::E2, C2::E12);
    }
}
