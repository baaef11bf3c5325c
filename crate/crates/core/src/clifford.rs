//! Complex Clifford algebra ℂ_m with generators e_1..e_m, e_j² = -1.
//!
//! A basis blade e_A is a bit set over the generators (bit j-1 set means e_j
//! is a factor). Elements with m <= 6 keep a dense coefficient array indexed
//! by the mask; larger algebras use a sparse map so that m is not capped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{CpswfError, Result};

/// Largest dimension stored densely.
pub const DENSE_MAX_DIM: usize = 6;

/// Largest supported dimension (one bit per generator in a `u64`).
pub const MAX_DIM: usize = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Basis blade e_A, stored as the bit set A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from 1-based generator indices, e.g. `[1, 2]` for e_1 e_2.
    ///
    /// Indices are treated as a set; repeated indices are rejected.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &j in indices {
            if j == 0 || j > MAX_DIM {
                return Err(CpswfError::InvalidParameter(format!(
                    "generator index {j} must lie in 1..={MAX_DIM}"
                )));
            }
            let bit = 1u64 << (j - 1);
            if mask & bit != 0 {
                return Err(CpswfError::InvalidParameter(format!(
                    "generator index {j} repeated"
                )));
            }
            mask |= bit;
        }
        Ok(Blade(mask))
    }

    /// The generator e_j (1-based).
    pub fn generator(j: usize) -> Self {
        assert!(j >= 1 && j <= MAX_DIM, "generator index out of range");
        Blade(1u64 << (j - 1))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Sorted 1-based generator indices.
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn fits(self, dim: usize) -> bool {
        dim >= MAX_DIM || self.0 >> dim == 0
    }

    /// Sign picked up by Clifford conjugation: ē_A = (-1)^{h(h+1)/2} e_A.
    pub fn conjugation_sign(self) -> f64 {
        let h = self.grade();
        if (h * (h + 1) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    fn key(self) -> String {
        self.indices()
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Product of two basis blades: e_a e_b = sign · e_{a Δ b}.
///
/// The sign counts the transpositions needed to sort the concatenated word,
/// then one factor of -1 for every generator that squares away.
pub fn blade_product(a: Blade, b: Blade, dim: usize) -> Result<(f64, Blade)> {
    for blade in [a, b] {
        if !blade.fits(dim) {
            return Err(CpswfError::BladeOutOfRange { mask: blade.0, dim });
        }
    }
    Ok(blade_product_unchecked(a, b))
}

#[inline]
pub(crate) fn blade_product_unchecked(a: Blade, b: Blade) -> (f64, Blade) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    swaps += (a.0 & b.0).count_ones();
    let sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    (sign, Blade(a.0 ^ b.0))
}

#[derive(Debug, Clone, PartialEq)]
enum Coeffs {
    Dense(SmallVec<[Complex64; 8]>),
    Sparse(BTreeMap<Blade, Complex64>),
}

/// Element of ℂ_m.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Coeffs,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "dimension must lie in 1..=64");
        let coeffs = if dim <= DENSE_MAX_DIM {
            Coeffs::Dense(SmallVec::from_elem(ZERO, 1usize << dim))
        } else {
            Coeffs::Sparse(BTreeMap::new())
        };
        Multivector { dim, coeffs }
    }

    pub fn scalar(dim: usize, value: Complex64) -> Self {
        Self::blade(dim, Blade::SCALAR, value)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    /// `value · e_A`.
    pub fn blade(dim: usize, blade: Blade, value: Complex64) -> Self {
        let mut out = Self::zero(dim);
        out.set(blade, value).expect("blade outside algebra");
        out
    }

    /// Shorthand for the generator e_j with unit coefficient.
    pub fn generator(dim: usize, j: usize) -> Self {
        Self::blade(dim, Blade::generator(j), Complex64::new(1.0, 0.0))
    }

    /// Grade-1 element Σ e_j v_j.
    pub fn from_vector(v: &VectorM) -> Self {
        let mut out = Self::zero(v.dim());
        for (j, &x) in v.components().iter().enumerate() {
            out.add_to(Blade::generator(j + 1), Complex64::new(x, 0.0));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, blade: Blade) -> Complex64 {
        match &self.coeffs {
            Coeffs::Dense(v) => v.get(blade.0 as usize).copied().unwrap_or(ZERO),
            Coeffs::Sparse(map) => map.get(&blade).copied().unwrap_or(ZERO),
        }
    }

    pub fn set(&mut self, blade: Blade, value: Complex64) -> Result<()> {
        if !blade.fits(self.dim) {
            return Err(CpswfError::BladeOutOfRange {
                mask: blade.0,
                dim: self.dim,
            });
        }
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[blade.0 as usize] = value,
            Coeffs::Sparse(map) => {
                if value == ZERO {
                    map.remove(&blade);
                } else {
                    map.insert(blade, value);
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn add_to(&mut self, blade: Blade, value: Complex64) {
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[blade.0 as usize] += value,
            Coeffs::Sparse(map) => {
                let entry = map.entry(blade).or_insert(ZERO);
                *entry += value;
                if *entry == ZERO {
                    map.remove(&blade);
                }
            }
        }
    }

    /// Non-zero entries in blade order.
    pub fn terms(&self) -> Vec<(Blade, Complex64)> {
        match &self.coeffs {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != ZERO)
                .map(|(i, c)| (Blade(i as u64), *c))
                .collect(),
            Coeffs::Sparse(map) => map.iter().map(|(b, c)| (*b, *c)).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            Err(CpswfError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            })
        } else {
            Ok(())
        }
    }

    /// Geometric product, the bilinear extension of [`blade_product`].
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Dense(a), Coeffs::Dense(b)) => {
                let Coeffs::Dense(o) = &mut out.coeffs else {
                    unreachable!()
                };
                for (i, &ai) in a.iter().enumerate() {
                    if ai == ZERO {
                        continue;
                    }
                    for (j, &bj) in b.iter().enumerate() {
                        if bj == ZERO {
                            continue;
                        }
                        let (sign, r) = blade_product_unchecked(Blade(i as u64), Blade(j as u64));
                        o[r.0 as usize] += ai * bj * sign;
                    }
                }
            }
            _ => {
                for (ba, ca) in self.terms() {
                    for (bb, cb) in other.terms() {
                        let (sign, r) = blade_product_unchecked(ba, bb);
                        out.add_to(r, ca * cb * sign);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Clifford conjugation: conjugate-linear anti-automorphism with ē_j = -e_j.
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        match &mut out.coeffs {
            Coeffs::Dense(v) => {
                for (i, c) in v.iter_mut().enumerate() {
                    *c = c.conj() * Blade(i as u64).conjugation_sign();
                }
            }
            Coeffs::Sparse(map) => {
                for (b, c) in map.iter_mut() {
                    *c = c.conj() * b.conjugation_sign();
                }
            }
        }
        out
    }

    /// Grade-0 coefficient.
    pub fn scalar_part(&self) -> Complex64 {
        self.get(Blade::SCALAR)
    }

    /// ⟨x, y⟩ = [x̄ y]_0 = Σ_A conj(x_A) y_A.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.check_dim(other)?;
        // [ē_A e_B]_0 vanishes unless A = B, where it equals +1.
        Ok(self
            .terms()
            .into_iter()
            .map(|(b, c)| c.conj() * other.get(b))
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms().iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// [x]_k: keep only blades of grade k.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > self.dim {
            return Err(CpswfError::GradeOutOfRange {
                grade: k,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (b, c) in self.terms() {
            if b.grade() == k {
                out.add_to(b, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.scale_in_place(s);
        out
    }

    pub fn scale_in_place(&mut self, s: Complex64) {
        match &mut self.coeffs {
            Coeffs::Dense(v) => v.iter_mut().for_each(|c| *c *= s),
            Coeffs::Sparse(map) => {
                map.values_mut().for_each(|c| *c *= s);
                map.retain(|_, c| *c != ZERO);
            }
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: Complex64, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in axpy");
        match (&mut self.coeffs, &other.coeffs) {
            (Coeffs::Dense(a), Coeffs::Dense(b)) => {
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x += s * y;
                }
            }
            _ => {
                for (b, c) in other.terms() {
                    self.add_to(b, s * c);
                }
            }
        }
    }

    /// Largest coefficient modulus, handy for exactness checks.
    pub fn max_abs(&self) -> f64 {
        self.terms().iter().fold(0.0, |m, (_, c)| m.max(c.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms().is_empty()
    }

    /// Coefficients as `(sorted index key, coefficient)` pairs; the scalar key is `""`.
    pub fn keyed_terms(&self) -> Vec<(String, Complex64)> {
        self.terms().into_iter().map(|(b, c)| (b.key(), c)).collect()
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(b, c)| {
                let coeff = if c.im == 0.0 {
                    format!("{}", c.re)
                } else {
                    format!("({}{:+}i)", c.re, c.im)
                };
                if b.0 == 0 {
                    coeff
                } else {
                    let name: String = b.indices().iter().map(|j| format!("e{j}")).collect();
                    format!("{coeff}{name}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.axpy(Complex64::new(1.0, 0.0), rhs);
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        self.axpy(Complex64::new(1.0, 0.0), rhs);
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.axpy(Complex64::new(-1.0, 0.0), rhs);
        out
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale_real(-1.0)
    }
}

/// Geometric product. Panics on a dimension mismatch; use
/// [`Multivector::geometric_product`] for the fallible form.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs)
            .expect("geometric product of multivectors with different dimensions")
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

impl Mul<Complex64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Complex64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale_real(rhs)
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct CoeffMap<'a>(&'a Multivector);
        impl Serialize for CoeffMap<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let terms = self.0.keyed_terms();
                let mut map = serializer.serialize_map(Some(terms.len()))?;
                for (k, c) in terms {
                    map.serialize_entry(&k, &[c.re, c.im])?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("dim", &self.dim)?;
        map.serialize_entry("coeffs", &CoeffMap(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            coeffs: BTreeMap<String, [f64; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.dim == 0 || raw.dim > MAX_DIM {
            return Err(de::Error::custom(format!("invalid dimension {}", raw.dim)));
        }
        let mut out = Multivector::zero(raw.dim);
        for (key, [re, im]) in raw.coeffs {
            let indices = if key.trim().is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| de::Error::custom(format!("bad blade key {key:?}: {e}")))?
            };
            if indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(de::Error::custom(format!("blade key {key:?} is not sorted")));
            }
            let blade = Blade::from_indices(&indices).map_err(de::Error::custom)?;
            out.set(blade, Complex64::new(re, im))
                .map_err(de::Error::custom)?;
        }
        Ok(out)
    }
}

/// Point of ℝ^m, embedded in ℂ_m as Σ e_j x_j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorM {
    components: Vec<f64>,
}

impl VectorM {
    pub fn new(components: Vec<f64>) -> Self {
        assert!(!components.is_empty(), "vector needs at least one component");
        VectorM { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum()
    }

    pub fn dot(&self, other: &VectorM) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector::from_vector(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn e(dim: usize, idx: &[usize]) -> Multivector {
        Multivector::blade(dim, Blade::from_indices(idx).unwrap(), c(1.0))
    }

    #[test]
    fn blade_product_examples() {
        let b = |i: &[usize]| Blade::from_indices(i).unwrap();
        assert_eq!(blade_product(b(&[1]), b(&[1]), 2).unwrap(), (-1.0, Blade::SCALAR));
        assert_eq!(blade_product(b(&[1]), b(&[2]), 2).unwrap(), (1.0, b(&[1, 2])));
        assert_eq!(blade_product(b(&[2]), b(&[1]), 2).unwrap(), (-1.0, b(&[1, 2])));
        assert_eq!(blade_product(b(&[1, 2]), b(&[1, 2]), 2).unwrap(), (-1.0, Blade::SCALAR));
    }

    #[test]
    fn blade_outside_dimension_is_rejected() {
        let b3 = Blade::generator(3);
        assert!(matches!(
            blade_product(b3, Blade::SCALAR, 2),
            Err(CpswfError::BladeOutOfRange { .. })
        ));
    }

    #[test]
    fn sum_times_difference_of_generators() {
        // (e1 + e2)(e1 - e2) = -1 - e1e2 + e2e1 + 1 = -2 e1e2
        let a = &e(2, &[1]) + &e(2, &[2]);
        let b = &e(2, &[1]) - &e(2, &[2]);
        let p = &a * &b;
        let expected = e(2, &[1, 2]).scale_real(-2.0);
        assert!((&p - &expected).max_abs() == 0.0, "{p}");
    }

    #[test]
    fn vector_product_splits_into_dot_and_wedge() {
        let x = VectorM::new(vec![1.5, -2.0, 0.5]);
        let y = VectorM::new(vec![0.25, 1.0, 3.0]);
        let p = &x.to_multivector() * &y.to_multivector();
        assert!((p.scalar_part().re + x.dot(&y)).abs() < 1e-15);
        let wedge = p.grade_project(2).unwrap();
        // e_i e_j coefficient is x_i y_j - x_j y_i for i < j
        let xs = x.components();
        let ys = y.components();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let want = xs[i - 1] * ys[j - 1] - xs[j - 1] * ys[i - 1];
            let got = wedge.get(Blade::from_indices(&[i, j]).unwrap()).re;
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(e(2, &[1]).conjugate(), e(2, &[1]).scale_real(-1.0));
        assert_eq!(e(2, &[1, 2]).conjugate(), e(2, &[1, 2]).scale_real(-1.0));
        // conj(i e1) = (-i)(-e1) = i e1, so 1 + i e1 is fixed
        let x = &Multivector::one(2) + &e(2, &[1]).scale(Complex64::new(0.0, 1.0));
        assert_eq!(x.conjugate(), x);
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(e(2, &[1]).inner_product(&e(2, &[1])).unwrap(), c(1.0));
        assert_eq!(e(2, &[1]).inner_product(&e(2, &[2])).unwrap(), c(0.0));
        let x = &e(2, &[1]).scale_real(2.0) + &e(2, &[1, 2]).scale_real(3.0);
        assert_eq!(x.inner_product(&x).unwrap(), c(13.0));
        // agrees with the grade-0 part of the conjugate product
        assert_eq!((&x.conjugate() * &x).scalar_part(), c(13.0));
    }

    #[test]
    fn mismatched_dimensions_fail() {
        let a = Multivector::one(2);
        let b = Multivector::one(3);
        assert!(a.geometric_product(&b).is_err());
        assert!(a.inner_product(&b).is_err());
    }

    #[test]
    fn grade_projection_examples() {
        let x = &(&Multivector::one(2) + &e(2, &[1])) + &e(2, &[1, 2]);
        assert_eq!(x.grade_project(1).unwrap(), e(2, &[1]));
        assert!(e(2, &[2]).grade_project(0).unwrap().is_zero());
        assert!(x.grade_project(3).is_err());
    }

    #[test]
    fn sparse_storage_beyond_dense_limit() {
        let dim = 9;
        let a = &e(dim, &[1, 7]) + &e(dim, &[9]);
        let b = &e(dim, &[7]) + &e(dim, &[2, 9]);
        let p = &a * &b;
        // e1e7e7 = -e1 ; e1e7e2e9 = e1e2e7e9 (one swap of e7,e2 -> -1) ; e9e7 = -e7e9 ; e9e2e9 = e2
        let expected = e(dim, &[1]).scale_real(-1.0)
            + e(dim, &[1, 2, 7, 9]).scale_real(-1.0)
            + e(dim, &[7, 9]).scale_real(-1.0)
            + e(dim, &[2]);
        assert_eq!((&p - &expected).max_abs(), 0.0, "{p}");
    }

    #[test]
    fn json_round_trip_and_schema() {
        let x = &e(2, &[1, 2]).scale(Complex64::new(0.5, -1.0)) + &Multivector::one(2);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"dim":2,"coeffs":{"":[1.0,0.0],"1,2":[0.5,-1.0]}}"#);
        let back: Multivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Multivector>(r#"{"dim":2,"coeffs":{"3":[1,0]}}"#).is_err());
        assert!(serde_json::from_str::<Multivector>(r#"{"dim":2,"coeffs":{"2,1":[1,0]}}"#).is_err());
    }

    fn arb_mv(dim: usize) -> impl Strategy<Value = Multivector> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1usize << dim).prop_map(move |v| {
            let mut m = Multivector::zero(dim);
            for (i, (re, im)) in v.into_iter().enumerate() {
                m.set(Blade(i as u64), Complex64::new(re, im)).unwrap();
            }
            m
        })
    }

    proptest! {
        #[test]
        fn anticommutation(
            (dim, i, j) in (2usize..8).prop_flat_map(|d| (Just(d), 1..=d, 1..d))
                .prop_map(|(d, i, j)| (d, i, if j >= i { j + 1 } else { j }))
        ) {
            let ei = Multivector::generator(dim, i);
            let ej = Multivector::generator(dim, j);
            prop_assert_eq!(&ei * &ej, (&ej * &ei).scale_real(-1.0));
        }

        #[test]
        fn associativity(x in arb_mv(3), y in arb_mv(3), z in arb_mv(3)) {
            let lhs = &(&x * &y) * &z;
            let rhs = &x * &(&y * &z);
            let scale = x.norm() * y.norm() * z.norm();
            prop_assert!((&lhs - &rhs).norm() <= 1e-13 * scale.max(1.0));
        }

        #[test]
        fn conjugation_reverses_products(x in arb_mv(3), y in arb_mv(3)) {
            let lhs = (&x * &y).conjugate();
            let rhs = &y.conjugate() * &x.conjugate();
            prop_assert!((&lhs - &rhs).norm() <= 1e-13 * (x.norm() * y.norm()).max(1.0));
        }

        #[test]
        fn positivity(x in arb_mv(4)) {
            let s = (&x.conjugate() * &x).scalar_part();
            let n2 = x.norm_sqr();
            prop_assert!((s.re - n2).abs() <= 1e-13 * n2.max(1.0));
            prop_assert!(s.im.abs() <= 1e-13 * n2.max(1.0));
        }

        #[test]
        fn vector_squares_to_minus_norm(v in prop::collection::vec(-3.0f64..3.0, 1..7)) {
            let x = VectorM::new(v);
            let sq = &x.to_multivector() * &x.to_multivector();
            let expected = Multivector::scalar(x.dim(), Complex64::new(-x.norm_sqr(), 0.0));
            prop_assert!((&sq - &expected).max_abs() <= 1e-14 * x.norm_sqr().max(1.0));
        }

        #[test]
        fn grade_parts_reassemble(x in arb_mv(4)) {
            let mut sum = Multivector::zero(4);
            for k in 0..=4 {
                sum += &x.grade_project(k).unwrap();
            }
            prop_assert_eq!(sum, x);
        }
    }
}
