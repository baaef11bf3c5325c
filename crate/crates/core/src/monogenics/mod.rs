//! Spherical monogenics in the plane, a finite-difference Dirac operator and
//! Clifford–Legendre polynomials on the unit ball.

pub mod symbol;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, Multivector, VectorM};
use crate::error::{CpswfError, Result};
use crate::special::{gauss_legendre, jacobi::jacobi_unchecked};

pub use symbol::RadialSymbol;

/// The bivector e_1 e_2 of ℂ_2.
pub const E12: Blade = Blade(0b11);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    /// 0 for even, 1 for odd: the extra power of x carried by the field.
    pub fn offset(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sphere norm of Ŷ_k for m = 2: |Ŷ_k(ω)| = 1 on the circle, so √(2π).
pub const PLANAR_SPHERE_NORM: f64 = 2.506628274631000502415765284811;

/// (x₁ - e₁e₂ x₂)^k as the pair (scalar, e₁e₂) coefficients.
///
/// e₁e₂ squares to -1 and commutes with itself, so powers follow the complex
/// powers of x₁ - i x₂.
#[inline]
pub fn monogenic_parts(k: usize, x1: f64, x2: f64) -> (f64, f64) {
    let z = Complex64::new(x1, -x2);
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    (acc.re, acc.im)
}

fn planar(x: &VectorM) -> Result<(f64, f64)> {
    match x.components() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CpswfError::UnsupportedDimension(x.dim())),
    }
}

/// Ŷ_k(x) = (x₁ - e₁e₂ x₂)^k, the degree-k inner spherical monogenic in the plane.
pub fn monogenic_eval(k: usize, x: &VectorM) -> Result<Multivector> {
    let (x1, x2) = planar(x)?;
    let (s, b) = monogenic_parts(k, x1, x2);
    let mut out = Multivector::zero(2);
    out.set(Blade::SCALAR, Complex64::new(s, 0.0))?;
    out.set(E12, Complex64::new(b, 0.0))?;
    Ok(out)
}

/// Ŷ_k with unit L2 norm on the circle.
pub fn monogenic_normalized(k: usize, x: &VectorM) -> Result<Multivector> {
    Ok(monogenic_eval(k, x)?.scale_real(1.0 / PLANAR_SPHERE_NORM))
}

/// Spherical monogenic of degree k in the plane (d_{k,2} = 1, so one per degree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphericalMonogenic {
    pub k: usize,
}

impl SphericalMonogenic {
    pub fn new(k: usize) -> Self {
        SphericalMonogenic { k }
    }

    pub fn eval(&self, x: &VectorM) -> Result<Multivector> {
        monogenic_eval(self.k, x)
    }

    /// Number of independent monogenics of degree k in dimension m.
    pub fn dimension(k: usize, m: usize) -> usize {
        if m < 2 {
            return 0;
        }
        // (m+k-2)! / ((m-2)! k!)
        (1..=k).fold(1usize, |acc, i| acc * (m - 2 + i) / i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracScheme {
    Central,
    /// Two central differences at h and h/2 combined to cancel the O(h²) term.
    Richardson,
}

pub const DEFAULT_DIRAC_STEP: f64 = 1e-4;

/// Σ_j e_j ∂_{x_j} f by central differences (left multiplication by e_j).
pub fn dirac_numeric<F>(f: F, x: &VectorM, h: f64) -> Result<Multivector>
where
    F: Fn(&VectorM) -> Result<Multivector>,
{
    dirac_numeric_with(f, x, h, DiracScheme::Central)
}

pub fn dirac_numeric_with<F>(f: F, x: &VectorM, h: f64, scheme: DiracScheme) -> Result<Multivector>
where
    F: Fn(&VectorM) -> Result<Multivector>,
{
    if !(h > 0.0) {
        return Err(CpswfError::InvalidParameter(format!("step {h} must be positive")));
    }
    let central = |h: f64| -> Result<Multivector> {
        let m = x.dim();
        let mut out = Multivector::zero(m);
        for j in 0..m {
            let mut plus = x.components().to_vec();
            let mut minus = plus.clone();
            plus[j] += h;
            minus[j] -= h;
            let diff = &f(&VectorM::new(plus))? - &f(&VectorM::new(minus))?;
            let ej = Multivector::generator(m, j + 1);
            out.axpy(Complex64::new(1.0 / (2.0 * h), 0.0), &(&ej * &diff));
        }
        Ok(out)
    };
    match scheme {
        DiracScheme::Central => central(h),
        DiracScheme::Richardson => {
            let coarse = central(h)?;
            let fine = central(h / 2.0)?;
            Ok((&fine.scale_real(4.0) - &coarse).scale_real(1.0 / 3.0))
        }
    }
}

/// Clifford–Legendre polynomial C_{n,m}(Y_k) = ∂ⁿ[(1 - |x|²)ⁿ Y_k] in Jacobi form.
///
/// With n = 2n' the field is  (-1)^{n'} 2^{2n'} (2n')! P_{n'}^{(0,k+m/2-1)}(2|x|²-1) Y_k,
/// and with n = 2n'+1 it is  (-1)^{n'+1} 2^{2n'+1} (2n'+1)! x P_{n'}^{(0,k+m/2)}(2|x|²-1) Y_k.
/// The radial data is valid for any m; field evaluation needs m = 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliffordLegendre {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub parity: Parity,
    pub n_prime: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Leading constant in front of the Jacobi factor.
    pub scale: f64,
    /// Ball norm when Y_k has unit sphere norm, computed by quadrature.
    pub norm: f64,
}

impl CliffordLegendre {
    pub fn new(n: usize, k: usize, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(CpswfError::InvalidParameter(format!("dimension m = {m} must be >= 2")));
        }
        let parity = Parity::of(n);
        let n_prime = n / 2;
        let half_m = m as f64 / 2.0;
        let beta = k as f64 + half_m - 1.0 + parity.offset() as f64;
        let sign = if (n_prime + parity.offset()) % 2 == 0 { 1.0 } else { -1.0 };
        let scale = sign * 2f64.powi(n as i32) * (1..=n).map(|i| i as f64).product::<f64>();
        let mut out = CliffordLegendre {
            n,
            k,
            m,
            parity,
            n_prime,
            alpha: 0.0,
            beta,
            scale,
            norm: 1.0,
        };
        // integrand r^{m-1} r^{2k+2·offset} radial(r)² is a polynomial of degree
        // m - 1 + 2k + 2 offset + 4n'; Gauss–Legendre with q points is exact to 2q-1.
        let q = (n + k + m + 4).max(32);
        let rule = gauss_legendre(q, 0.0, 1.0)?;
        let power = (m - 1 + 2 * k + 2 * parity.offset()) as i32;
        let norm_sq = rule.integrate(|r| r.powi(power) * out.radial(r).powi(2));
        out.norm = norm_sq.sqrt();
        Ok(out)
    }

    /// Radial profile R(r): the field is R(|x|) Y_k(x), or R(|x|) x Y_k(x) when odd.
    pub fn radial(&self, r: f64) -> f64 {
        self.scale * jacobi_unchecked(self.n_prime, self.alpha, self.beta, 2.0 * r * r - 1.0)
    }

    /// Closed-form normalizer h_{k,n} = √(2n+2k+m) / (2ⁿ n!).
    pub fn closed_form_h(&self) -> f64 {
        let fact: f64 = (1..=self.n).map(|i| i as f64).product();
        ((2 * self.n + 2 * self.k + self.m) as f64).sqrt() / (2f64.powi(self.n as i32) * fact)
    }

    /// ‖C‖ · h_{k,n}; equals 1 when h_{k,n} is the reciprocal norm.
    pub fn normalization_diagnostic(&self) -> f64 {
        self.norm * self.closed_form_h()
    }

    /// Unnormalized field with the raw monogenic Ŷ_k (m = 2).
    pub fn eval(&self, x: &VectorM) -> Result<Multivector> {
        if self.m != 2 {
            return Err(CpswfError::UnsupportedDimension(self.m));
        }
        let (x1, x2) = planar(x)?;
        let r = (x1 * x1 + x2 * x2).sqrt();
        let y = monogenic_eval(self.k, x)?;
        let base = match self.parity {
            Parity::Even => y,
            Parity::Odd => &x.to_multivector() * &y,
        };
        Ok(base.scale_real(self.radial(r)))
    }

    /// Unit-norm field on the ball, built on the sphere-normalized Y_k.
    pub fn eval_normalized(&self, x: &VectorM) -> Result<Multivector> {
        Ok(self.eval(x)?.scale_real(1.0 / (self.norm * PLANAR_SPHERE_NORM)))
    }
}

/// Convenience wrapper around [`CliffordLegendre`].
pub fn clifford_legendre_eval(
    n: usize,
    k: usize,
    m: usize,
    x: &VectorM,
    normalized: bool,
) -> Result<Multivector> {
    let c = CliffordLegendre::new(n, k, m)?;
    if normalized {
        c.eval_normalized(x)
    } else {
        c.eval(x)
    }
}

/// ⟨C̃_i, C̃_j⟩ over the unit disk by polar tensor quadrature.
///
/// The computation is repeated with doubled orders; a change above 1e-10
/// in any entry is reported as under-resolution.
pub fn gram_matrix(basis: &[CliffordLegendre], q_r: usize, q_theta: usize) -> Result<DMatrix<Complex64>> {
    let coarse = gram_once(basis, q_r, q_theta)?;
    let fine = gram_once(basis, 2 * q_r, 2 * q_theta)?;
    let drift = (&coarse - &fine).iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if drift > 1e-10 {
        return Err(CpswfError::UnderResolved {
            what: "Gram matrix".into(),
            drift,
            tol: 1e-10,
        });
    }
    Ok(fine)
}

fn gram_once(basis: &[CliffordLegendre], q_r: usize, q_theta: usize) -> Result<DMatrix<Complex64>> {
    if q_r == 0 || q_theta == 0 {
        return Err(CpswfError::InvalidParameter("quadrature orders must be positive".into()));
    }
    let rule = gauss_legendre(q_r, 0.0, 1.0)?;
    let dtheta = 2.0 * PI / q_theta as f64;
    let mut points = Vec::with_capacity(q_r * q_theta);
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        for j in 0..q_theta {
            let th = j as f64 * dtheta;
            points.push((VectorM::new(vec![r * th.cos(), r * th.sin()]), w * r * dtheta));
        }
    }
    let samples: Vec<Vec<Multivector>> = basis
        .par_iter()
        .map(|b| points.iter().map(|(x, _)| b.eval_normalized(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    let entries: Vec<Complex64> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            samples[i]
                .iter()
                .zip(&samples[j])
                .zip(&points)
                .map(|((a, b), (_, w))| a.inner_product(b).expect("same dimension") * *w)
                .sum()
        })
        .collect();
    Ok(DMatrix::from_row_slice(n, n, &entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(a: f64, b: f64) -> VectorM {
        VectorM::new(vec![a, b])
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn monogenic_examples() {
        assert_eq!(monogenic_eval(0, &pt(0.3, -2.0)).unwrap(), Multivector::one(2));
        assert_eq!(monogenic_eval(1, &pt(1.0, 0.0)).unwrap(), Multivector::one(2));
        assert_eq!(
            monogenic_eval(1, &pt(0.0, 1.0)).unwrap(),
            Multivector::blade(2, E12, c(-1.0))
        );
        let (x1, x2) = (0.7, -0.4);
        let y2 = monogenic_eval(2, &pt(x1, x2)).unwrap();
        let y1 = monogenic_eval(1, &pt(x1, x2)).unwrap();
        let sq = &y1 * &y1;
        assert!((&y2 - &sq).max_abs() < 1e-15);
        assert!((y2.scalar_part().re - (x1 * x1 - x2 * x2)).abs() < 1e-15);
        assert!((y2.get(E12).re + 2.0 * x1 * x2).abs() < 1e-15);
    }

    #[test]
    fn monogenic_requires_plane() {
        let x = VectorM::new(vec![1.0, 2.0, 3.0]);
        assert_eq!(monogenic_eval(1, &x), Err(CpswfError::UnsupportedDimension(3)));
    }

    #[test]
    fn monogenic_space_dimension() {
        assert_eq!(SphericalMonogenic::dimension(5, 2), 1);
        assert_eq!(SphericalMonogenic::dimension(0, 3), 1);
        assert_eq!(SphericalMonogenic::dimension(2, 3), 3);
        assert_eq!(SphericalMonogenic::dimension(2, 4), 6);
    }

    #[test]
    fn dirac_examples() {
        let x = pt(0.3, -0.8);
        let constant = |_: &VectorM| Ok(Multivector::scalar(2, Complex64::new(2.0, 1.0)));
        assert!(dirac_numeric(constant, &x, 1e-4).unwrap().max_abs() <= 1e-12);
        let identity = |y: &VectorM| Ok(y.to_multivector());
        let d = dirac_numeric(identity, &x, 1e-4).unwrap();
        assert!((&d - &Multivector::scalar(2, c(-2.0))).max_abs() < 1e-9);
        let sq = |y: &VectorM| Ok(Multivector::scalar(2, c(y.norm_sqr())));
        let d = dirac_numeric(sq, &x, 1e-4).unwrap();
        // ∂|x|² = 2x; in the vector-power language ∂(x²) = -2x
        assert!((&d - &x.to_multivector().scale_real(2.0)).max_abs() < 1e-9);
        assert!(dirac_numeric(sq, &x, 0.0).is_err());
    }

    #[test]
    fn richardson_tightens_error() {
        let x = pt(0.55, 0.25);
        let f = |y: &VectorM| {
            let s = y.norm_sqr();
            Ok(monogenic_eval(3, y)?.scale_real((3.0 * s).sin()))
        };
        let reference = dirac_numeric_with(f, &x, 1e-3, DiracScheme::Richardson).unwrap();
        let central = dirac_numeric(f, &x, 1e-2).unwrap();
        let rich = dirac_numeric_with(f, &x, 1e-2, DiracScheme::Richardson).unwrap();
        assert!((&rich - &reference).norm() < (&central - &reference).norm());
    }

    #[test]
    fn legendre_examples() {
        let x = pt(0.2, 0.5);
        for k in 0..4 {
            let c0 = clifford_legendre_eval(0, k, 2, &x, false).unwrap();
            assert!((&c0 - &monogenic_eval(k, &x).unwrap()).max_abs() < 1e-15);
        }
        let c2 = clifford_legendre_eval(2, 0, 2, &pt(0.0, 0.0), false).unwrap();
        assert!((&c2 - &Multivector::scalar(2, c(8.0))).max_abs() < 1e-13);
        // ∂((1 - |x|²)·1) = ∂(1 + x²) = -2x
        let c1 = clifford_legendre_eval(1, 0, 2, &x, false).unwrap();
        assert!((&c1 - &x.to_multivector().scale_real(-2.0)).max_abs() < 1e-14);
    }

    #[test]
    fn legendre_matches_brute_force_dirac() {
        // C_1 = ∂[(1 - |x|²) Ŷ_k] computed numerically.
        for k in 0..4 {
            let x = pt(0.31, -0.47);
            let f = |y: &VectorM| Ok(monogenic_eval(k, y)?.scale_real(1.0 - y.norm_sqr()));
            let d = dirac_numeric_with(f, &x, 1e-3, DiracScheme::Richardson).unwrap();
            let cf = clifford_legendre_eval(1, k, 2, &x, false).unwrap();
            assert!((&d - &cf).max_abs() < 1e-6, "k={k}: {d} vs {cf}");
        }
    }

    #[test]
    fn legendre_matches_symbolic_oracle() {
        for n in 0..=7 {
            for k in 0..=3 {
                let sym = RadialSymbol::clifford_legendre(n, k, 2);
                let cl = CliffordLegendre::new(n, k, 2).unwrap();
                for &(a, b) in &[(0.0, 0.0), (0.3, 0.1), (-0.5, 0.6), (0.05, -0.9)] {
                    let x = pt(a, b);
                    let want = sym.eval(&x).unwrap();
                    let got = cl.eval(&x).unwrap();
                    let scale = want.max_abs().max(1.0);
                    assert!((&want - &got).max_abs() <= 1e-10 * scale, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn parity_grade_structure() {
        let x = pt(0.4, 0.3);
        for n in 0..6 {
            for k in 0..3 {
                let v = clifford_legendre_eval(n, k, 2, &x, true).unwrap();
                let odd_part = v.grade_project(1).unwrap();
                let even_part = &v.grade_project(0).unwrap() + &v.grade_project(2).unwrap();
                if n % 2 == 0 {
                    assert!(odd_part.is_zero());
                } else {
                    assert!(even_part.is_zero());
                }
            }
        }
    }

    #[test]
    fn normalization_constant_is_reciprocal_norm() {
        for n in 0..10 {
            for k in 0..5 {
                for m in 2..5 {
                    let cl = CliffordLegendre::new(n, k, m).unwrap();
                    assert!((cl.normalization_diagnostic() - 1.0).abs() < 1e-12, "n={n} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn single_element_gram_is_one() {
        let b = vec![CliffordLegendre::new(3, 2, 2).unwrap()];
        let g = gram_matrix(&b, 32, 64).unwrap();
        assert!((g[(0, 0)] - c(1.0)).norm() < 1e-8);
    }

    #[test]
    fn gram_identity_within_and_across_degrees() {
        let mut basis = Vec::new();
        for k in 0..=3 {
            for n in 0..8 {
                basis.push(CliffordLegendre::new(n, k, 2).unwrap());
            }
        }
        let g = gram_matrix(&basis, 32, 64).unwrap();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let want = if i == j { 1.0 } else { 0.0 };
                let tol = if basis[i].k != basis[j].k { 1e-10 } else { 1e-8 };
                assert!((g[(i, j)] - c(want)).norm() < tol, "({i},{j}) = {}", g[(i, j)]);
            }
        }
    }

    #[test]
    fn gram_flags_under_resolution() {
        let b = vec![CliffordLegendre::new(12, 6, 2).unwrap()];
        assert!(matches!(gram_matrix(&b, 4, 8), Err(CpswfError::UnderResolved { .. })));
    }

    proptest! {
        #[test]
        fn homogeneity(k in 0usize..10, a in -1.0f64..1.0, b in -1.0f64..1.0, t in prop::sample::select(vec![0.5, 2.0])) {
            let y = monogenic_eval(k, &pt(a, b)).unwrap();
            let yt = monogenic_eval(k, &pt(t * a, t * b)).unwrap();
            let want = y.norm() * t.powi(k as i32);
            prop_assert!((yt.norm() - want).abs() <= 1e-14 * want.max(1e-300));
        }

        #[test]
        fn monogenicity(k in 0usize..=8, r in 0.05f64..0.95, th in 0.0f64..std::f64::consts::TAU) {
            let x = pt(r * th.cos(), r * th.sin());
            let d = dirac_numeric(|y| monogenic_eval(k, y), &x, DEFAULT_DIRAC_STEP).unwrap();
            prop_assert!(d.norm() <= 1e-6);
        }

        #[test]
        fn lemma_term_rules(k in 0usize..5, s in 0usize..6, r in 0.1f64..0.9, th in 0.0f64..std::f64::consts::TAU) {
            let m = 2;
            let x = pt(r * th.cos(), r * th.sin());
            let f = |y: &VectorM| -> Result<Multivector> {
                let xv = y.to_multivector();
                let mut p = Multivector::one(2);
                for _ in 0..s { p = &p * &xv; }
                Ok(&p * &monogenic_eval(k, y)?)
            };
            let d = dirac_numeric(f, &x, DEFAULT_DIRAC_STEP).unwrap();
            let coeff = if s % 2 == 0 { -(s as f64) } else { -((s + 2 * k + m - 1) as f64) };
            let want = if s == 0 {
                Multivector::zero(2)
            } else {
                let xv = x.to_multivector();
                let mut p = Multivector::one(2);
                for _ in 0..s - 1 { p = &p * &xv; }
                (&p * &monogenic_eval(k, &x).unwrap()).scale_real(coeff)
            };
            prop_assert!((&d - &want).norm() <= 1e-5);
        }
    }
}
