//! Finite Hankel transform eigenproblem by symmetric Nyström discretization.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{Multivector, VectorM};
use crate::error::{CpswfError, Result};
use crate::monogenics::{monogenic_eval, Parity, PLANAR_SPHERE_NORM};
use crate::prolate::chi::{branch_alpha, GalerkinSystem};
use crate::special::bessel::bessel_j_over_power;
use crate::special::jacobi::jacobi_all;
use crate::special::quadrature::{gauss_legendre, Barycentric, QuadratureRule};

/// Default radial quadrature order.
pub const DEFAULT_QR: usize = 256;

/// Eigenvalues with |γ| below this are indistinguishable from rounding noise.
pub const NUMERICAL_ZERO: f64 = 1e-14;

/// Below this |γ| the Nyström extension loses too many digits (error ≈ ε/|γ|)
/// and profiles come from the Galerkin representation instead.
pub const EXTENSION_MIN_GAMMA: f64 = 1e-6;

const SQRT_2PI: f64 = 2.506628274631000502415765284811;

/// H_c^{(α)} f(x) = √(2π) ∫_0^1 √(2πcxy) J_α(2πcxy) f(y) dy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HankelOperator {
    pub c: f64,
    pub alpha: f64,
}

impl HankelOperator {
    pub fn new(c: f64, alpha: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(CpswfError::InvalidParameter(format!("bandwidth c = {c} must be positive")));
        }
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(CpswfError::InvalidParameter(format!("order alpha = {alpha} must be >= 0")));
        }
        Ok(HankelOperator { c, alpha })
    }

    pub fn for_branch(c: f64, branch: Branch) -> Result<Self> {
        Self::new(c, branch.alpha())
    }

    /// K(x, y) = √(2π) z^{1/2} J_α(z), z = 2πcxy, written as √(2π) z^{α+1/2} Λ_α(z).
    pub fn kernel(&self, x: f64, y: f64) -> f64 {
        let z = 2.0 * PI * self.c * x * y;
        SQRT_2PI * z.powf(self.alpha + 0.5) * bessel_j_over_power(self.alpha, z)
    }

    /// (H f)(x_i) at the rule nodes from samples f(x_j).
    pub fn apply(&self, rule: &QuadratureRule, values: &[f64]) -> Vec<f64> {
        rule.nodes
            .iter()
            .map(|&x| {
                rule.nodes
                    .iter()
                    .zip(&rule.weights)
                    .zip(values)
                    .map(|((&y, &w), &f)| w * self.kernel(x, y) * f)
                    .sum()
            })
            .collect()
    }
}

/// Degree, dimension and parity of a CPSWF family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Branch {
    pub k: usize,
    pub m: usize,
    pub parity: Parity,
}

impl Branch {
    pub fn new(k: usize, m: usize, parity: Parity) -> Result<Self> {
        if m < 2 {
            return Err(CpswfError::InvalidParameter(format!("dimension m = {m} must be >= 2")));
        }
        Ok(Branch { k, m, parity })
    }

    pub fn alpha(&self) -> f64 {
        branch_alpha(self.k, self.m, self.parity)
    }

    /// k for even, k + 1 for odd: the exponent of the phase (-i)^{k'}.
    pub fn phase_degree(&self) -> usize {
        self.k + self.parity.offset()
    }
}

fn lambda_matrix(c: f64, alpha: f64, nodes: &[f64]) -> DMatrix<f64> {
    let q = nodes.len();
    let mut lam = DMatrix::<f64>::zeros(q, q);
    for i in 0..q {
        for j in i..q {
            let v = bessel_j_over_power(alpha, 2.0 * PI * c * nodes[i] * nodes[j]);
            lam[(i, j)] = v;
            lam[(j, i)] = v;
        }
    }
    lam
}

fn nystrom_from_lambda(c: f64, alpha: f64, rule: &QuadratureRule, lam: &DMatrix<f64>) -> DMatrix<f64> {
    let q = rule.len();
    let scale: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w.sqrt() * (2.0 * PI * c).powf(0.5 * (alpha + 0.5)) * x.powf(alpha + 0.5))
        .collect();
    let mut m = DMatrix::<f64>::zeros(q, q);
    for i in 0..q {
        for j in i..q {
            let v = SQRT_2PI * (scale[i] * scale[j]) * lam[(i, j)];
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

fn check_rule(rule: &QuadratureRule) -> Result<()> {
    if rule.is_empty() || rule.nodes.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(CpswfError::InvalidParameter("rule nodes must lie in (0, 1)".into()));
    }
    Ok(())
}

/// M_ij = √w_i K(x_i, x_j) √w_j, symmetric bit for bit.
pub fn assemble_nystrom(c: f64, alpha: f64, rule: &QuadratureRule) -> Result<DMatrix<f64>> {
    HankelOperator::new(c, alpha)?;
    check_rule(rule)?;
    let lam = lambda_matrix(c, alpha, &rule.nodes);
    Ok(nystrom_from_lambda(c, alpha, rule, &lam))
}

/// Eigenvalues only, ordered as in [`RadialEigensystem`].
pub fn hankel_eigenvalues(op: &HankelOperator, rule: &QuadratureRule) -> Result<Vec<f64>> {
    let m = assemble_nystrom(op.c, op.alpha, rule)?;
    let vals = m.symmetric_eigenvalues();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(CpswfError::Eigensolver("non-finite eigenvalue".into()));
    }
    let order = spectral_order(vals.as_slice());
    Ok(order.into_iter().map(|i| vals[i]).collect())
}

/// Order eigenvalues as γ_0, γ_1, … .
///
/// The eigenvalues alternate in sign, γ_N having the sign (-1)^N, and |γ_N|
/// decreases. In the plateau many of them agree to machine precision, so a
/// plain magnitude sort can swap members of opposite sign; instead the
/// positive and negative parts are sorted separately and interleaved. The
/// numerically-zero tail follows by magnitude.
pub fn spectral_order(vals: &[f64]) -> Vec<usize> {
    let by_mag = |a: &usize, b: &usize| vals[*b].abs().total_cmp(&vals[*a].abs());
    let mut pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] >= NUMERICAL_ZERO).collect();
    let mut neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= -NUMERICAL_ZERO).collect();
    let mut tail: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].abs() < NUMERICAL_ZERO).collect();
    pos.sort_by(by_mag);
    neg.sort_by(by_mag);
    let mut order = Vec::with_capacity(vals.len());
    let (mut ip, mut ineg) = (0, 0);
    loop {
        let next = if order.len() % 2 == 0 { pos.get(ip) } else { neg.get(ineg) };
        match next {
            Some(&i) => {
                order.push(i);
                if order.len() % 2 == 1 {
                    ip += 1;
                } else {
                    ineg += 1;
                }
            }
            None => break,
        }
    }
    // Leftovers of the longer sign list lose the alternation; keep magnitude order.
    tail.extend_from_slice(&pos[ip..]);
    tail.extend_from_slice(&neg[ineg..]);
    tail.sort_by(by_mag);
    order.extend(tail);
    order
}

/// Eigenpairs (γ_N, φ_N) of H_c^{(α)} with derived CPSWF data.
#[derive(Debug, Clone)]
pub struct RadialEigensystem {
    pub c: f64,
    pub alpha: f64,
    pub branch: Option<Branch>,
    pub rule: QuadratureRule,
    /// γ_N in spectral order (see [`spectral_order`]).
    pub gammas: Vec<f64>,
    /// Column N: weighted eigenvector v = √w φ_N, unit Euclidean norm.
    vectors: DMatrix<f64>,
    /// Λ_α(2πc x_i x_j), shared by the matrix and the extension formula.
    lambda: DMatrix<f64>,
    galerkin: GalerkinSystem,
    /// Indices below this carry Galerkin eigenvectors.
    resolved: usize,
    interp: Barycentric,
    node_profiles: Vec<OnceLock<Vec<f64>>>,
}

/// Full symmetric eigendecomposition of the Nyström matrix.
pub fn hankel_eigs(op: &HankelOperator, rule: &QuadratureRule) -> Result<RadialEigensystem> {
    RadialEigensystem::build(op.c, op.alpha, None, rule.clone())
}

impl RadialEigensystem {
    /// System for one CPSWF branch with a q-point Gauss–Legendre rule.
    pub fn new(c: f64, branch: Branch, q: usize) -> Result<Self> {
        let rule = gauss_legendre(q, 0.0, 1.0)?;
        Self::build(c, branch.alpha(), Some(branch), rule)
    }

    pub fn with_rule(c: f64, branch: Branch, rule: QuadratureRule) -> Result<Self> {
        Self::build(c, branch.alpha(), Some(branch), rule)
    }

    /// The same eigen-data viewed as another branch of equal α
    /// (the odd branch at k coincides with the even branch at k + 1).
    pub fn with_branch(&self, branch: Branch) -> Result<Self> {
        if (branch.alpha() - self.alpha).abs() > 1e-15 {
            return Err(CpswfError::InvalidParameter(format!(
                "branch alpha {} differs from system alpha {}",
                branch.alpha(),
                self.alpha
            )));
        }
        let mut out = self.clone();
        out.branch = Some(branch);
        Ok(out)
    }

    fn build(c: f64, alpha: f64, branch: Option<Branch>, rule: QuadratureRule) -> Result<Self> {
        HankelOperator::new(c, alpha)?;
        check_rule(&rule)?;
        let q = rule.len();
        let lambda = lambda_matrix(c, alpha, &rule.nodes);
        let m = nystrom_from_lambda(c, alpha, &rule, &lambda);
        let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0)
            .ok_or_else(|| CpswfError::Eigensolver("Nyström eigensolver did not converge".into()))?;
        if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(CpswfError::Eigensolver("non-finite eigenvalue".into()));
        }
        let order = spectral_order(eig.eigenvalues.as_slice());
        let mut gammas: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = DMatrix::<f64>::zeros(q, q);
        for (col, &i) in order.iter().enumerate() {
            vectors.set_column(col, &eig.eigenvectors.column(i));
        }

        let size = (q + 40).min(64 + (4.0 * PI * c).ceil() as usize + q / 4);
        let galerkin = GalerkinSystem::new(c, alpha, size)?;
        let mut sys = RadialEigensystem {
            c,
            alpha,
            branch,
            interp: rule.interpolator(),
            rule,
            gammas: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
            lambda,
            galerkin,
            resolved: 0,
            node_profiles: Vec::new(),
        };
        sys.resolved = sys.galerkin_resolved().min(q);
        sys.adopt_galerkin(&mut gammas, &mut vectors);
        sys.fix_signs(&gammas, &mut vectors);
        sys.gammas = gammas;
        sys.vectors = vectors;
        sys.node_profiles = (0..q).map(|_| OnceLock::new()).collect();
        Ok(sys)
    }

    /// Number of Galerkin eigenfunctions that the Galerkin basis resolves.
    fn galerkin_trusted(&self) -> usize {
        (0..self.galerkin.size)
            .take_while(|&n| self.galerkin.tail(n, 8) < 1e-14)
            .count()
    }

    /// Leading Galerkin eigenfunctions whose squared profiles the radial rule
    /// integrates exactly: with significant coefficients up to j, φ² has
    /// degree 4j + 2α + 1 in r, and q Gauss nodes are exact to degree 2q - 1.
    fn galerkin_resolved(&self) -> usize {
        let q = self.rule.len() as f64;
        (0..self.galerkin_trusted())
            .take_while(|&n| {
                let col = self.galerkin.coefficients.column(n);
                let j = (0..self.galerkin.size).rposition(|j| col[j].abs() > 1e-17).unwrap_or(0);
                4.0 * j as f64 + 2.0 * self.alpha + 2.0 <= 2.0 * q - 1.0
            })
            .count()
    }

    /// √w_i φ_N(x_i) from the Galerkin representation.
    fn galerkin_weighted(&self, n: usize) -> DVector<f64> {
        let rule = &self.rule;
        DVector::from_iterator(
            rule.len(),
            rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| {
                w.sqrt() * x.powf(self.alpha + 0.5) * self.galerkin.profile(n, x * x)
            }),
        )
    }

    /// Replace the dense-solver eigenvectors by the sampled Galerkin
    /// eigenfunctions wherever the rule integrates those exactly.
    ///
    /// The dense solver resolves eigenvectors only to about ε‖M‖/gap, which
    /// is poor both in the plateau (near-degenerate γ of equal sign) and for
    /// small |γ|; the Galerkin ones do not depend on the gaps of γ at all.
    /// The remaining tail is re-orthonormalized against everything before it,
    /// and every γ becomes the Rayleigh quotient on the Nyström matrix.
    fn adopt_galerkin(&self, gammas: &mut [f64], vectors: &mut DMatrix<f64>) {
        let resolved = self.resolved;
        let m = self.matrix();
        for n in 0..resolved {
            let mut v = self.galerkin_weighted(n);
            v /= v.norm();
            gammas[n] = v.dot(&(&m * &v));
            vectors.set_column(n, &v);
        }
        for n in resolved..vectors.ncols() {
            let mut v = vectors.column(n).into_owned();
            for _ in 0..2 {
                for j in 0..n {
                    let col = vectors.column(j);
                    let p = col.dot(&v);
                    v.axpy(-p, &col, 1.0);
                }
            }
            v /= v.norm();
            gammas[n] = v.dot(&(&m * &v));
            vectors.set_column(n, &v);
        }
    }

    /// Sign convention: P_N(0) > 0, i.e. φ_N is positive next to the origin.
    fn fix_signs(&self, gammas: &[f64], vectors: &mut DMatrix<f64>) {
        let moments: Vec<f64> = self
            .rule
            .nodes
            .iter()
            .zip(&self.rule.weights)
            .map(|(&x, &w)| w.sqrt() * x.powf(self.alpha + 0.5))
            .collect();
        // Galerkin columns already satisfy the convention.
        for n in self.resolved..vectors.ncols() {
            let col = vectors.column(n);
            // P(0) ∝ (1/γ) Σ_j w_j x_j^{α+1/2} φ_j
            let sign = moments.iter().zip(col.iter()).map(|(a, b)| a * b).sum::<f64>() / gammas[n];
            if sign < 0.0 {
                vectors.set_column(n, &(-vectors.column(n)));
            }
        }
    }

    fn uses_galerkin_profile(&self, n: usize) -> bool {
        n < self.resolved && self.gammas[n].abs() < EXTENSION_MIN_GAMMA
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n >= self.gammas.len() {
            Err(CpswfError::IndexOutOfSpectrum {
                index: n,
                len: self.gammas.len(),
            })
        } else {
            Ok(())
        }
    }

    fn branch(&self) -> Result<Branch> {
        self.branch.ok_or_else(|| {
            CpswfError::InvalidParameter("system was built without CPSWF branch data".into())
        })
    }

    pub fn gamma(&self, n: usize) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.gammas[n])
    }

    /// True when |γ_N| is below the double-precision floor.
    pub fn is_numerically_zero(&self, n: usize) -> bool {
        self.gammas.get(n).is_none_or(|g| g.abs() < NUMERICAL_ZERO)
    }

    /// The symmetric Nyström matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        nystrom_from_lambda(self.c, self.alpha, &self.rule, &self.lambda)
    }

    /// Weighted eigenvector √w φ_N.
    pub fn weighted_vector(&self, n: usize) -> Result<DVector<f64>> {
        self.check_index(n)?;
        Ok(self.vectors.column(n).into_owned())
    }

    /// φ_N at the rule nodes.
    pub fn phi_nodes(&self, n: usize) -> Result<Vec<f64>> {
        self.check_index(n)?;
        Ok(self
            .vectors
            .column(n)
            .iter()
            .zip(&self.rule.weights)
            .map(|(v, w)| v / w.sqrt())
            .collect())
    }

    /// ‖M v_N - γ_N v_N‖₂, the discrete L2 norm of H φ_N - γ_N φ_N.
    pub fn residual(&self, n: usize) -> Result<f64> {
        self.residuals_with(&self.matrix(), n..n + 1).map(|r| r[0])
    }

    /// Residuals for a range of indices, assembling the matrix once.
    pub fn residuals(&self, range: std::ops::Range<usize>) -> Result<Vec<f64>> {
        self.residuals_with(&self.matrix(), range)
    }

    fn residuals_with(&self, m: &DMatrix<f64>, range: std::ops::Range<usize>) -> Result<Vec<f64>> {
        range
            .map(|n| {
                self.check_index(n)?;
                let v = self.vectors.column(n);
                Ok((m * v - v * self.gammas[n]).norm())
            })
            .collect()
    }

    /// max |⟨φ_i, φ_j⟩_rule - δ_ij| over the first `count` functions.
    pub fn orthonormality_defect(&self, count: usize) -> f64 {
        let count = count.min(self.len());
        let v = self.vectors.columns(0, count);
        let g = v.transpose() * v;
        let mut worst = 0.0f64;
        for i in 0..count {
            for j in 0..count {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - want).abs());
            }
        }
        worst
    }

    /// μ_N = γ_N / ((-i)^{k'} c^{(m-1)/2}).
    pub fn mu(&self, n: usize) -> Result<Complex64> {
        let b = self.branch()?;
        Ok(gamma_to_mu(self.gamma(n)?, b.k, b.m, self.c, b.parity))
    }

    /// Normalized concentration ν_N = c^m |μ_N|² = c γ_N².
    pub fn concentration(&self, n: usize) -> Result<f64> {
        let g = self.gamma(n)?;
        Ok(self.c * g * g)
    }

    /// Galerkin representation of the same eigenfunctions.
    pub fn galerkin(&self) -> &GalerkinSystem {
        &self.galerkin
    }

    /// Radial factor P_N(x_i²) at the nodes (Q_N for the odd branch).
    pub fn profile_nodes(&self, n: usize) -> Result<&[f64]> {
        self.check_index(n)?;
        Ok(self.node_profiles[n].get_or_init(|| {
            if !self.uses_galerkin_profile(n) {
                self.rule.nodes.iter().map(|&x| self.extension_unchecked(n, x)).collect()
            } else {
                let size = self.galerkin.size;
                self.rule
                    .nodes
                    .iter()
                    .map(|&x| {
                        let basis = jacobi_all(size - 1, 0.0, self.alpha, 2.0 * x * x - 1.0)
                            .expect("valid parameters");
                        self.galerkin.profile_from_basis(n, &basis)
                    })
                    .collect()
            }
        }))
    }

    /// P_N(r²) for r in [0, 1] by barycentric interpolation of the node values.
    pub fn radial_eval(&self, n: usize, r: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&r) {
            return Err(CpswfError::Extrapolation(r));
        }
        let values = self.profile_nodes(n)?;
        if r == 0.0 {
            return self.origin_value(n);
        }
        Ok(self.interp.eval(values, r))
    }

    fn origin_value(&self, n: usize) -> Result<f64> {
        if !self.uses_galerkin_profile(n) {
            Ok(self.extension_unchecked(n, 0.0))
        } else {
            Ok(self.galerkin.profile(n, 0.0))
        }
    }

    /// P_N(s²) for any s >= 0 from the eigen-equation itself:
    /// P_N(s²) = (√(2π)/γ_N) Σ_j w_j (2πc x_j)^{α+1/2} Λ_α(2πc s x_j) φ_N(x_j).
    ///
    /// For s > 1 this is the band-limited extension. No division by powers
    /// of s occurs, so the value is accurate to about ε/|γ_N| for all s.
    pub fn extension(&self, n: usize, s: f64) -> Result<f64> {
        self.check_index(n)?;
        if !(s >= 0.0) || !s.is_finite() {
            return Err(CpswfError::InvalidParameter(format!("radius {s} must be >= 0")));
        }
        Ok(self.extension_unchecked(n, s))
    }

    fn extension_unchecked(&self, n: usize, s: f64) -> f64 {
        let two_pi_c = 2.0 * PI * self.c;
        let v = self.vectors.column(n);
        let sum: f64 = self
            .rule
            .nodes
            .iter()
            .zip(&self.rule.weights)
            .zip(v.iter())
            .map(|((&x, &w), &vj)| {
                // w φ = √w v
                w.sqrt() * vj * (two_pi_c * x).powf(self.alpha + 0.5) * bessel_j_over_power(self.alpha, two_pi_c * s * x)
            })
            .sum();
        SQRT_2PI * sum / self.gammas[n]
    }

    /// φ_N(r) = r^{α+1/2} P_N(r²).
    pub fn phi_eval(&self, n: usize, r: f64) -> Result<f64> {
        Ok(r.powf(self.alpha + 0.5) * self.radial_eval(n, r)?)
    }

    /// Radial profile g_N(r) = φ_N(r) r^{-(m-1)/2} of the CPSWF field.
    pub fn profile(&self, n: usize, r: f64) -> Result<f64> {
        let b = self.branch()?;
        Ok(r.powi((b.k + b.parity.offset()) as i32) * self.radial_eval(n, r)?)
    }

    /// g_N at the rule nodes, straight from the eigenvectors: exactly
    /// orthonormal under the discrete rule with weight r^{m-1}.
    pub fn profile_at_nodes(&self, n: usize) -> Result<Vec<f64>> {
        let b = self.branch()?;
        let e = (b.m as f64 - 1.0) / 2.0;
        Ok(self
            .phi_nodes(n)?
            .into_iter()
            .zip(&self.rule.nodes)
            .map(|(p, &x)| p / x.powf(e))
            .collect())
    }

    /// CPSWF field ψ_N(x) for |x| <= 1 (m = 2).
    pub fn field(&self, n: usize, x: &VectorM) -> Result<Multivector> {
        let r = x.norm_sqr().sqrt();
        if r > 1.0 {
            return Err(CpswfError::Extrapolation(r));
        }
        let p = self.radial_eval(n, r)?;
        self.assemble_field(p, x)
    }

    /// Band-limited extension of ψ_N to any x (m = 2).
    pub fn field_extended(&self, n: usize, x: &VectorM) -> Result<Multivector> {
        let r = x.norm_sqr().sqrt();
        let p = self.extension(n, r)?;
        self.assemble_field(p, x)
    }

    pub(crate) fn assemble_field(&self, p: f64, x: &VectorM) -> Result<Multivector> {
        let b = self.branch()?;
        if b.m != 2 || x.dim() != 2 {
            return Err(CpswfError::UnsupportedDimension(b.m.max(x.dim())));
        }
        let y = monogenic_eval(b.k, x)?;
        let base = match b.parity {
            Parity::Even => y,
            Parity::Odd => &x.to_multivector() * &y,
        };
        Ok(base.scale_real(p / PLANAR_SPHERE_NORM))
    }
}

/// μ = γ / ((-i)^{k'} c^{(m-1)/2}) with k' = k (even) or k + 1 (odd).
pub fn gamma_to_mu(gamma: f64, k: usize, m: usize, c: f64, parity: Parity) -> Complex64 {
    let kp = k + parity.offset();
    // 1 / (-i)^{k'} = i^{k'}
    let phase = match kp % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    phase * (gamma / c.powf((m as f64 - 1.0) / 2.0))
}

/// CPSWF field evaluation, ψ_N(x) for the system's branch.
pub fn full_cpswf_eval(sys: &RadialEigensystem, n: usize, x: &VectorM) -> Result<Multivector> {
    sys.field(n, x)
}

/// P_N(r²) (even) or Q_N(r²) (odd).
pub fn radial_cpswf_eval(sys: &RadialEigensystem, n: usize, r: f64) -> Result<f64> {
    sys.radial_eval(n, r)
}
