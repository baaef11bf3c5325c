//! Differential eigenvalues χ of L_c by a Galerkin method on Jacobi polynomials.
//!
//! Writing a CPSWF as P(|x|²) Y_k (even) or Q(|x|²) x Y_k (odd) and applying
//! the Dirac term rules, L_c reduces to the Sturm–Liouville operator
//!
//!   A_α p = -4 t^{-α} (t^{α+1}(1-t) p')' + 4π²c² t p,   t = |x|²,
//!
//! with α = k + m/2 - 1 for the even branch, and L_c = A_α + 4α with
//! α = k + m/2 for the odd branch. In the basis b_j(t) = √(2j+α+1) P_j^{(0,α)}(2t-1),
//! orthonormal for t^α dt on (0,1), the first part is diagonal with entries
//! 4j(j+α+1) and multiplication by t is the (shifted) Jacobi matrix, so the
//! Galerkin matrix is tridiagonal and exact.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{CpswfError, Result};
use crate::monogenics::Parity;
use crate::special::jacobi::jacobi_all;

/// Drift tolerance of the basis-doubling check.
pub const CHI_DRIFT_TOL: f64 = 1e-8;

/// Entries (diagonal, sub-diagonal) of multiplication by t in the b_j basis.
fn t_matrix_entries(alpha: f64, size: usize) -> (Vec<f64>, Vec<f64>) {
    let b = alpha;
    let diag = (0..size)
        .map(|n| {
            let nf = n as f64;
            // x = 2t - 1 recurrence coefficient for P^{(0,b)}
            let x = if n == 0 {
                b / (b + 2.0)
            } else {
                (b * b) / ((2.0 * nf + b) * (2.0 * nf + b + 2.0))
            };
            (1.0 + x) / 2.0
        })
        .collect();
    let off = (1..size)
        .map(|n| {
            let nf = n as f64;
            let s = 2.0 * nf + b;
            let x = 2.0 / s * (nf * nf * (nf + b) * (nf + b) / ((s - 1.0) * (s + 1.0))).sqrt();
            x / 2.0
        })
        .collect();
    (diag, off)
}

/// Galerkin discretization of A_α at bandwidth c.
#[derive(Debug, Clone)]
pub struct GalerkinSystem {
    pub c: f64,
    pub alpha: f64,
    pub size: usize,
    /// Eigenvalues of A_α, ascending.
    pub eigenvalues: Vec<f64>,
    /// Column N holds the coefficients of eigenfunction N in the b_j basis,
    /// signed so that the profile is positive at t = 0.
    pub coefficients: DMatrix<f64>,
}

impl GalerkinSystem {
    pub fn new(c: f64, alpha: f64, size: usize) -> Result<Self> {
        if !(c >= 0.0) || !(alpha >= 0.0) {
            return Err(CpswfError::InvalidParameter(format!(
                "Galerkin system needs c >= 0 and alpha >= 0 (c = {c}, alpha = {alpha})"
            )));
        }
        if size == 0 {
            return Err(CpswfError::InvalidParameter("Galerkin basis must be non-empty".into()));
        }
        let (diag, off) = t_matrix_entries(alpha, size);
        let pot = 4.0 * PI * PI * c * c;
        let mut a = DMatrix::<f64>::zeros(size, size);
        for j in 0..size {
            let jf = j as f64;
            a[(j, j)] = 4.0 * jf * (jf + alpha + 1.0) + pot * diag[j];
            if j + 1 < size {
                a[(j, j + 1)] = pot * off[j];
                a[(j + 1, j)] = pot * off[j];
            }
        }
        let eig = SymmetricEigen::try_new(a, f64::EPSILON, 0)
            .ok_or_else(|| CpswfError::Eigensolver("Galerkin eigensolver did not converge".into()))?;
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let at_origin = jacobi_all(size - 1, 0.0, alpha, -1.0)?;
        let mut coefficients = DMatrix::<f64>::zeros(size, size);
        let mut eigenvalues = Vec::with_capacity(size);
        for (col, &i) in order.iter().enumerate() {
            let v = eig.eigenvectors.column(i);
            let p0: f64 = (0..size)
                .map(|j| v[j] * (2.0 * j as f64 + alpha + 1.0).sqrt() * at_origin[j])
                .sum();
            let sign = if p0 < 0.0 { -1.0 } else { 1.0 };
            coefficients.set_column(col, &(v * sign));
            eigenvalues.push(eig.eigenvalues[i]);
        }
        Ok(GalerkinSystem {
            c,
            alpha,
            size,
            eigenvalues,
            coefficients,
        })
    }

    /// Radial factor P_N(t) with ∫_0^1 r^{2α+1} P_N(r²)² dr = 1.
    pub fn profile(&self, n: usize, t: f64) -> f64 {
        let basis = jacobi_all(self.size - 1, 0.0, self.alpha, 2.0 * t - 1.0)
            .expect("alpha validated at construction");
        self.profile_from_basis(n, &basis)
    }

    /// Same as [`profile`](Self::profile) given P_j^{(0,α)}(2t-1) for all j.
    pub fn profile_from_basis(&self, n: usize, jacobi: &[f64]) -> f64 {
        let col = self.coefficients.column(n);
        let s: f64 = (0..self.size)
            .map(|j| col[j] * (2.0 * j as f64 + self.alpha + 1.0).sqrt() * jacobi[j])
            .sum();
        std::f64::consts::SQRT_2 * s
    }

    /// Magnitude of the trailing coefficients of eigenvector N; small values
    /// mean the basis resolves that eigenfunction.
    pub fn tail(&self, n: usize, width: usize) -> f64 {
        let col = self.coefficients.column(n);
        (self.size.saturating_sub(width)..self.size).fold(0.0f64, |m, j| m.max(col[j].abs()))
    }
}

/// α of the radial problem for a given branch.
pub fn branch_alpha(k: usize, m: usize, parity: Parity) -> f64 {
    k as f64 + m as f64 / 2.0 - 1.0 + parity.offset() as f64
}

fn branch_chis(k: usize, m: usize, c: f64, parity: Parity, count: usize, size: usize) -> Result<Vec<f64>> {
    let alpha = branch_alpha(k, m, parity);
    let sys = GalerkinSystem::new(c, alpha, size)?;
    let shift = match parity {
        Parity::Even => 0.0,
        Parity::Odd => 4.0 * alpha,
    };
    Ok(sys.eigenvalues.iter().take(count).map(|x| x + shift).collect())
}

/// χ_{n,m}^{k,c} for n = 0..=n_max, where n = 2N + parity.
///
/// `basis_size` is the number of Jacobi functions per parity branch; the
/// result is recomputed with twice as many and any drift above 1e-8 is an
/// error.
pub fn chi_spectrum(k: usize, m: usize, c: f64, n_max: usize, basis_size: usize) -> Result<Vec<f64>> {
    if basis_size < n_max + 10 {
        return Err(CpswfError::InvalidParameter(format!(
            "basis size {basis_size} must be at least n_max + 10 = {}",
            n_max + 10
        )));
    }
    if m < 2 {
        return Err(CpswfError::InvalidParameter(format!("dimension m = {m} must be >= 2")));
    }
    let mut out = vec![0.0; n_max + 1];
    for parity in [Parity::Even, Parity::Odd] {
        let count = (n_max + 2 - parity.offset()) / 2;
        if count == 0 {
            continue;
        }
        let coarse = branch_chis(k, m, c, parity, count, basis_size)?;
        let fine = branch_chis(k, m, c, parity, count, 2 * basis_size)?;
        let drift = coarse
            .iter()
            .zip(&fine)
            .fold(0.0f64, |d, (a, b)| d.max((a - b).abs() / b.abs().max(1.0)));
        if drift > CHI_DRIFT_TOL {
            return Err(CpswfError::UnderResolved {
                what: format!("chi spectrum ({parity}, k = {k}, c = {c})"),
                drift,
                tol: CHI_DRIFT_TOL,
            });
        }
        for (big_n, chi) in fine.into_iter().enumerate() {
            out[2 * big_n + parity.offset()] = chi;
        }
    }
    Ok(out)
}

/// Default Galerkin size for a request up to order n_max.
pub fn default_basis_size(n_max: usize, c: f64) -> usize {
    n_max + 30 + (2.0 * PI * c).ceil() as usize
}

/// χ at c = 0 for even n, n(n+2k+m).
pub fn chi_at_zero_even(n: usize, k: usize, m: usize) -> f64 {
    (n * (n + 2 * k + m)) as f64
}

/// χ at c = 0 for any n: n(n+2k+m) when n is even, (n+1)(n+2k+m-1) when odd.
pub fn chi_at_zero(n: usize, k: usize, m: usize) -> f64 {
    if n % 2 == 0 {
        chi_at_zero_even(n, k, m)
    } else {
        ((n + 1) * (n + 2 * k + m - 1)) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenics::RadialSymbol;
    use crate::special::gauss_legendre;
    use crate::special::jacobi::jacobi_unchecked;

    #[test]
    fn t_matrix_matches_quadrature() {
        let rule = gauss_legendre(80, 0.0, 1.0).unwrap();
        for alpha in [0.0, 1.0, 2.5, 7.0] {
            let (d, o) = t_matrix_entries(alpha, 12);
            let b = |j: usize, t: f64| (2.0 * j as f64 + alpha + 1.0).sqrt() * jacobi_unchecked(j, 0.0, alpha, 2.0 * t - 1.0);
            for i in 0..12 {
                for j in 0..12 {
                    // t = u² keeps the integrand polynomial for half-integer α
                    let q = rule.integrate(|u| {
                        let t = u * u;
                        2.0 * u.powf(2.0 * alpha + 1.0) * t * b(i, t) * b(j, t)
                    });
                    let want = if i == j {
                        d[i]
                    } else if j == i + 1 {
                        o[i]
                    } else if i == j + 1 {
                        o[j]
                    } else {
                        0.0
                    };
                    assert!((q - want).abs() < 1e-12, "alpha={alpha} ({i},{j}): {q} vs {want}");
                }
            }
        }
    }

    #[test]
    fn c_zero_gives_closed_form() {
        for m in [2usize, 3] {
            for k in 0..=5 {
                let chis = chi_spectrum(k, m, 0.0, 10, 20).unwrap();
                for (n, chi) in chis.iter().enumerate() {
                    assert!((chi - chi_at_zero(n, k, m)).abs() <= 1e-9, "m={m} k={k} n={n}");
                }
            }
        }
        let chis = chi_spectrum(0, 2, 0.0, 2, 12).unwrap();
        assert!((chis[2] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn radial_operator_agrees_with_symbolic_lc() {
        // A_α applied to the Jacobi-form Clifford–Legendre profile must match
        // the symbol calculus at c = 1.3.
        let c = 1.3;
        for m in [2usize, 3] {
            for k in 0..3 {
                for n in 0..6 {
                    let sym = RadialSymbol::clifford_legendre(n, k, m);
                    let lsym = sym.apply_lc(c);
                    // Project both onto the radial t-polynomial: coefficient of x^{2j+parity}.
                    let parity = n % 2;
                    let to_t = |s: &RadialSymbol| -> Vec<f64> {
                        s.coeffs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| i % 2 == parity)
                            .map(|(i, a)| a * if (i / 2) % 2 == 0 { 1.0 } else { -1.0 })
                            .collect()
                    };
                    let p = to_t(&sym);
                    let lp = to_t(&lsym);
                    let alpha = branch_alpha(k, m, Parity::of(n));
                    let shift = if parity == 1 { 4.0 * alpha } else { 0.0 };
                    // A_α p via explicit polynomial calculus in t
                    let eval = |coef: &[f64], t: f64| coef.iter().rev().fold(0.0, |acc, a| acc * t + a);
                    let d1: Vec<f64> = p.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
                    let d2: Vec<f64> = d1.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
                    for &t in &[0.0, 0.2, 0.55, 0.9] {
                        let ap = -4.0 * t * (1.0 - t) * eval(&d2, t)
                            - (4.0 * (alpha + 1.0) - 4.0 * (alpha + 2.0) * t) * eval(&d1, t)
                            + 4.0 * PI * PI * c * c * t * eval(&p, t)
                            + shift * eval(&p, t);
                        let want = eval(&lp, t);
                        assert!((ap - want).abs() <= 1e-9 * want.abs().max(1.0), "m={m} k={k} n={n} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn window_and_monotonicity() {
        let mut prev: Option<Vec<f64>> = None;
        for c in [0.5, 1.0, 2.0] {
            let chis = chi_spectrum(2, 2, c, 10, default_basis_size(10, c)).unwrap();
            for n in (0..=10).step_by(2) {
                let lo = chi_at_zero_even(n, 2, 2);
                assert!(chis[n] > lo && chis[n] < lo + 8.0 * PI * PI * c * c);
            }
            if let Some(p) = &prev {
                assert!(chis.iter().zip(p).all(|(a, b)| a > b));
            }
            prev = Some(chis);
        }
    }

    #[test]
    fn parity_collapse_shift() {
        // odd branch at k equals even branch at k+1 shifted by 2(2k+m)
        let c = 1.7;
        let even_k1 = GalerkinSystem::new(c, branch_alpha(1, 2, Parity::Even), 40).unwrap();
        let odd_k0 = chi_spectrum(0, 2, c, 15, 40).unwrap();
        for big_n in 0..8 {
            assert!((odd_k0[2 * big_n + 1] - even_k1.eigenvalues[big_n] - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn small_basis_rejected_and_drift_detected() {
        assert!(chi_spectrum(0, 2, 1.0, 20, 25).is_err());
        assert!(matches!(
            chi_spectrum(0, 2, 30.0, 10, 20),
            Err(CpswfError::UnderResolved { .. })
        ));
    }

    #[test]
    fn profiles_are_orthonormal() {
        let sys = GalerkinSystem::new(2.0, 1.5, 40).unwrap();
        let rule = gauss_legendre(120, 0.0, 1.0).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let v = rule.integrate(|r| r.powf(2.0 * 1.5 + 1.0) * sys.profile(i, r * r) * sys.profile(j, r * r));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12);
            }
            assert!(sys.profile(i, 0.0) > 0.0);
        }
    }
}
