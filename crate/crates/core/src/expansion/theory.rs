//! Truncation bound for CPSWF expansions and the sup-norm growth of ψ_N.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};
use crate::expansion::basis::{Coefficient, SeparableBasis};
use crate::expansion::c2::C2;
use crate::expansion::grid::{l2_error, DiskFunction};
use crate::prolate::hankel::RadialEigensystem;

/// C_{2,1} fitted as max(error / bound-without-C) over the calibration plane
/// waves at c = 1, N ∈ [2, 8], M = 24 (see [`calibrate_truncation_constant`]),
/// rounded up and frozen. The fit is attained at N = 2 by the waves with |ξ| = 1.
pub const TRUNCATION_CONSTANT_C1: f64 = 0.6903;

/// Implicit constant of ‖ψ_N‖_∞ ≲ [(2N+k+(m-1)/2)(2N+k+(m+1)/2)]^{1/2},
/// recorded for c = 1, k = 0, even branch, N ∈ [2, 12] (maximum 0.2398 at N = 2).
pub const SUP_NORM_CONSTANT_C1: f64 = 0.24;

/// C (2N+k) (ec/(4N+2k+m+3))^{(2N+k+m)/2} ‖f‖, or `None` unless N, M > ec/2.
pub fn truncation_bound(n: usize, m_trunc: usize, k: usize, m: usize, c: f64, norm_f: f64, constant: f64) -> Option<f64> {
    let gate = E * c / 2.0;
    if (n as f64) <= gate || (m_trunc as f64) <= gate {
        return None;
    }
    let nf = n as f64;
    let (kf, mf) = (k as f64, m as f64);
    let base = E * c / (4.0 * nf + 2.0 * kf + mf + 3.0);
    Some(constant * (2.0 * nf + kf) * base.powf((2.0 * nf + kf + mf) / 2.0) * norm_f)
}

/// The plane wave e^{2πic⟨x,ξ⟩}, band-limited to B(c) for |ξ| ≤ 1.
pub fn plane_wave(c: f64, xi: [f64; 2]) -> DiskFunction {
    DiskFunction::new(format!("plane wave xi = ({}, {})", xi[0], xi[1]), move |r, t| {
        let phase = 2.0 * PI * c * r * (xi[0] * t.cos() + xi[1] * t.sin());
        C2::scalar(Complex64::from_polar(1.0, phase))
    })
}

/// Terms of S_N^{(M)}: every block with k ≤ M and radial index ≤ N.
pub fn partial_sum_selection(basis: &SeparableBasis, coeffs: &[Coefficient], n: usize, m_trunc: usize) -> Vec<Coefficient> {
    use crate::expansion::basis::AngularFactor;
    coeffs
        .iter()
        .filter(|e| match basis.blocks[e.block].angular {
            AngularFactor::Monogenic { k, .. } => k <= m_trunc && e.n <= n,
            AngularFactor::Harmonic { k } => k.unsigned_abs() as usize <= m_trunc && e.n <= n,
        })
        .copied()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationSample {
    pub n: usize,
    pub error: f64,
    /// Bound with C = 1 and k = 0, the weakest member of the family over k.
    pub shape: f64,
}

/// ‖f − S_N^{(M)} f‖ against the bound shape for each N in `ns`.
pub fn truncation_profile(basis: &SeparableBasis, f: &DiskFunction, ns: &[usize], m_trunc: usize) -> Result<Vec<TruncationSample>> {
    let c = basis
        .c
        .ok_or_else(|| CpswfError::InvalidParameter("truncation theory needs a CPSWF basis".into()))?;
    let grid = &basis.grid;
    let samples = f.sample(grid);
    let coeffs = basis.expand(&samples)?;
    let norm_f = coeffs.norm_sq.sqrt();
    ns.iter()
        .map(|&n| {
            let sel = partial_sum_selection(basis, &coeffs.entries, n, m_trunc);
            let error = l2_error(grid, &samples, &basis.reconstruct(&sel)?);
            let shape = truncation_bound(n, m_trunc, 0, 2, c, norm_f, 1.0).ok_or_else(|| {
                CpswfError::InvalidParameter(format!("N = {n}, M = {m_trunc} violate N, M > ec/2"))
            })?;
            Ok(TruncationSample { n, error, shape })
        })
        .collect()
}

/// max(error / shape) over a family of functions.
pub fn calibrate_truncation_constant(basis: &SeparableBasis, family: &[DiskFunction], ns: &[usize], m_trunc: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for f in family {
        for s in truncation_profile(basis, f, ns, m_trunc)? {
            worst = worst.max(s.error / s.shape);
        }
    }
    Ok(worst)
}

/// Plane waves used to fit the constant.
pub fn calibration_family(c: f64) -> Vec<DiskFunction> {
    let mut out = Vec::new();
    for &rho in &[0.35, 0.7, 1.0] {
        for &a in &[0.2f64, 1.3, 2.9] {
            out.push(plane_wave(c, [rho * a.cos(), rho * a.sin()]));
        }
    }
    out
}

/// Plane waves held out from the fit.
pub fn holdout_family(c: f64) -> Vec<DiskFunction> {
    [(0.5, 4.0f64), (0.85, 0.7), (1.0, 5.5), (1.0, 0.75)]
        .iter()
        .map(|&(rho, a)| plane_wave(c, [rho * a.cos(), rho * a.sin()]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SupNormRatios {
    /// The lemma's hypothesis c² > (k + m/2 − 1)² − 1/4 fails.
    Inactive,
    Ratios(Vec<(usize, f64)>),
}

/// ‖ψ_N‖_∞ / [(2N+k+(m-1)/2)(2N+k+(m+1)/2)]^{1/2}, the sup sampled on 2001 radii.
pub fn sup_norm_ratio(sys: &RadialEigensystem, ns: std::ops::RangeInclusive<usize>) -> Result<SupNormRatios> {
    let b = sys
        .branch
        .ok_or_else(|| CpswfError::InvalidParameter("sup-norm ratio needs a CPSWF branch".into()))?;
    let (k, m) = (b.k as f64, b.m as f64);
    let h = k + m / 2.0 - 1.0;
    if sys.c * sys.c <= h * h - 0.25 {
        return Ok(SupNormRatios::Inactive);
    }
    // |A(ω)| is 1/√|S^{m-1}| for the planar factors
    let ang = 1.0 / (2.0 * PI).sqrt();
    let mut out = Vec::new();
    for n in ns {
        let mut sup = 0.0f64;
        for i in 0..=2000 {
            let r = i as f64 / 2000.0;
            sup = sup.max(sys.profile(n, r)?.abs());
        }
        let nf = n as f64;
        let bracket = ((2.0 * nf + k + (m - 1.0) / 2.0) * (2.0 * nf + k + (m + 1.0) / 2.0)).sqrt();
        out.push((n, sup * ang / bracket));
    }
    Ok(SupNormRatios::Ratios(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        let b = truncation_bound(3, 3, 0, 2, 1.0, 1.0, 1.0).unwrap();
        let want = 6.0 * (E / 17.0).powi(4);
        assert!((b - want).abs() < 1e-18);
        assert!((b - 3.92e-3).abs() < 0.01e-3);
        assert!(truncation_bound(1, 3, 0, 2, 1.0, 1.0, 1.0).is_none());
        assert!(truncation_bound(3, 1, 0, 2, 1.0, 1.0, 1.0).is_none());
        for n in 2..20 {
            let a = truncation_bound(n, 5, 1, 2, 1.0, 1.0, 1.0).unwrap();
            let b = truncation_bound(n + 1, 5, 1, 2, 1.0, 1.0, 1.0).unwrap();
            assert!(b < a);
        }
    }
}
