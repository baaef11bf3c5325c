//! Fourier–Bessel baseline u_{k,n} = J_{|k|}(j_{|k|,n} r) E_k(θ) / ‖·‖.

use crate::error::{CpswfError, Result};
use crate::expansion::basis::{AngularFactor, BasisBlock, BasisKind, ExpansionCoefficients, RadialSource, SeparableBasis};
use crate::expansion::grid::{DiskFunction, PolarGrid};
use crate::special::bessel::{bessel_j, bessel_j_zeros};

/// ‖J_{|k|}(j r) E_k‖² on the disk in closed form: π J_{|k|+1}(j)².
pub fn fourier_bessel_norm_sqr(k: i64, zero: f64) -> Result<f64> {
    let j = bessel_j(k.unsigned_abs() as f64 + 1.0, zero)?;
    Ok(std::f64::consts::PI * j * j)
}

/// Blocks k = -k_max..=k_max with `terms_per_k` radial modes each, normalized
/// numerically on the grid and keyed by the Bessel zero.
pub fn fourier_bessel_basis(terms_per_k: usize, k_max: usize, grid: &PolarGrid) -> Result<SeparableBasis> {
    if terms_per_k == 0 {
        return Err(CpswfError::InvalidParameter("need at least one radial mode".into()));
    }
    let rule = &grid.radial;
    let mut blocks = Vec::with_capacity(2 * k_max + 1);
    for k in -(k_max as i64)..=(k_max as i64) {
        let order = k.unsigned_abs() as f64;
        let zeros = bessel_j_zeros(order, terms_per_k);
        let mut node_values = Vec::with_capacity(terms_per_k);
        let mut norms = Vec::with_capacity(terms_per_k);
        for &z in &zeros {
            let raw: Vec<f64> = rule.nodes.iter().map(|&r| bessel_j(order, z * r)).collect::<Result<_>>()?;
            // |E_k|² = 1, so the angular integral contributes 2π
            let norm_sq = 2.0
                * std::f64::consts::PI
                * raw
                    .iter()
                    .zip(&rule.nodes)
                    .zip(&rule.weights)
                    .map(|((v, r), w)| w * r * v * v)
                    .sum::<f64>();
            let norm = norm_sq.sqrt();
            node_values.push(raw.iter().map(|v| v / norm).collect());
            norms.push(norm);
        }
        blocks.push(BasisBlock {
            angular: AngularFactor::Harmonic { k },
            node_values,
            keys: zeros.clone(),
            radial: RadialSource::Bessel { order, zeros, norms },
        });
    }
    Ok(SeparableBasis {
        kind: BasisKind::FourierBessel,
        c: None,
        grid: grid.clone(),
        blocks,
    })
}

pub fn fourier_bessel_expand(f: &DiskFunction, terms_per_k: usize, k_max: usize, grid: &PolarGrid) -> Result<ExpansionCoefficients> {
    fourier_bessel_basis(terms_per_k, k_max, grid)?.expand(&f.sample(grid))
}
