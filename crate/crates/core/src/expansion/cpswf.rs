//! The planar CPSWF basis ψ^{(k,c)}_{N} on a polar grid.

use std::sync::Arc;

use crate::error::{CpswfError, Result};
use crate::expansion::basis::{AngularFactor, BasisBlock, BasisKind, ExpansionCoefficients, RadialSource, SeparableBasis};
use crate::expansion::grid::{DiskFunction, PolarGrid};
use crate::monogenics::Parity;
use crate::prolate::chi::{chi_spectrum, default_basis_size};
use crate::prolate::hankel::{Branch, RadialEigensystem};

/// Blocks (k, even) and (k, odd) for k ≤ m_max, radial indices N ≤ n_max,
/// keyed by χ_n with n = 2N (even) or 2N + 1 (odd).
pub fn cpswf_basis(c: f64, n_max: usize, m_max: usize, grid: &PolarGrid) -> Result<SeparableBasis> {
    if n_max + 1 > grid.q_r() {
        return Err(CpswfError::InvalidParameter(format!(
            "n_max = {n_max} exceeds the radial rule of {} nodes",
            grid.q_r()
        )));
    }
    // the odd branch at k shares its radial problem with the even one at k + 1
    let systems = (0..=m_max + 1)
        .map(|k| RadialEigensystem::with_rule(c, Branch::new(k, 2, Parity::Even)?, grid.radial.clone()).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let n_comb = 2 * n_max + 1;
    let mut blocks = Vec::with_capacity(2 * (m_max + 1));
    for k in 0..=m_max {
        let chis = chi_spectrum(k, 2, c, n_comb, default_basis_size(n_comb, c))?;
        for parity in [Parity::Even, Parity::Odd] {
            let sys = match parity {
                Parity::Even => systems[k].clone(),
                Parity::Odd => Arc::new(systems[k + 1].with_branch(Branch::new(k, 2, parity)?)?),
            };
            let node_values = (0..=n_max).map(|n| sys.profile_at_nodes(n)).collect::<Result<Vec<_>>>()?;
            let keys = (0..=n_max).map(|n| chis[2 * n + parity.offset()]).collect();
            blocks.push(BasisBlock {
                angular: AngularFactor::Monogenic { k, parity },
                node_values,
                keys,
                radial: RadialSource::Cpswf(sys),
            });
        }
    }
    Ok(SeparableBasis {
        kind: BasisKind::Cpswf,
        c: Some(c),
        grid: grid.clone(),
        blocks,
    })
}

/// Coefficients ⟨ψ^{(k,c)}_{N}, f⟩ for N ≤ n_max, k ≤ m_max.
pub fn cpswf_expand(f: &DiskFunction, n_max: usize, m_max: usize, c: f64, grid: &PolarGrid) -> Result<ExpansionCoefficients> {
    cpswf_basis(c, n_max, m_max, grid)?.expand(&f.sample(grid))
}
