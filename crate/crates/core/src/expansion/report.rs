//! L2 errors of nested truncations for the CPSWF and Fourier–Bessel bases.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};
use crate::expansion::basis::{AngularFactor, BasisKind, Coefficient, ExpansionCoefficients, SeparableBasis, TermOrdering};
use crate::expansion::grid::{l2_error, SampledField};
use crate::expansion::theory::truncation_bound;

/// Slack on the "error never grows with more terms" invariant.
pub const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationRow {
    pub basis: BasisKind,
    pub terms: usize,
    pub l2_error: f64,
    /// Truncation bound of the largest S_N^{(M)} contained in the selection.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSet {
    pub basis: BasisKind,
    pub terms: usize,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub c: f64,
    pub m: usize,
    pub q_r: usize,
    pub q_theta: usize,
    pub function: String,
    pub ordering: TermOrdering,
    pub norm_f: f64,
    pub index_sets: Vec<IndexSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<ApproximationRow>,
}

/// (N, M) of the largest S_N^{(M)} whose non-negligible terms all lie in the selection.
///
/// Blocks outside the active set carry no energy, so only active blocks
/// constrain N; M is the top degree of the basis.
pub fn truncation_level(basis: &SeparableBasis, coeffs: &ExpansionCoefficients, selection: &[Coefficient]) -> Option<(usize, usize)> {
    let m_top = basis
        .blocks
        .iter()
        .map(|b| match b.angular {
            AngularFactor::Monogenic { k, .. } => Some(k),
            AngularFactor::Harmonic { .. } => None,
        })
        .collect::<Option<Vec<_>>>()?
        .into_iter()
        .max()?;
    let mut n_level = usize::MAX;
    for b in coeffs.active_blocks() {
        // longest prefix 0..=N present for this block
        let mut n = 0;
        while selection.iter().any(|e| e.block == b && e.n == n) {
            n += 1;
        }
        n_level = n_level.min(n.checked_sub(1)?);
    }
    (n_level != usize::MAX).then_some((n_level, m_top))
}

impl ApproximationReport {
    /// Errors of the first T terms of each basis for T in `terms`.
    ///
    /// `constant` is the truncation constant for this c, if one is known.
    pub fn build(
        bases: &[&SeparableBasis],
        f: &SampledField,
        function: impl Into<String>,
        terms: &[usize],
        ordering: TermOrdering,
        constant: Option<f64>,
    ) -> Result<Self> {
        let first = bases
            .first()
            .ok_or_else(|| CpswfError::InvalidParameter("no basis to report on".into()))?;
        let c = bases.iter().find_map(|b| b.c).unwrap_or(f64::NAN);
        let mut rows = Vec::new();
        let mut index_sets = Vec::new();
        let mut norm_f = 0.0;
        for basis in bases {
            let coeffs = basis.expand(f)?;
            norm_f = coeffs.norm_sq.sqrt();
            for &t in terms {
                let sel = coeffs.first_terms(t, ordering);
                let l2 = l2_error(&basis.grid, f, &basis.reconstruct(&sel)?);
                let bound = match (basis.kind, basis.c, constant) {
                    (BasisKind::Cpswf, Some(c), Some(cst)) => truncation_level(basis, &coeffs, &sel)
                        .and_then(|(n, m)| truncation_bound(n, m, 0, 2, c, norm_f, cst)),
                    _ => None,
                };
                rows.push(ApproximationRow {
                    basis: basis.kind,
                    terms: t,
                    l2_error: l2,
                    bound,
                });
                index_sets.push(IndexSet {
                    basis: basis.kind,
                    terms: t,
                    labels: sel.iter().map(|e| coeffs.label(e)).collect(),
                });
            }
        }
        Ok(ApproximationReport {
            metadata: ReportMetadata {
                c,
                m: 2,
                q_r: first.grid.q_r(),
                q_theta: first.grid.q_theta,
                function: function.into(),
                ordering,
                norm_f,
                index_sets,
            },
            rows,
        })
    }

    pub fn rows_for(&self, basis: BasisKind) -> impl Iterator<Item = &ApproximationRow> {
        self.rows.iter().filter(move |r| r.basis == basis)
    }

    pub fn error(&self, basis: BasisKind, terms: usize) -> Option<f64> {
        self.rows_for(basis).find(|r| r.terms == terms).map(|r| r.l2_error)
    }

    /// Errors are non-increasing in the number of terms, per basis.
    pub fn is_monotone(&self) -> bool {
        [BasisKind::Cpswf, BasisKind::FourierBessel].iter().all(|&b| {
            let mut rows: Vec<&ApproximationRow> = self.rows_for(b).collect();
            rows.sort_by_key(|r| r.terms);
            rows.windows(2).all(|w| w[1].l2_error <= w[0].l2_error + MONOTONE_SLACK)
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("basis,terms,l2_error,bound\n");
        for r in &self.rows {
            let bound = r.bound.map_or_else(|| "n/a".to_string(), |b| format!("{b:.6e}"));
            let _ = writeln!(out, "{},{},{:.6e},{}", r.basis, r.terms, r.l2_error, bound);
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::c2::C2;
    use crate::expansion::cpswf::cpswf_basis;
    use crate::expansion::fourier_bessel::fourier_bessel_basis;
    use crate::expansion::grid::{DiskFunction, PolarGrid};

    #[test]
    fn csv_and_levels() {
        let grid = PolarGrid::new(48, 32).unwrap();
        let cb = cpswf_basis(1.0, 6, 3, &grid).unwrap();
        let fb = fourier_bessel_basis(6, 3, &grid).unwrap();
        let f = DiskFunction::new("bump", |r, _| C2::real((-r * r).exp())).sample(&grid);
        let rep = ApproximationReport::build(&[&cb, &fb], &f, "bump", &[2, 4, 6], TermOrdering::ActiveBlocks, Some(1.0)).unwrap();
        let csv = rep.to_csv();
        assert!(csv.starts_with("basis,terms,l2_error,bound\n"));
        assert_eq!(csv.lines().count(), 7);
        assert!(rep.is_monotone());
        // radial f: only the (0, even) block is active, so T terms give N = T - 1
        let cp: Vec<_> = rep.rows_for(BasisKind::Cpswf).collect();
        assert!(cp[0].bound.is_none()); // N = 1 < e/2
        assert!(cp[1].bound.is_some() && cp[2].bound.is_some());
        for r in &cp[1..] {
            assert!(r.l2_error <= r.bound.unwrap());
        }
        assert!(rep.rows_for(BasisKind::FourierBessel).all(|r| r.bound.is_none()));
        let back: ApproximationReport = serde_json::from_str(&rep.to_json().unwrap()).unwrap();
        assert_eq!(back, rep);
    }
}
