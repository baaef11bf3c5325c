//! Spectrum table over a (k, n) grid at fixed c.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::monogenics::Parity;
use crate::prolate::bounds::{check_bounds, BoundConvention, BoundStatus};
use crate::prolate::chi::{chi_spectrum, default_basis_size};
use crate::prolate::hankel::{Branch, RadialEigensystem};
use crate::reports::config::RunConfig;

pub const SPECTRUM_HEADER: &str = "k,m,c,parity,N,gamma,mu_re,mu_im,chi,lower_bound,upper_bound,margin";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub k: usize,
    pub m: usize,
    pub c: f64,
    pub parity: Parity,
    /// Radial index; the combined index is 2N + parity.
    pub n: usize,
    pub gamma: f64,
    pub mu_re: f64,
    pub mu_im: f64,
    pub chi: f64,
    /// Bounds on |μ|²; `None` where the index gate is closed.
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub margin: Option<f64>,
    pub status: BoundStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub convention: BoundConvention,
    pub rows: Vec<SpectrumRow>,
}

/// Combined indices n requested by the config, in order.
fn requested_indices(cfg: &RunConfig) -> Vec<usize> {
    match &cfg.n {
        Some(list) => list.clone(),
        None => (0..=2 * cfg.nmax + 1).collect(),
    }
}

/// Eigenvalues γ, μ, χ and the decay bounds for every k in range and every requested n.
pub fn cmd_eigs(cfg: &RunConfig) -> Result<SpectrumTable> {
    cfg.validate()?;
    let indices = requested_indices(cfg);
    let top = indices.iter().copied().max().unwrap_or(0);
    let (c, m) = (cfg.c, cfg.m);
    let per_k: Vec<Vec<SpectrumRow>> = (cfg.kmin..=cfg.kmax)
        .into_par_iter()
        .map(|k| -> Result<Vec<SpectrumRow>> {
            let chis = chi_spectrum(k, m, c, top, default_basis_size(top, c))?;
            let even = RadialEigensystem::new(c, Branch::new(k, m, Parity::Even)?, cfg.qr)?;
            // the odd branch at k is the even radial problem at k + 1
            let odd = if indices.iter().any(|n| n % 2 == 1) {
                let base = RadialEigensystem::new(c, Branch::new(k + 1, m, Parity::Even)?, cfg.qr)?;
                Some(base.with_branch(Branch::new(k, m, Parity::Odd)?)?)
            } else {
                None
            };
            let mut reports = Vec::new();
            for (parity, sys) in [(Parity::Even, Some(&even)), (Parity::Odd, odd.as_ref())] {
                let Some(sys) = sys else {
                    reports.push(None);
                    continue;
                };
                let mu_sq: Vec<f64> = (0..sys.len()).map(|n| sys.mu(n).map(|z| z.norm_sqr())).collect::<Result<_>>()?;
                reports.push(Some(check_bounds(&mu_sq, &chis, k, m, c, parity, cfg.convention)?));
            }
            indices
                .iter()
                .map(|&n| {
                    let parity = Parity::of(n);
                    let radial = n / 2;
                    let sys = match parity {
                        Parity::Even => &even,
                        Parity::Odd => odd.as_ref().expect("built when odd indices are requested"),
                    };
                    let row = &reports[parity.offset()].as_ref().expect("report per built branch").rows[radial];
                    let mu = sys.mu(radial)?;
                    Ok(SpectrumRow {
                        k,
                        m,
                        c,
                        parity,
                        n: radial,
                        gamma: sys.gamma(radial)?,
                        mu_re: mu.re,
                        mu_im: mu.im,
                        chi: chis[n],
                        lower_bound: row.lower,
                        upper_bound: row.upper,
                        margin: row.margin,
                        status: row.status,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumTable {
        convention: cfg.convention,
        rows: per_k.into_iter().flatten().collect(),
    })
}

impl SpectrumTable {
    pub fn to_csv(&self) -> String {
        let cell = |v: Option<f64>| v.map_or_else(|| "inactive".to_string(), |x| format!("{x:e}"));
        let mut out = format!("{SPECTRUM_HEADER}\n");
        for r in &self.rows {
            let margin = match r.status {
                BoundStatus::Floor => "floor".to_string(),
                _ => cell(r.margin),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:e},{:e},{:e},{:e},{},{},{}",
                r.k,
                r.m,
                r.c,
                r.parity,
                r.n,
                r.gamma,
                r.mu_re,
                r.mu_im,
                r.chi,
                cell(r.lower_bound),
                cell(r.upper_bound),
                margin
            );
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &SpectrumRow> {
        self.rows.iter().filter(|r| r.status == BoundStatus::Fail)
    }
}
