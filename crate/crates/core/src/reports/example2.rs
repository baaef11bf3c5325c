//! F = g(r) + h(r) θ e1 and its reconstruction from the first few CPSWFs.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expansion::basis::TermOrdering;
use crate::expansion::cpswf::cpswf_basis;
use crate::expansion::examples::example2;
use crate::expansion::grid::{l2_error, PolarGrid};
use crate::reports::config::RunConfig;

/// Radii i/20 and angles 2πj/36 of the output grid.
pub const SAMPLE_RADII: usize = 21;
pub const SAMPLE_ANGLES: usize = 36;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub r: f64,
    pub theta: f64,
    pub f_scalar: f64,
    pub f_e1: f64,
    pub rec_scalar: f64,
    pub rec_e1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example2Report {
    pub c: f64,
    pub terms: usize,
    pub q_r: usize,
    pub q_theta: usize,
    pub index_set: Vec<String>,
    pub l2_error: f64,
    pub norm_f: f64,
    /// Largest e2 / e12 / imaginary part of the reconstruction on the sample grid.
    pub off_components: f64,
    pub samples: Vec<FieldSample>,
}

pub fn cmd_example2(cfg: &RunConfig) -> Result<Example2Report> {
    cfg.validate()?;
    let terms = cfg.terms[0];
    let grid = PolarGrid::new(cfg.qr, cfg.qtheta)?;
    let basis = cpswf_basis(cfg.c, cfg.nmax, cfg.kmax, &grid)?;
    let f = example2(cfg.c);
    let sampled = f.sample(&grid);
    let coeffs = basis.expand(&sampled)?;
    let sel = coeffs.first_terms(terms, TermOrdering::ActiveBlocks);
    let err = l2_error(&grid, &sampled, &basis.reconstruct(&sel)?);
    let mut samples = Vec::with_capacity(SAMPLE_RADII * SAMPLE_ANGLES);
    let mut off = 0.0f64;
    for i in 0..SAMPLE_RADII {
        let r = i as f64 / (SAMPLE_RADII - 1) as f64;
        for j in 0..SAMPLE_ANGLES {
            let theta = 2.0 * PI * j as f64 / SAMPLE_ANGLES as f64;
            let v = f.eval(r, theta);
            let rec = basis.eval_partial_sum(&sel, r, theta)?;
            off = off
                .max(rec.0[2].norm())
                .max(rec.0[3].norm())
                .max(rec.0[0].im.abs())
                .max(rec.0[1].im.abs());
            samples.push(FieldSample {
                r,
                theta,
                f_scalar: v.0[0].re,
                f_e1: v.0[1].re,
                rec_scalar: rec.0[0].re,
                rec_e1: rec.0[1].re,
            });
        }
    }
    Ok(Example2Report {
        c: cfg.c,
        terms,
        q_r: cfg.qr,
        q_theta: cfg.qtheta,
        index_set: sel.iter().map(|e| coeffs.label(e)).collect(),
        l2_error: err,
        norm_f: coeffs.norm_sq.sqrt(),
        off_components: off,
        samples,
    })
}

impl Example2Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,theta,f_scalar,f_e1,rec_scalar,rec_e1\n");
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{:e},{:e},{:e},{:e},{:e},{:e}",
                s.r, s.theta, s.f_scalar, s.f_e1, s.rec_scalar, s.rec_e1
            );
        }
        out
    }

    pub fn relative_error(&self) -> f64 {
        self.l2_error / self.norm_f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::examples::example2_scalar;
    use crate::reports::config::Command;

    #[test]
    fn samples_and_error() {
        let mut cfg = RunConfig::defaults(Command::Example2);
        cfg.qr = 64;
        cfg.qtheta = 64;
        cfg.nmax = 4;
        cfg.kmax = 4;
        let rep = cmd_example2(&cfg).unwrap();
        assert_eq!(rep.index_set.len(), 5);
        assert_eq!(rep.samples.len(), SAMPLE_RADII * SAMPLE_ANGLES);
        for s in &rep.samples {
            assert!((s.f_scalar - example2_scalar(1.0, s.r)).abs() < 1e-15);
            if s.theta == 0.0 {
                assert_eq!(s.f_e1, 0.0);
            }
        }
        assert!(rep.relative_error() < 1.0 && rep.l2_error > 0.0);
        assert_eq!(rep.to_csv().lines().count(), 1 + rep.samples.len());
    }
}
