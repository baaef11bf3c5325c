//! Errors of the first T CPSWFs against the first T Fourier–Bessel functions.

use crate::error::Result;
use crate::expansion::basis::TermOrdering;
use crate::expansion::cpswf::cpswf_basis;
use crate::expansion::examples::example1;
use crate::expansion::fourier_bessel::fourier_bessel_basis;
use crate::expansion::grid::PolarGrid;
use crate::expansion::report::ApproximationReport;
use crate::expansion::theory::TRUNCATION_CONSTANT_C1;
use crate::reports::config::RunConfig;

/// The truncation constant is only known at the calibrated bandwidth.
pub fn known_truncation_constant(c: f64) -> Option<f64> {
    (c == 1.0).then_some(TRUNCATION_CONSTANT_C1)
}

/// Example 1 under the configured angular reading, for each T in `terms`.
pub fn cmd_table1(cfg: &RunConfig) -> Result<ApproximationReport> {
    cfg.validate()?;
    let grid = PolarGrid::new(cfg.qr, cfg.qtheta)?;
    let cb = cpswf_basis(cfg.c, cfg.nmax, cfg.kmax, &grid)?;
    let fb = fourier_bessel_basis(cfg.fb_terms, cfg.kmax, &grid)?;
    let f = example1(cfg.angular);
    ApproximationReport::build(
        &[&cb, &fb],
        &f.sample(&grid),
        format!("{} ({} reading)", f.note, cfg.angular),
        &cfg.terms,
        TermOrdering::ActiveBlocks,
        known_truncation_constant(cfg.c),
    )
}
