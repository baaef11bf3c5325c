//! Shared fixtures for the benchmarks.

use cpswf_core::expansion::grid::PolarGrid;

/// Bandwidths spanning the easy, figure and hard regimes.
pub const BANDWIDTHS: [f64; 3] = [1.0, 4.2, 10.0];

/// The grid the approximation table runs on, at a reduced angular order.
pub fn table_grid() -> PolarGrid {
    PolarGrid::new(128, 256).expect("valid grid")
}
