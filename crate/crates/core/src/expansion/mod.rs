//! Expansion of Clifford-valued functions on the unit disk in CPSWFs and in
//! the Fourier–Bessel basis, with the truncation theory around them.

pub mod basis;
pub mod c2;
pub mod cpswf;
pub mod examples;
pub mod fourier_bessel;
pub mod fourier_check;
pub mod grid;
pub mod report;
pub mod theory;

pub use basis::{AngularFactor, BasisKind, Coefficient, ExpansionCoefficients, SeparableBasis, TermOrdering};
pub use c2::C2;
pub use cpswf::{cpswf_basis, cpswf_expand};
pub use examples::{example1, example2, AngularReading};
pub use fourier_bessel::{fourier_bessel_basis, fourier_bessel_expand};
pub use grid::{disk_inner_product, l2_error, l2_norm, DiskFunction, PolarGrid, SampledField};
pub use fourier_check::{fourier_transform_check, FourierCheck};
pub use report::{ApproximationReport, ApproximationRow};
pub use theory::{sup_norm_ratio, truncation_bound, SUP_NORM_CONSTANT_C1, TRUNCATION_CONSTANT_C1};
