//! Radial prolate theory: the finite Hankel transform, the commuting
//! differential operator and the concentration bounds.

pub mod bounds;
pub mod chi;
pub mod crosscheck;
pub mod hankel;

pub use bounds::{check_bounds, BoundConvention, BoundReport, BoundStatus, ConventionVerdict};
pub use crosscheck::{cross_check_finite_fourier, CrossCheck};
pub use chi::{branch_alpha, chi_at_zero, chi_spectrum, default_basis_size, GalerkinSystem};
pub use hankel::{
    assemble_nystrom, full_cpswf_eval, gamma_to_mu, hankel_eigenvalues, hankel_eigs, radial_cpswf_eval, spectral_order,
    Branch, HankelOperator, RadialEigensystem, DEFAULT_QR, NUMERICAL_ZERO,
};
