//! Scalar special functions and quadrature.

pub mod bessel;
pub mod jacobi;
pub mod quadrature;

pub use bessel::{bessel_j, bessel_j_over_power, bessel_j_zero, bessel_j_zeros};
pub use jacobi::{jacobi_all, jacobi_deriv, jacobi_deriv_k, jacobi_eval};
pub use quadrature::{gauss_legendre, Barycentric, QuadratureRule};
