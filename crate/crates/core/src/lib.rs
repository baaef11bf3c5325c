pub mod clifford;
pub mod error;
pub mod expansion;
pub mod monogenics;
pub mod prolate;
pub mod reports;
pub mod special;

pub use clifford::{blade_product, Blade, Multivector, VectorM};
pub use error::{CpswfError, Result};
