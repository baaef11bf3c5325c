//! The two test functions of the numerical experiments.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};
use crate::expansion::c2::C2;
use crate::expansion::grid::DiskFunction;
use crate::special::bessel::bessel_j;

/// Readings of the angular factor of e^{-r²}·cos(4πθ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngularReading {
    /// cos(4θ): the only 2π-periodic integer harmonic reading.
    Cos4,
    /// cos(4πθ) taken literally, θ ∈ [0, 2π).
    Cos4pi,
    /// The angular factor dropped: e^{-r²} alone.
    Radial,
}

impl AngularReading {
    pub fn as_str(self) -> &'static str {
        match self {
            AngularReading::Cos4 => "cos4",
            AngularReading::Cos4pi => "cos4pi",
            AngularReading::Radial => "radial",
        }
    }
}

impl fmt::Display for AngularReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AngularReading {
    type Err = CpswfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cos4" => Ok(AngularReading::Cos4),
            "cos4pi" => Ok(AngularReading::Cos4pi),
            "radial" => Ok(AngularReading::Radial),
            _ => Err(CpswfError::InvalidParameter(format!(
                "unknown angular reading '{s}' (expected cos4, cos4pi or radial)"
            ))),
        }
    }
}

/// f(r, θ) = e^{-r²} times the chosen angular factor.
pub fn example1(reading: AngularReading) -> DiskFunction {
    DiskFunction::new(format!("exp(-r^2) [{reading}]"), move |r, t| {
        let ang = match reading {
            AngularReading::Cos4 => (4.0 * t).cos(),
            AngularReading::Cos4pi => (4.0 * std::f64::consts::PI * t).cos(),
            AngularReading::Radial => 1.0,
        };
        C2::real((-r * r).exp() * ang)
    })
}

/// g(r) = J_0(cr)/(1+r²).
pub fn example2_scalar(c: f64, r: f64) -> f64 {
    bessel_j(0.0, c * r).expect("order 0 is valid") / (1.0 + r * r)
}

/// h(r) = J_1(cr)/(1+r²).
pub fn example2_vector(c: f64, r: f64) -> f64 {
    bessel_j(1.0, c * r).expect("order 1 is valid") / (1.0 + r * r)
}

/// F(r, θ) = g(r) + h(r) θ e1 with θ ∈ [0, 2π).
pub fn example2(c: f64) -> DiskFunction {
    DiskFunction::new(format!("J0(cr)/(1+r^2) + J1(cr)/(1+r^2) theta e1, c = {c}"), move |r, t| {
        let theta = t.rem_euclid(2.0 * std::f64::consts::PI);
        let mut v = C2::real(example2_scalar(c, r));
        v.0[1].re = example2_vector(c, r) * theta;
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example2_structure() {
        let f = example2(1.0);
        let v = f.eval(0.5, 0.0);
        assert_eq!(v.0[1].re, 0.0);
        assert!((v.0[0].re - example2_scalar(1.0, 0.5)).abs() < 1e-16);
        for t in [0.3, 2.0, 4.0] {
            assert!((f.eval(0.7, t).0[0].re - example2_scalar(1.0, 0.7)).abs() < 1e-16);
        }
        assert_eq!("cos4".parse::<AngularReading>().unwrap(), AngularReading::Cos4);
        assert!("cos5".parse::<AngularReading>().is_err());
    }
}
