//! Independent check of μ through the two-dimensional finite Fourier transform
//! G_c ψ(x) = ∫_{B(1)} e^{2πic⟨x,y⟩} ψ(y) dy.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{Multivector, VectorM};
use crate::error::{CpswfError, Result};
use crate::prolate::hankel::RadialEigensystem;

/// Angular points used by default.
pub const DEFAULT_Q_THETA: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub index: usize,
    pub mu_2d: Complex64,
    pub mu_radial: Complex64,
    /// max_p ‖G_cψ(x_p) − μ_2d ψ(x_p)‖ / max_p ‖ψ(x_p)‖.
    pub discrepancy: f64,
    /// ||μ_2d| − |μ_radial|| / |μ_radial|.
    pub magnitude_error: f64,
    /// |μ_2d/|μ_2d| − μ_radial/|μ_radial||.
    pub phase_error: f64,
}

impl CrossCheck {
    pub fn within(&self, tol: f64) -> bool {
        self.magnitude_error <= tol && self.phase_error <= tol && self.discrepancy <= tol
    }
}

/// Sixteen fixed probes spread over the open disk.
pub fn probe_points() -> Vec<VectorM> {
    let radii = [0.15, 0.4, 0.65, 0.9];
    let angles = [0.3, 1.9, 3.5, 5.1];
    radii
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| {
            angles.iter().map(move |&a| {
                let t = a + 0.2 * i as f64;
                VectorM::new(vec![r * t.cos(), r * t.sin()])
            })
        })
        .collect()
}

/// Evaluate G_c ψ_N at probes by the tensor rule (system radial nodes ×
/// `q_theta` trapezoid angles) and fit μ by least squares.
pub fn cross_check_finite_fourier(sys: &RadialEigensystem, n: usize, q_theta: usize) -> Result<CrossCheck> {
    let branch = sys
        .branch
        .ok_or_else(|| CpswfError::InvalidParameter("cross-check needs a CPSWF branch".into()))?;
    if branch.m != 2 {
        return Err(CpswfError::UnsupportedDimension(branch.m));
    }
    let band = 2.0 * PI * sys.c;
    if band > q_theta as f64 / 4.0 {
        return Err(CpswfError::UnderResolved {
            what: "finite Fourier cross-check (angular rule)".into(),
            drift: band,
            tol: q_theta as f64 / 4.0,
        });
    }
    let profile = sys.profile_nodes(n)?.to_vec();
    let dtheta = 2.0 * PI / q_theta as f64;
    let mut samples: Vec<(f64, f64, f64, Multivector)> = Vec::with_capacity(sys.rule.len() * q_theta);
    for ((&r, &w), &p) in sys.rule.nodes.iter().zip(&sys.rule.weights).zip(&profile) {
        for j in 0..q_theta {
            let t = j as f64 * dtheta;
            let (y1, y2) = (r * t.cos(), r * t.sin());
            let psi = sys.assemble_field(p, &VectorM::new(vec![y1, y2]))?;
            samples.push((y1, y2, w * r * dtheta, psi));
        }
    }

    let probes = probe_points();
    let mut transformed = Vec::with_capacity(probes.len());
    let mut direct = Vec::with_capacity(probes.len());
    for x in &probes {
        let (x1, x2) = (x.components()[0], x.components()[1]);
        let mut acc = Multivector::zero(2);
        for (y1, y2, wt, psi) in &samples {
            let phase = Complex64::from_polar(*wt, band * (x1 * y1 + x2 * y2));
            acc.axpy(phase, psi);
        }
        transformed.push(acc);
        direct.push(sys.field(n, x)?);
    }

    // μ = Σ⟨ψ, Gψ⟩ / Σ‖ψ‖²
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (g, p) in transformed.iter().zip(&direct) {
        num += p.inner_product(g)?;
        den += p.norm_sqr();
    }
    if den == 0.0 {
        return Err(CpswfError::InvalidParameter("ψ vanishes at every probe".into()));
    }
    let mu_2d = num / den;
    let scale = direct.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let discrepancy = transformed
        .iter()
        .zip(&direct)
        .map(|(g, p)| (g - &p.scale(mu_2d)).norm())
        .fold(0.0, f64::max)
        / scale;
    let mu_radial = sys.mu(n)?;
    let magnitude_error = (mu_2d.norm() - mu_radial.norm()).abs() / mu_radial.norm();
    let phase_error = (mu_2d / mu_2d.norm() - mu_radial / mu_radial.norm()).norm();
    Ok(CrossCheck {
        index: n,
        mu_2d,
        mu_radial,
        discrepancy,
        magnitude_error,
        phase_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenics::Parity;
    use crate::prolate::hankel::Branch;

    #[test]
    fn radial_and_planar_mu_agree() {
        for k in 0..3 {
            for parity in [Parity::Even, Parity::Odd] {
                let sys = RadialEigensystem::new(1.0, Branch::new(k, 2, parity).unwrap(), 64).unwrap();
                for n in 0..3 {
                    let cc = cross_check_finite_fourier(&sys, n, DEFAULT_Q_THETA).unwrap();
                    assert!(cc.within(1e-6), "k={k} {parity} N={n}: {cc:?}");
                }
            }
        }
    }

    #[test]
    fn phase_follows_degree() {
        // μ ∝ i^{k'}: k' = 1 makes μ purely imaginary with positive part times sign(γ)
        let sys = RadialEigensystem::new(1.0, Branch::new(1, 2, Parity::Even).unwrap(), 64).unwrap();
        let cc = cross_check_finite_fourier(&sys, 0, DEFAULT_Q_THETA).unwrap();
        assert!(cc.mu_2d.re.abs() < 1e-8 && cc.mu_2d.im > 0.0);
    }

    #[test]
    fn under_resolution_is_reported() {
        let sys = RadialEigensystem::new(10.0, Branch::new(0, 2, Parity::Even).unwrap(), 64).unwrap();
        assert!(matches!(
            cross_check_finite_fourier(&sys, 0, 64),
            Err(CpswfError::UnderResolved { .. })
        ));
    }
}
