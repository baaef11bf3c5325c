//! Fourier transform of a CPSWF, tested in weak form.
//!
//! The band-limited extension Ψ of ψ_N decays only like |x|^{-1/2}, so its
//! transform exists as a distribution. Both sides are therefore paired with
//! a Gaussian of width s: with ĥ(x) = e^{-2π²s²|x|²},
//!
//!   ∫ Ψ(x) ĥ(x) e^{-2πi⟨x,ξ₀⟩} dx  =  ∫_{B(c)} Φ(ξ) h(ξ₀ − ξ) dξ,
//!   Φ(ξ) = ψ(ξ/c) / (c^m μ),
//!
//! where μ is the e^{+2πic⟨x,y⟩} eigenvalue. Equivalently Φ = (−1)^{k'} ψ(ξ/c)/(c^m μ₋)
//! with μ₋ = (−1)^{k'} μ the e^{−2πic⟨x,y⟩} eigenvalue and (−1)^{k'} the parity of ψ,
//! k' = k (even branch), k + 1 (odd branch).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};
use crate::expansion::basis::AngularFactor;
use crate::expansion::c2::C2;
use crate::prolate::hankel::RadialEigensystem;
use crate::special::quadrature::gauss_legendre;

/// Width s of the Gaussian test functions.
pub const MOLLIFIER_WIDTH: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierCheck {
    pub index: usize,
    /// max ‖LHS − RHS‖ / max ‖RHS‖ over probes inside B(c).
    pub inside_rel: f64,
    /// max ‖LHS‖ over probes outside B(c + 6s).
    pub outside_abs: f64,
    /// Same as `inside_rel` with the factor (−1)^k/(c^m μ), μ the e^{+} eigenvalue.
    /// Agrees with `inside_rel` exactly when k' is even.
    pub literal_mu_plus_rel: f64,
    /// (−1)^k/(c^m μ₋), μ₋ the e^{−} eigenvalue. Agrees with `inside_rel` on the even branch.
    pub literal_mu_minus_rel: f64,
}

/// Probes inside B(c) and outside B(c + 6s).
pub fn default_probes(c: f64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
    let polar = |rho: f64, a: f64| [rho * a.cos(), rho * a.sin()];
    let inside = [0.1, 0.35, 0.6, 0.85]
        .iter()
        .flat_map(|&f| [0.4, 2.2, 4.1].map(|a| polar(f * c, a + f)))
        .collect();
    let outside = [c + 6.0 * MOLLIFIER_WIDTH, c + 0.9, c + 1.5]
        .iter()
        .flat_map(|&rho| [0.9, 3.0, 5.2].map(|a| polar(rho, a)))
        .collect();
    (inside, outside)
}

struct PolarRule {
    points: Vec<(f64, f64, f64)>, // (x1, x2, weight)
    angular_index: Vec<usize>,
    radii: Vec<f64>,
    thetas: Vec<f64>,
}

fn polar_rule(radius: f64, q_r: usize, q_theta: usize) -> Result<PolarRule> {
    let rule = gauss_legendre(q_r, 0.0, radius)?;
    let dt = 2.0 * PI / q_theta as f64;
    let thetas: Vec<f64> = (0..q_theta).map(|j| j as f64 * dt).collect();
    let mut points = Vec::with_capacity(q_r * q_theta);
    let mut angular_index = Vec::with_capacity(q_r * q_theta);
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        for (j, &t) in thetas.iter().enumerate() {
            points.push((r * t.cos(), r * t.sin(), w * r * dt));
            angular_index.push(j);
        }
    }
    Ok(PolarRule {
        points,
        angular_index,
        radii: rule.nodes,
        thetas,
    })
}

/// Deviation of the transform of ψ_N from the scaled, truncated ψ_N.
pub fn fourier_transform_check(sys: &RadialEigensystem, n: usize, inside: &[[f64; 2]], outside: &[[f64; 2]]) -> Result<FourierCheck> {
    let b = sys
        .branch
        .ok_or_else(|| CpswfError::InvalidParameter("Fourier check needs a CPSWF branch".into()))?;
    if b.m != 2 {
        return Err(CpswfError::UnsupportedDimension(b.m));
    }
    let c = sys.c;
    let s = MOLLIFIER_WIDTH;
    let kp = (b.k + b.parity.offset()) as i32;
    let angular = AngularFactor::Monogenic { k: b.k, parity: b.parity };

    // Left side on a disk large enough that ĥ < 1e-17 beyond it.
    let big_r = (40.0 / (2.0 * PI * PI * s * s)).sqrt();
    let lhs_rule = polar_rule(big_r, 384, 512)?;
    let radial_ext: Vec<f64> = lhs_rule
        .radii
        .iter()
        .map(|&r| Ok(r.powi(kp) * sys.extension(n, r)? * (-2.0 * PI * PI * s * s * r * r).exp()))
        .collect::<Result<_>>()?;
    let ang_lhs: Vec<C2> = lhs_rule.thetas.iter().map(|&t| angular.eval(t)).collect();
    let q_theta = lhs_rule.thetas.len();
    let lhs_values: Vec<C2> = (0..lhs_rule.points.len())
        .map(|p| ang_lhs[lhs_rule.angular_index[p]].scale_real(radial_ext[p / q_theta] * lhs_rule.points[p].2))
        .collect();
    let lhs = |xi: &[f64; 2]| {
        let mut acc = C2::ZERO;
        for (v, &(x1, x2, _)) in lhs_values.iter().zip(&lhs_rule.points) {
            acc += v.scale(Complex64::from_polar(1.0, -2.0 * PI * (x1 * xi[0] + x2 * xi[1])));
        }
        acc
    };

    // Right side: Φ(ξ) = ψ(ξ/c)/(c^m μ) on B(c), blurred by h.
    let rhs_rule = polar_rule(c, 256, 512)?;
    let radial_in: Vec<f64> = rhs_rule
        .radii
        .iter()
        .map(|&rho| {
            let r = rho / c;
            Ok(r.powi(kp) * sys.radial_eval(n, r)?)
        })
        .collect::<Result<_>>()?;
    let ang_rhs: Vec<C2> = rhs_rule.thetas.iter().map(|&t| angular.eval(t)).collect();
    let q_theta = rhs_rule.thetas.len();
    let psi_scaled: Vec<C2> = (0..rhs_rule.points.len())
        .map(|p| ang_rhs[rhs_rule.angular_index[p]].scale_real(radial_in[p / q_theta] * rhs_rule.points[p].2))
        .collect();
    let norm_h = 1.0 / (2.0 * PI * s * s);
    let blurred_psi = |xi: &[f64; 2]| {
        let mut acc = C2::ZERO;
        for (v, &(x1, x2, _)) in psi_scaled.iter().zip(&rhs_rule.points) {
            let d2 = (xi[0] - x1).powi(2) + (xi[1] - x2).powi(2);
            acc += v.scale_real(norm_h * (-d2 / (2.0 * s * s)).exp());
        }
        acc
    };

    let mu = sys.mu(n)?;
    let cm = c.powi(b.m as i32);
    let factor = 1.0 / (cm * mu);
    let sign = |p: usize| if p % 2 == 0 { 1.0 } else { -1.0 };
    let mu_minus = mu * sign(kp as usize);
    let lit_plus = sign(b.k) / (cm * mu);
    let lit_minus = sign(b.k) / (cm * mu_minus);

    let mut dev = 0.0f64;
    let mut dev_plus = 0.0f64;
    let mut dev_minus = 0.0f64;
    let mut scale = 0.0f64;
    for xi in inside {
        let l = lhs(xi);
        let bp = blurred_psi(xi);
        let r = bp.scale(factor);
        dev = dev.max((l - r).norm());
        dev_plus = dev_plus.max((l - bp.scale(lit_plus)).norm());
        dev_minus = dev_minus.max((l - bp.scale(lit_minus)).norm());
        scale = scale.max(r.norm());
    }
    let outside_abs = outside.iter().map(|xi| lhs(xi).norm()).fold(0.0, f64::max);
    Ok(FourierCheck {
        index: n,
        inside_rel: dev / scale,
        outside_abs,
        literal_mu_plus_rel: dev_plus / scale,
        literal_mu_minus_rel: dev_minus / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenics::Parity;
    use crate::prolate::hankel::Branch;

    fn check(k: usize, parity: Parity, n: usize) -> FourierCheck {
        let sys = RadialEigensystem::new(1.0, Branch::new(k, 2, parity).unwrap(), 128).unwrap();
        let (inside, outside) = default_probes(1.0);
        fourier_transform_check(&sys, n, &inside, &outside).unwrap()
    }

    #[test]
    fn transform_is_scaled_and_truncated() {
        let fc = check(0, Parity::Even, 0);
        assert!(fc.inside_rel <= 1e-6, "{fc:?}");
        assert!(fc.outside_abs <= 1e-6, "{fc:?}");
        assert!(fc.literal_mu_plus_rel <= 1e-6 && fc.literal_mu_minus_rel <= 1e-6);
    }

    #[test]
    fn printed_sign_depends_on_the_reading_of_mu() {
        // even branch, odd k: right with μ₋, wrong with μ₊
        let fc = check(1, Parity::Even, 0);
        assert!(fc.inside_rel <= 1e-6, "{fc:?}");
        assert!(fc.literal_mu_minus_rel <= 1e-6, "{fc:?}");
        assert!(fc.literal_mu_plus_rel > 0.5, "{fc:?}");
        // odd branch, even k: the parity is −1, so the printed sign fails with μ₋
        let fc = check(0, Parity::Odd, 1);
        assert!(fc.inside_rel <= 1e-6, "{fc:?}");
        assert!(fc.literal_mu_minus_rel > 0.5, "{fc:?}");
    }
}
