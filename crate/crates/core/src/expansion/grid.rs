//! Polar quadrature on the unit disk and Clifford-valued disk functions.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::error::{CpswfError, Result};
use crate::expansion::c2::C2;
use crate::special::quadrature::{gauss_legendre, QuadratureRule};

/// Smallest quadrature order accepted on either axis.
pub const MIN_ORDER: usize = 32;

/// Relative tolerance of the quadrature-doubling check.
pub const DOUBLING_TOL: f64 = 1e-8;

/// Gauss–Legendre in r (with Jacobian r) × uniform trapezoid in θ.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    pub radial: QuadratureRule,
    pub q_theta: usize,
}

impl PolarGrid {
    pub fn new(q_r: usize, q_theta: usize) -> Result<Self> {
        Self::from_rule(gauss_legendre(q_r, 0.0, 1.0)?, q_theta)
    }

    pub fn from_rule(radial: QuadratureRule, q_theta: usize) -> Result<Self> {
        if radial.len() < MIN_ORDER || q_theta < MIN_ORDER {
            return Err(CpswfError::InvalidParameter(format!(
                "quadrature orders ({}, {q_theta}) must be >= {MIN_ORDER}",
                radial.len()
            )));
        }
        if radial.interval != (0.0, 1.0) {
            return Err(CpswfError::InvalidParameter("radial rule must live on (0, 1)".into()));
        }
        Ok(PolarGrid { radial, q_theta })
    }

    pub fn q_r(&self) -> usize {
        self.radial.len()
    }

    pub fn len(&self) -> usize {
        self.q_r() * self.q_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * PI / self.q_theta as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta()
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.q_theta).map(|j| self.theta(j)).collect()
    }

    /// Area weight w_i r_i Δθ of any point on radial ring i.
    pub fn ring_weight(&self, i: usize) -> f64 {
        self.radial.weights[i] * self.radial.nodes[i] * self.dtheta()
    }

    /// ∫ conj(f) g over the disk, full Clifford value.
    pub fn integrate_product(&self, f: &SampledField, g: &SampledField) -> C2 {
        let mut acc = C2::ZERO;
        for i in 0..self.q_r() {
            let mut ring = C2::ZERO;
            for j in 0..self.q_theta {
                let idx = i * self.q_theta + j;
                ring += f.values[idx].conj() * g.values[idx];
            }
            acc += ring.scale_real(self.ring_weight(i));
        }
        acc
    }

    pub fn norm_sqr(&self, f: &SampledField) -> f64 {
        (0..self.q_r())
            .map(|i| {
                let ring: f64 = f.values[i * self.q_theta..(i + 1) * self.q_theta]
                    .iter()
                    .map(C2::norm_sqr)
                    .sum();
                ring * self.ring_weight(i)
            })
            .sum()
    }
}

/// Samples of a disk function on a [`PolarGrid`], ring-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub q_r: usize,
    pub q_theta: usize,
    pub values: Vec<C2>,
}

impl SampledField {
    pub fn zeros(grid: &PolarGrid) -> Self {
        SampledField {
            q_r: grid.q_r(),
            q_theta: grid.q_theta,
            values: vec![C2::ZERO; grid.len()],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> C2 {
        self.values[i * self.q_theta + j]
    }

    pub fn sub(&self, other: &Self) -> Self {
        SampledField {
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a - *b).collect(),
            ..*self
        }
    }
}

type Evaluator = dyn Fn(f64, f64) -> C2 + Send + Sync;

/// A ℂ_2-valued function of (r, θ) on the closed unit disk.
#[derive(Clone)]
pub struct DiskFunction {
    eval: Arc<Evaluator>,
    pub note: String,
}

impl fmt::Debug for DiskFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiskFunction").field("note", &self.note).finish()
    }
}

impl DiskFunction {
    pub fn new<F>(note: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, f64) -> C2 + Send + Sync + 'static,
    {
        DiskFunction {
            eval: Arc::new(f),
            note: note.into(),
        }
    }

    pub fn from_multivector<F>(note: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, f64) -> Multivector + Send + Sync + 'static,
    {
        Self::new(note, move |r, t| {
            C2::from_multivector(&f(r, t)).expect("disk functions are planar")
        })
    }

    pub fn zero() -> Self {
        Self::new("zero", |_, _| C2::ZERO)
    }

    pub fn constant(value: C2) -> Self {
        Self::new("constant", move |_, _| value)
    }

    pub fn eval(&self, r: f64, theta: f64) -> C2 {
        (self.eval)(r, theta)
    }

    pub fn eval_multivector(&self, r: f64, theta: f64) -> Multivector {
        self.eval(r, theta).to_multivector()
    }

    pub fn sample(&self, grid: &PolarGrid) -> SampledField {
        let thetas = grid.thetas();
        let values = grid
            .radial
            .nodes
            .iter()
            .flat_map(|&r| thetas.iter().map(move |&t| (r, t)))
            .map(|(r, t)| self.eval(r, t))
            .collect();
        SampledField {
            q_r: grid.q_r(),
            q_theta: grid.q_theta,
            values,
        }
    }
}

/// Grade-0 part of ∫_{B(1)} conj(f) g, checked against a doubled grid.
pub fn disk_inner_product(f: &DiskFunction, g: &DiskFunction, q_r: usize, q_theta: usize) -> Result<Complex64> {
    let coarse = PolarGrid::new(q_r, q_theta)?;
    let fine = PolarGrid::new(2 * q_r, 2 * q_theta)?;
    let a = coarse.integrate_product(&f.sample(&coarse), &g.sample(&coarse)).scalar_part();
    let b = fine.integrate_product(&f.sample(&fine), &g.sample(&fine)).scalar_part();
    let scale = (coarse.norm_sqr(&f.sample(&coarse)) * coarse.norm_sqr(&g.sample(&coarse)))
        .sqrt()
        .max(f64::MIN_POSITIVE);
    let drift = (a - b).norm() / scale;
    if drift > DOUBLING_TOL {
        return Err(CpswfError::UnderResolved {
            what: "disk inner product".into(),
            drift,
            tol: DOUBLING_TOL,
        });
    }
    Ok(b)
}

/// ‖f‖ on the disk from samples.
pub fn l2_norm(grid: &PolarGrid, f: &SampledField) -> f64 {
    grid.norm_sqr(f).sqrt()
}

/// ‖f − g‖ on the disk from samples on a shared grid.
pub fn l2_error(grid: &PolarGrid, f: &SampledField, g: &SampledField) -> f64 {
    l2_norm(grid, &f.sub(g))
}
