//! Separable orthonormal bases g_n(r) A(θ) on the disk with ℂ_2 coefficients.
//!
//! Coefficients live in the right ℂ_2-module: a = ∫ conj(ψ) f and the partial
//! sum is Σ ψ a. Every basis here satisfies ∫ conj(ψ_i) ψ_j = δ_ij as a
//! Clifford number, so Parseval reads ‖f‖² = Σ |a|².

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};
use crate::expansion::c2::C2;
use crate::expansion::grid::{PolarGrid, SampledField};
use crate::monogenics::Parity;
use crate::prolate::hankel::RadialEigensystem;
use crate::special::bessel::bessel_j;

/// Blocks whose share of ‖f‖² is below this count as empty.
pub const ACTIVE_BLOCK_FRACTION: f64 = 1e-20;

const INV_SQRT_2PI: f64 = 0.398942280401432677939946059934;

/// Angular part of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngularFactor {
    /// Y_k(ω)/√(2π) for even parity, ω Y_k(ω)/√(2π) for odd.
    Monogenic { k: usize, parity: Parity },
    /// E_k(θ) = cos kθ + e12 sin kθ.
    Harmonic { k: i64 },
}

impl AngularFactor {
    pub fn eval(&self, theta: f64) -> C2 {
        match *self {
            AngularFactor::Monogenic { k, parity } => {
                // (cos θ - e12 sin θ)^k = E_{-k}; ω = e1 E_{-1}
                let kk = (k + parity.offset()) as f64;
                let rot = C2::rotor((kk * theta).cos(), -(kk * theta).sin()).scale_real(INV_SQRT_2PI);
                match parity {
                    Parity::Even => rot,
                    Parity::Odd => C2::E1 * rot,
                }
            }
            AngularFactor::Harmonic { k } => {
                let kt = k as f64 * theta;
                C2::rotor(kt.cos(), kt.sin())
            }
        }
    }
}

impl fmt::Display for AngularFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngularFactor::Monogenic { k, parity } => write!(f, "k={k} {parity}"),
            AngularFactor::Harmonic { k } => write!(f, "k={k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Cpswf,
    FourierBessel,
}

impl BasisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::Cpswf => "cpswf",
            BasisKind::FourierBessel => "fourier-bessel",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How off-grid radial values are produced.
#[derive(Debug, Clone)]
pub enum RadialSource {
    Cpswf(Arc<RadialEigensystem>),
    Bessel { order: f64, zeros: Vec<f64>, norms: Vec<f64> },
}

impl RadialSource {
    pub fn eval(&self, n: usize, r: f64) -> Result<f64> {
        match self {
            RadialSource::Cpswf(sys) => sys.profile(n, r),
            RadialSource::Bessel { order, zeros, norms } => {
                let z = zeros.get(n).ok_or(CpswfError::IndexOutOfSpectrum {
                    index: n,
                    len: zeros.len(),
                })?;
                if !(0.0..=1.0).contains(&r) {
                    return Err(CpswfError::Extrapolation(r));
                }
                Ok(bessel_j(*order, z * r)? / norms[n])
            }
        }
    }
}

/// One angular factor with its family of radial functions.
#[derive(Debug, Clone)]
pub struct BasisBlock {
    pub angular: AngularFactor,
    /// Radial function n sampled at the grid's radial nodes.
    pub node_values: Vec<Vec<f64>>,
    /// Ordering key per term (χ for CPSWFs, the Bessel zero for Fourier–Bessel).
    pub keys: Vec<f64>,
    pub radial: RadialSource,
}

impl BasisBlock {
    pub fn len(&self) -> usize {
        self.node_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_values.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SeparableBasis {
    pub kind: BasisKind,
    pub c: Option<f64>,
    pub grid: PolarGrid,
    pub blocks: Vec<BasisBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub block: usize,
    pub n: usize,
    pub key: f64,
    pub value: C2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    pub basis: BasisKind,
    pub c: Option<f64>,
    pub m: usize,
    pub blocks: Vec<AngularFactor>,
    pub entries: Vec<Coefficient>,
    /// ‖f‖² on the grid.
    pub norm_sq: f64,
}

/// Which terms count as "the first T".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermOrdering {
    /// Ascending key among blocks that carry energy of f.
    ActiveBlocks,
    /// Ascending key over every block.
    Global,
}

impl ExpansionCoefficients {
    pub fn get(&self, block: usize, n: usize) -> Option<C2> {
        self.entries.iter().find(|e| e.block == block && e.n == n).map(|e| e.value)
    }

    pub fn block_energy(&self, block: usize) -> f64 {
        self.entries.iter().filter(|e| e.block == block).map(|e| e.value.norm_sqr()).sum()
    }

    pub fn active_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.block_energy(b) > ACTIVE_BLOCK_FRACTION * self.norm_sq)
            .collect()
    }

    /// Entries sorted by key; ties broken by block, then n.
    pub fn ordered(&self, ordering: TermOrdering) -> Vec<Coefficient> {
        let active = self.active_blocks();
        let mut out: Vec<Coefficient> = self
            .entries
            .iter()
            .filter(|e| ordering == TermOrdering::Global || active.contains(&e.block))
            .copied()
            .collect();
        out.sort_by(|a, b| a.key.total_cmp(&b.key).then(a.block.cmp(&b.block)).then(a.n.cmp(&b.n)));
        out
    }

    pub fn first_terms(&self, terms: usize, ordering: TermOrdering) -> Vec<Coefficient> {
        self.ordered(ordering).into_iter().take(terms).collect()
    }

    /// Σ |a|² over a selection.
    pub fn energy(selection: &[Coefficient]) -> f64 {
        selection.iter().map(|e| e.value.norm_sqr()).sum()
    }

    /// Human-readable index of a term.
    pub fn label(&self, e: &Coefficient) -> String {
        format!("{} n={}", self.blocks[e.block], e.n)
    }
}

impl SeparableBasis {
    pub fn len(&self) -> usize {
        self.blocks.iter().map(BasisBlock::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn angular_table(&self, block: &BasisBlock) -> Vec<C2> {
        (0..self.grid.q_theta).map(|j| block.angular.eval(self.grid.theta(j))).collect()
    }

    /// a = ∫ conj(g_n A) f for every term.
    pub fn expand(&self, f: &SampledField) -> Result<ExpansionCoefficients> {
        let grid = &self.grid;
        if f.q_r != grid.q_r() || f.q_theta != grid.q_theta {
            return Err(CpswfError::DimensionMismatch {
                expected: grid.len(),
                got: f.values.len(),
            });
        }
        let mut entries = Vec::with_capacity(self.len());
        for (b, block) in self.blocks.iter().enumerate() {
            let conj_a: Vec<C2> = self.angular_table(block).iter().map(C2::conj).collect();
            // angular projection per ring, already weighted by w_i r_i Δθ
            let rings: Vec<C2> = (0..grid.q_r())
                .map(|i| {
                    let mut acc = C2::ZERO;
                    for (j, a) in conj_a.iter().enumerate() {
                        acc += *a * f.at(i, j);
                    }
                    acc.scale_real(grid.ring_weight(i))
                })
                .collect();
            for (n, g) in block.node_values.iter().enumerate() {
                let mut value = C2::ZERO;
                for (ring, gi) in rings.iter().zip(g) {
                    value += ring.scale_real(*gi);
                }
                entries.push(Coefficient {
                    block: b,
                    n,
                    key: block.keys[n],
                    value,
                });
            }
        }
        Ok(ExpansionCoefficients {
            basis: self.kind,
            c: self.c,
            m: 2,
            blocks: self.blocks.iter().map(|b| b.angular).collect(),
            entries,
            norm_sq: grid.norm_sqr(f),
        })
    }

    /// Σ g_n(r_i) A(θ_j) a_n over the selection, on the grid.
    pub fn reconstruct(&self, selection: &[Coefficient]) -> Result<SampledField> {
        let grid = &self.grid;
        let mut out = SampledField::zeros(grid);
        for (b, block) in self.blocks.iter().enumerate() {
            let terms: Vec<&Coefficient> = selection.iter().filter(|e| e.block == b).collect();
            if terms.is_empty() {
                continue;
            }
            let mut radial = vec![C2::ZERO; grid.q_r()];
            for e in &terms {
                let g = block.node_values.get(e.n).ok_or(CpswfError::IndexOutOfSpectrum {
                    index: e.n,
                    len: block.len(),
                })?;
                for (acc, gi) in radial.iter_mut().zip(g) {
                    *acc += e.value.scale_real(*gi);
                }
            }
            let ang = self.angular_table(block);
            for (i, rad) in radial.iter().enumerate() {
                for (j, a) in ang.iter().enumerate() {
                    out.values[i * grid.q_theta + j] += *a * *rad;
                }
            }
        }
        Ok(out)
    }

    /// The partial sum at an arbitrary point of the disk.
    pub fn eval_partial_sum(&self, selection: &[Coefficient], r: f64, theta: f64) -> Result<C2> {
        let mut acc = C2::ZERO;
        for e in selection {
            let block = self.blocks.get(e.block).ok_or(CpswfError::IndexOutOfSpectrum {
                index: e.block,
                len: self.blocks.len(),
            })?;
            let g = block.radial.eval(e.n, r)?;
            acc += (block.angular.eval(theta) * e.value).scale_real(g);
        }
        Ok(acc)
    }

    /// max |∫ conj(ψ_i) ψ_j − δ_ij| over all pairs, computed on the grid.
    pub fn orthonormality_defect(&self) -> f64 {
        let grid = &self.grid;
        let tables: Vec<Vec<C2>> = self.blocks.iter().map(|b| self.angular_table(b)).collect();
        let mut worst = 0.0f64;
        for (b1, blk1) in self.blocks.iter().enumerate() {
            for (b2, blk2) in self.blocks.iter().enumerate().skip(b1) {
                // ∫ conj(A1) A2 dθ, then radial overlaps
                let mut ang = C2::ZERO;
                for j in 0..grid.q_theta {
                    ang += tables[b1][j].conj() * tables[b2][j];
                }
                let ang = ang.scale_real(grid.dtheta());
                for (n1, g1) in blk1.node_values.iter().enumerate() {
                    for (n2, g2) in blk2.node_values.iter().enumerate() {
                        let rad: f64 = (0..grid.q_r())
                            .map(|i| grid.radial.weights[i] * grid.radial.nodes[i] * g1[i] * g2[i])
                            .sum();
                        let mut v = ang.scale_real(rad);
                        if b1 == b2 && n1 == n2 {
                            v = v - C2::ONE;
                        }
                        worst = worst.max(v.norm());
                    }
                }
            }
        }
        worst
    }
}

/// Full angular period of a separable factor, used to check normalization.
pub fn angular_norm_sqr(a: AngularFactor, q_theta: usize) -> f64 {
    let dt = 2.0 * PI / q_theta as f64;
    (0..q_theta).map(|j| a.eval(j as f64 * dt).norm_sqr()).sum::<f64>() * dt
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::VectorM;
    use crate::monogenics::monogenic_eval;

    #[test]
    fn monogenic_factor_matches_field_definition() {
        for k in 0..5 {
            for t in [0.0f64, 0.7, 2.9, 5.5] {
                let w = VectorM::new(vec![t.cos(), t.sin()]);
                let y = monogenic_eval(k, &w).unwrap();
                let even = AngularFactor::Monogenic { k, parity: Parity::Even }.eval(t);
                let want = y.scale_real(INV_SQRT_2PI);
                assert!((&even.to_multivector() - &want).max_abs() < 1e-14);
                let odd = AngularFactor::Monogenic { k, parity: Parity::Odd }.eval(t);
                let want = (&w.to_multivector() * &y).scale_real(INV_SQRT_2PI);
                assert!((&odd.to_multivector() - &want).max_abs() < 1e-14);
            }
        }
    }

    #[test]
    fn angular_factors_have_unit_norm() {
        let a = AngularFactor::Monogenic { k: 3, parity: Parity::Odd };
        assert!((angular_norm_sqr(a, 64) - 1.0).abs() < 1e-14);
        let h = AngularFactor::Harmonic { k: -2 };
        assert!((angular_norm_sqr(h, 64) - 2.0 * PI).abs() < 1e-13);
    }
}
