//! Concentration bounds on |μ_N|² and the window for χ.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{CpswfError, Result};
use crate::monogenics::Parity;
use crate::prolate::chi::{branch_alpha, chi_at_zero, chi_at_zero_even};

/// |μ|² below this is treated as rounding noise and not checked.
pub const MU_SQ_FLOOR: f64 = 1e-14;

/// Relative slack granted to a bound check: ν itself is only known to a few
/// ulps, and in the plateau the lower bound rounds to exactly 1.
pub const BOUND_RTOL: f64 = 1e-12;

/// Which bandwidth enters the bound formulas.
///
/// The kernels carry 2πc, while the classical prolate estimates are written
/// for a kernel in c alone. `Raw` uses c as printed; `TwoPiC` substitutes
/// 2πc inside the bracket and the index gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundConvention {
    #[serde(rename = "raw")]
    Raw,
    #[serde(rename = "2pic")]
    TwoPiC,
}

impl BoundConvention {
    pub fn effective_c(self, c: f64) -> f64 {
        match self {
            BoundConvention::Raw => c,
            BoundConvention::TwoPiC => 2.0 * PI * c,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundConvention::Raw => "raw",
            BoundConvention::TwoPiC => "2pic",
        }
    }
}

impl fmt::Display for BoundConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BoundConvention {
    type Err = CpswfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(BoundConvention::Raw),
            "2pic" => Ok(BoundConvention::TwoPiC),
            _ => Err(CpswfError::InvalidParameter(format!("unknown convention '{s}'"))),
        }
    }
}

/// Upper bound on ν = c^m |μ_N|², active when N > e c'/4:
/// ν ≤ (e c' / (4N + 2α + 5))^{2N + α + 1}, with α = k + m/2 - 1 + parity.
pub fn upper_bound_nu(n: usize, alpha: f64, c: f64, conv: BoundConvention) -> Option<f64> {
    let ce = conv.effective_c(c);
    let nf = n as f64;
    if nf <= std::f64::consts::E * ce / 4.0 {
        return None;
    }
    let base = std::f64::consts::E * ce / (4.0 * nf + 2.0 * alpha + 5.0);
    Some(base.powf(2.0 * nf + alpha + 1.0))
}

/// Lower bound on ν, active when N < c'/2 and the right side is positive:
/// ν ≥ 1 - 10 c'^{α + 2N} / (N! e^{c'}).
pub fn lower_bound_nu(n: usize, alpha: f64, c: f64, conv: BoundConvention) -> Option<f64> {
    let raw = lower_bound_nu_raw(n, alpha, c, conv)?;
    (raw > 0.0).then_some(raw)
}

/// The lower-bound expression whenever its index gate is open, even if negative.
pub fn lower_bound_nu_raw(n: usize, alpha: f64, c: f64, conv: BoundConvention) -> Option<f64> {
    let ce = conv.effective_c(c);
    let nf = n as f64;
    if nf >= ce / 2.0 {
        return None;
    }
    let log_term = 10f64.ln() + (alpha + 2.0 * nf) * ce.ln() - ln_gamma(nf + 1.0) - ce;
    Some(1.0 - log_term.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStatus {
    /// At least one bound applies and all applicable bounds hold.
    Pass,
    Fail,
    /// No bound applies at this index.
    Inactive,
    /// |μ|² is below the double-precision floor.
    Floor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub index: usize,
    pub mu_sq: f64,
    /// Bounds in |μ|² units.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// Smallest relative slack over the active bounds; negative on failure.
    pub margin: Option<f64>,
    pub status: BoundStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiRow {
    pub n: usize,
    pub chi: f64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: usize,
    pub m: usize,
    pub c: f64,
    pub parity: Parity,
    pub convention: BoundConvention,
    pub rows: Vec<BoundRow>,
    /// Window n(n+2k+m) < χ_n < n(n+2k+m) + 8π²c², checked for even n.
    pub chi_window: Vec<ChiRow>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != BoundStatus::Fail) && self.chi_window.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| r.status == BoundStatus::Fail)
    }

    pub fn active_count(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.status, BoundStatus::Pass | BoundStatus::Fail))
            .count()
    }

    /// Smallest margin over all checked indices.
    pub fn worst_margin(&self) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.status != BoundStatus::Floor)
            .filter_map(|r| r.margin)
            .reduce(f64::min)
    }

    /// Turn the first violation into an error naming the index and margin.
    pub fn into_result(self) -> Result<Self> {
        if let Some(row) = self.failures().next() {
            return Err(CpswfError::BoundViolated {
                index: row.index,
                detail: format!(
                    "|mu|^2 = {:e} outside [{}, {}] (k={}, m={}, c={}, {}, {} convention)",
                    row.mu_sq,
                    fmt_opt(row.lower),
                    fmt_opt(row.upper),
                    self.k,
                    self.m,
                    self.c,
                    self.parity,
                    self.convention
                ),
                margin: row.margin.unwrap_or(f64::NAN),
            });
        }
        if let Some(row) = self.chi_window.iter().find(|r| !r.holds) {
            return Err(CpswfError::BoundViolated {
                index: row.n,
                detail: format!("chi = {} outside ({}, {})", row.chi, row.lower, row.upper),
                margin: (row.chi - row.lower).min(row.upper - row.chi),
            });
        }
        Ok(self)
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "inactive".to_string(), |x| format!("{x:e}"))
}

/// Check the decay bounds for one branch. `mu_sq[N] = |μ_N|²`; `chis[n]` is
/// χ_n for n = 0, 1, … (both parities interleaved, as from `chi_spectrum`).
pub fn check_bounds(
    mu_sq: &[f64],
    chis: &[f64],
    k: usize,
    m: usize,
    c: f64,
    parity: Parity,
    convention: BoundConvention,
) -> Result<BoundReport> {
    if !(c > 0.0) {
        return Err(CpswfError::InvalidParameter(format!("bandwidth c = {c} must be positive")));
    }
    let alpha = branch_alpha(k, m, parity);
    let cm = c.powi(m as i32);
    let rows = mu_sq
        .iter()
        .enumerate()
        .map(|(n, &mu2)| {
            let lower = lower_bound_nu(n, alpha, c, convention).map(|b| b / cm);
            let upper = upper_bound_nu(n, alpha, c, convention).map(|b| b / cm);
            let slacks: Vec<f64> = upper
                .map(|u| 1.0 - mu2 / u)
                .into_iter()
                .chain(lower.map(|l| mu2 / l - 1.0))
                .collect();
            let margin = slacks.iter().copied().reduce(f64::min);
            let status = if mu2 < MU_SQ_FLOOR {
                BoundStatus::Floor
            } else {
                match margin {
                    None => BoundStatus::Inactive,
                    Some(s) if s >= -BOUND_RTOL => BoundStatus::Pass,
                    Some(_) => BoundStatus::Fail,
                }
            };
            BoundRow {
                index: n,
                mu_sq: mu2,
                lower,
                upper,
                margin,
                status,
            }
        })
        .collect();
    let chi_window = chi_window_rows(chis, k, m, c);
    Ok(BoundReport {
        k,
        m,
        c,
        parity,
        convention,
        rows,
        chi_window,
    })
}

/// Window rows for even n.
pub fn chi_window_rows(chis: &[f64], k: usize, m: usize, c: f64) -> Vec<ChiRow> {
    chis.iter()
        .enumerate()
        .step_by(2)
        .map(|(n, &chi)| {
            let lower = chi_at_zero_even(n, k, m);
            let upper = lower + 8.0 * PI * PI * c * c;
            ChiRow {
                n,
                chi,
                lower,
                upper,
                holds: lower < chi && chi < upper,
            }
        })
        .collect()
}

/// For odd n: the same shape of window anchored at the odd c = 0 value.
pub fn chi_window_odd_rows(chis: &[f64], k: usize, m: usize, c: f64) -> Vec<ChiRow> {
    chis.iter()
        .enumerate()
        .skip(1)
        .step_by(2)
        .map(|(n, &chi)| {
            let lower = chi_at_zero(n, k, m);
            let upper = lower + 8.0 * PI * PI * c * c;
            ChiRow {
                n,
                chi,
                lower,
                upper,
                holds: lower < chi && chi < upper,
            }
        })
        .collect()
}

/// Outcome of checking a family of branches under both conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionVerdict {
    pub raw_failures: usize,
    pub raw_checked: usize,
    pub two_pi_c_failures: usize,
    pub two_pi_c_checked: usize,
    /// The convention the spectrum satisfies, if any.
    pub holds: Option<BoundConvention>,
}

impl ConventionVerdict {
    /// Tally per-convention reports; raw is preferred when both hold.
    pub fn from_reports(raw: &[BoundReport], two_pi_c: &[BoundReport]) -> Self {
        let tally = |rs: &[BoundReport]| {
            (
                rs.iter().map(|r| r.failures().count()).sum::<usize>(),
                rs.iter().map(|r| r.active_count()).sum::<usize>(),
            )
        };
        let (rf, rc) = tally(raw);
        let (tf, tc) = tally(two_pi_c);
        let holds = if rf == 0 {
            Some(BoundConvention::Raw)
        } else if tf == 0 {
            Some(BoundConvention::TwoPiC)
        } else {
            None
        };
        ConventionVerdict {
            raw_failures: rf,
            raw_checked: rc,
            two_pi_c_failures: tf,
            two_pi_c_checked: tc,
            holds,
        }
    }

    pub fn summary(&self) -> String {
        let which = match self.holds {
            Some(BoundConvention::Raw) => "bounds hold with c as printed".to_string(),
            Some(BoundConvention::TwoPiC) => format!(
                "c as printed fails ({} of {} active checks); bounds hold with c -> 2*pi*c ({} checks)",
                self.raw_failures, self.raw_checked, self.two_pi_c_checked
            ),
            None => format!(
                "bounds fail under both conventions (raw {}/{}, 2pic {}/{})",
                self.raw_failures, self.raw_checked, self.two_pi_c_failures, self.two_pi_c_checked
            ),
        };
        which
    }
}
