//! Run configuration: built-in defaults, then a flat key=value file, then flags.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CpswfError, Result};
use crate::expansion::examples::AngularReading;
use crate::expansion::grid::MIN_ORDER;
use crate::prolate::bounds::BoundConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eigs,
    Table1,
    Example2,
    Verify,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Eigs => "eigs",
            Command::Table1 => "table1",
            Command::Example2 => "example2",
            Command::Verify => "verify",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CpswfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eigs" => Ok(Command::Eigs),
            "table1" => Ok(Command::Table1),
            "example2" => Ok(Command::Example2),
            "verify" => Ok(Command::Verify),
            _ => Err(CpswfError::InvalidParameter(format!("unknown command '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub c: f64,
    pub m: usize,
    /// Degrees k = kmin..=kmax (for expansions: the top degree M of the basis).
    pub kmin: usize,
    pub kmax: usize,
    /// Top radial index N.
    pub nmax: usize,
    /// Explicit combined indices n = 2N + parity; overrides `nmax` for `eigs`.
    pub n: Option<Vec<usize>>,
    pub terms: Vec<usize>,
    /// Fourier–Bessel radial modes per angular order.
    pub fb_terms: usize,
    pub qr: usize,
    pub qtheta: usize,
    pub angular: AngularReading,
    pub seed: u64,
    pub convention: BoundConvention,
    pub out: Option<PathBuf>,
    /// Added to γ_0 before the residual suite; sensitivity check for `verify`.
    pub perturbation: Option<f64>,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        let base = RunConfig {
            command,
            c: 1.0,
            m: 2,
            kmin: 0,
            kmax: 8,
            nmax: 12,
            n: None,
            terms: vec![5, 7, 10],
            fb_terms: 20,
            qr: 256,
            qtheta: 512,
            angular: AngularReading::Cos4,
            seed: 0,
            convention: BoundConvention::TwoPiC,
            out: None,
            perturbation: None,
        };
        match command {
            Command::Eigs => RunConfig {
                kmax: 10,
                nmax: 10,
                ..base
            },
            Command::Table1 => base,
            Command::Example2 => RunConfig {
                terms: vec![5],
                kmax: 8,
                nmax: 8,
                qr: 128,
                qtheta: 256,
                ..base
            },
            Command::Verify => RunConfig {
                kmax: 3,
                nmax: 10,
                qr: 256,
                qtheta: 64,
                ..base
            },
        }
    }

    /// Set one key; the names match the long flags.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| CpswfError::InvalidParameter(format!("{key} = '{value}': expected {what}"));
        let uint = || value.trim().parse::<usize>().map_err(|_| bad("a non-negative integer"));
        let list = || -> Result<Vec<usize>> {
            value
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("a comma-separated list of integers")))
                .collect()
        };
        match key {
            "c" => self.c = value.trim().parse().map_err(|_| bad("a number"))?,
            "m" => self.m = uint()?,
            "kmin" => self.kmin = uint()?,
            "kmax" => self.kmax = uint()?,
            "nmax" => self.nmax = uint()?,
            "n" => self.n = Some(list()?),
            "terms" => self.terms = list()?,
            "fbterms" => self.fb_terms = uint()?,
            "qr" => self.qr = uint()?,
            "qtheta" => self.qtheta = uint()?,
            "angular" => self.angular = value.trim().parse()?,
            "seed" => self.seed = value.trim().parse().map_err(|_| bad("a non-negative integer"))?,
            "convention" => self.convention = value.trim().parse()?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            _ => return Err(CpswfError::InvalidParameter(format!("unknown configuration key '{key}'"))),
        }
        Ok(())
    }

    /// Apply a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CpswfError::InvalidParameter(format!("config line {}: expected key = value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CpswfError::InvalidParameter(format!("config line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CpswfError::InvalidParameter(msg));
        if !(self.c > 0.0 && self.c.is_finite()) {
            return fail(format!("c = {} must be positive", self.c));
        }
        if self.m < 2 {
            return fail(format!("m = {} must be at least 2", self.m));
        }
        if self.command != Command::Eigs && self.m != 2 {
            return fail(format!("{} runs on the unit disk and needs m = 2", self.command));
        }
        if self.kmin > self.kmax {
            return fail(format!("empty degree range {}..={}", self.kmin, self.kmax));
        }
        if self.qr < MIN_ORDER || self.qtheta < MIN_ORDER {
            return fail(format!("quadrature orders ({}, {}) must be >= {MIN_ORDER}", self.qr, self.qtheta));
        }
        if self.nmax + 1 > self.qr {
            return fail(format!("nmax = {} needs more than qr = {} nodes", self.nmax, self.qr));
        }
        if matches!(&self.n, Some(v) if v.is_empty()) {
            return fail("empty index list".into());
        }
        if let Some(&n) = self.n.as_ref().and_then(|v| v.iter().max()) {
            if n / 2 + 1 > self.qr {
                return fail(format!("index n = {n} needs more than qr = {} nodes", self.qr));
            }
        }
        if matches!(self.command, Command::Table1 | Command::Example2) {
            if self.terms.is_empty() || self.terms.contains(&0) {
                return fail("terms must be a non-empty list of positive counts".into());
            }
            if self.fb_terms == 0 {
                return fail("fbterms must be positive".into());
            }
        }
        if let Some(p) = self.perturbation {
            if !p.is_finite() {
                return fail(format!("perturbation {p} must be finite"));
            }
        }
        Ok(())
    }
}
