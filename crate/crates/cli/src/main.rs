//! `cpswf`: spectra, approximation tables and verification suites as CSV/JSON.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use cpswf_core::reports::{cmd_eigs, cmd_example2, cmd_table1, cmd_verify, Command, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Eigenvalues γ, μ, χ and decay bounds over a (k, n) grid.
    Eigs,
    /// L2 errors of CPSWF and Fourier–Bessel truncations of Example 1.
    Table1,
    /// Example 2 and its reconstruction on a polar grid.
    Example2,
    /// Run the verification suites and report pass/fail with margins.
    Verify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Eigs => Command::Eigs,
            Cmd::Table1 => Command::Table1,
            Cmd::Example2 => Command::Example2,
            Cmd::Verify => Command::Verify,
        }
    }
}

/// Flags are kept as strings and parsed by the same code that reads config files.
#[derive(Debug, Parser)]
#[command(name = "cpswf", version, about = "Clifford prolate spheroidal wave functions")]
struct Cli {
    command: Cmd,
    /// Bandwidth.
    #[arg(long, value_name = "F")]
    c: Option<String>,
    /// Dimension (only eigs accepts m > 2).
    #[arg(long, value_name = "I")]
    m: Option<String>,
    #[arg(long, value_name = "I")]
    kmin: Option<String>,
    /// Top degree k (for table1/example2: top degree of the basis).
    #[arg(long, value_name = "I")]
    kmax: Option<String>,
    /// Top radial index N.
    #[arg(long, value_name = "I")]
    nmax: Option<String>,
    /// Combined indices n = 2N + parity for eigs, e.g. 2,5.
    #[arg(long, value_name = "LIST")]
    n: Option<String>,
    /// Term counts T, e.g. 5,7,10.
    #[arg(long, value_name = "LIST")]
    terms: Option<String>,
    /// Fourier–Bessel radial modes per angular order.
    #[arg(long, value_name = "I")]
    fbterms: Option<String>,
    /// Radial quadrature order.
    #[arg(long, value_name = "I")]
    qr: Option<String>,
    /// Angular quadrature order.
    #[arg(long, value_name = "I")]
    qtheta: Option<String>,
    /// Angular factor of Example 1: cos4, cos4pi or radial.
    #[arg(long, value_name = "READING")]
    angular: Option<String>,
    #[arg(long, value_name = "I")]
    seed: Option<String>,
    /// Bandwidth in the decay bounds: raw or 2pic.
    #[arg(long, value_name = "CONV")]
    convention: Option<String>,
    /// Output file; a .json sibling is written next to CSV output.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Flat key = value file, overridden by flags.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, hide = true, value_name = "F")]
    inject_perturbation: Option<f64>,
}

impl Cli {
    fn flags(&self) -> Vec<(&'static str, &String)> {
        [
            ("c", &self.c),
            ("m", &self.m),
            ("kmin", &self.kmin),
            ("kmax", &self.kmax),
            ("nmax", &self.nmax),
            ("n", &self.n),
            ("terms", &self.terms),
            ("fbterms", &self.fbterms),
            ("qr", &self.qr),
            ("qtheta", &self.qtheta),
            ("angular", &self.angular),
            ("seed", &self.seed),
            ("convention", &self.convention),
            ("out", &self.out),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
        .collect()
    }
}

fn build_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = RunConfig::defaults(cli.command.into());
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply_file(&text)?;
    }
    for (key, value) in cli.flags() {
        cfg.set(key, value).with_context(|| format!("--{key}"))?;
    }
    cfg.perturbation = cli.inject_perturbation;
    cfg.validate()?;
    Ok(cfg)
}

fn emit(out: Option<&Path>, primary: &str, json: Option<&str>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, primary).with_context(|| format!("writing {}", path.display()))?;
            if let Some(json) = json {
                let sibling = path.with_extension("json");
                if sibling != path {
                    fs::write(&sibling, json).with_context(|| format!("writing {}", sibling.display()))?;
                }
            }
        }
        None => print!("{primary}"),
    }
    Ok(())
}

/// Ok(true) when the run succeeded and every verification it performs passed.
fn run(cfg: &RunConfig) -> anyhow::Result<bool> {
    let out = cfg.out.as_deref();
    match cfg.command {
        Command::Eigs => {
            let table = cmd_eigs(cfg)?;
            emit(out, &table.to_csv(), Some(&serde_json::to_string_pretty(&table)?))?;
            eprintln!(
                "eigs: {} rows, convention {}, {} bound failures",
                table.rows.len(),
                table.convention,
                table.failures().count()
            );
        }
        Command::Table1 => {
            let rep = cmd_table1(cfg)?;
            emit(out, &rep.to_csv(), Some(&rep.to_json()?))?;
            eprintln!("table1: {}", rep.metadata.function);
            for r in &rep.rows {
                eprintln!("  {:<15} T={:<3} L2 error {:.3e}", r.basis.to_string(), r.terms, r.l2_error);
            }
        }
        Command::Example2 => {
            let rep = cmd_example2(cfg)?;
            emit(out, &rep.to_csv(), Some(&serde_json::to_string_pretty(&rep)?))?;
            eprintln!(
                "example2: {} terms, L2 error {:.3e} (relative {:.3e})",
                rep.terms,
                rep.l2_error,
                rep.relative_error()
            );
        }
        Command::Verify => {
            let rep = cmd_verify(cfg)?;
            emit(out, &rep.to_json()?, None)?;
            for s in &rep.suites {
                eprintln!("{} {}", if s.passed { "PASS" } else { "FAIL" }, s.name);
            }
            eprintln!("{}", rep.convention);
            return Ok(rep.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("cpswf: {e:#}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cpswf: {e:#}");
            ExitCode::from(1)
        }
    }
}
