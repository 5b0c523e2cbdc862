use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use liesym::groups::{GroupFamily, GroupSpec};
use liesym::logpower::parse_exact_complex;
use liesym::verify::{
    export_values, format_export, killing_report, pharmonic_report, verify_space, SpaceId,
    VerifyConfig, DEFAULT_SAMPLES, DEFAULT_TOLERANCE,
};
use liesym::Error;

#[derive(Parser)]
#[command(
    name = "liesym",
    version,
    about = "Eigenfunctions on compact symmetric spaces, checked numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every eigenfunction of a space against the jet calculus.
    Verify {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Restrict to one candidate label; `all` checks the whole catalog.
        #[arg(long, default_value = "all")]
        candidate: String,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record wall time in the report (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Compare closed-form Killing forms with the brute-force trace.
    Killing {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Build a proper p-harmonic function and print its reduction trace.
    Pharmonic {
        /// `RE` or `RE,IM`; decimals and fractions are read exactly.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c1: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c2: String,
    },
    /// Write candidate values at seeded points to a file.
    Export {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn space_id(s: &str) -> Result<SpaceId, Failure> {
    SpaceId::parse(s).ok_or_else(|| {
        let known: Vec<_> = SpaceId::ALL.iter().map(|i| i.id()).collect();
        Failure::Usage(format!(
            "unknown space '{s}' (expected one of {})",
            known.join(", ")
        ))
    })
}

fn emit<T: Serialize>(value: &T, path: Option<&PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{text}");
    if let Some(p) = path {
        fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            space,
            m,
            n,
            samples,
            seed,
            tol,
            candidate,
            json,
            timing,
        } => {
            let id = space_id(&space)?;
            let n = n.unwrap_or(id.default_n());
            let config = VerifyConfig {
                samples,
                seed,
                tolerance: tol,
                timing,
            };
            let report = verify_space(id, m, n, &candidate, &config)?;
            emit(&report, json.as_ref())?;
            if !report.passed {
                eprintln!(
                    "verification failed: tau {:.3e}, kappa {:.3e}, cross {:.3e} (tolerance {:.1e})",
                    report.max_tau_residual, report.max_kappa_residual, report.max_cross_residual, tol
                );
                return Err(Failure::Verification);
            }
        }
        Command::Killing {
            group,
            n,
            pairs,
            seed,
            tol,
        } => {
            let family = GroupFamily::parse(&group).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown group '{group}' (expected so, u, su or sp)"
                ))
            })?;
            let g = GroupSpec::new(family, n)?;
            let report = killing_report(&g, pairs, seed, tol)?;
            emit(&report, None)?;
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
        Command::Pharmonic {
            lambda,
            mu,
            p,
            c1,
            c2,
        } => {
            let report = pharmonic_report(
                &parse_exact_complex(&lambda)?,
                &parse_exact_complex(&mu)?,
                p,
                &parse_exact_complex(&c1)?,
                &parse_exact_complex(&c2)?,
            )?;
            emit(&report, None)?;
            if !report.proper {
                return Err(Failure::Verification);
            }
        }
        Command::Export {
            space,
            m,
            n,
            candidate,
            points,
            seed,
            out,
        } => {
            let id = space_id(&space)?;
            let n = n.unwrap_or(id.default_n());
            let rows = export_values(id, m, n, &candidate, points, seed)?;
            fs::write(&out, format_export(id.id(), &candidate, seed, &rows))
                .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
