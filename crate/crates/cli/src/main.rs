//! `floquet`: asymptotic eigenvalue series and their numeric verification.

mod job;
mod report;
mod run;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Process-level failure with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, config or potential text (exit 2).
    Usage(String),
    /// Some verification row failed (exit 3).
    Verify,
    /// The library raised a numeric or domain error (exit 4).
    Numeric(String),
}

impl From<floquet_core::Error> for Failure {
    fn from(e: floquet_core::Error) -> Self {
        use floquet_core::Error as E;
        match e {
            E::Parse { .. } | E::UnknownSymbol(_) | E::InvalidInput(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "floquet",
    version,
    about = "Asymptotic spectra of periodic Schrödinger operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Potential, e.g. "trig: theta=[t1,t2]" or "ellipsoidal-j: delta=400, omega=1, k2=0.3".
    #[arg(long, global = true)]
    pub potential: Option<String>,
    /// large-energy, small-energy-sn or small-energy-cn.
    #[arg(long, global = true)]
    pub regime: Option<String>,
    /// Truncation order: epsilons for large energy, densities for small energy.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// text or structured.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Pass threshold for verification rows and identity residuals.
    #[arg(long, global = true)]
    pub tolerance: Option<String>,
    /// Plain-text key=value file supplying any of the long options.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<String>,
    /// Verification samples: λ values (large energy) or Δ values (small energy).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub at: Option<String>,
    /// Floquet exponent μ for small-energy verification, e.g. 0.35i.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Order in k² of the lattice constants when a Weierstrass series is
    /// rewritten in Jacobi form.
    #[arg(long = "k-order", global = true)]
    pub k_order: Option<String>,
    /// Nome for `constants`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Modulus squared for `constants`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k2: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Command {
    /// Print the epsilons and the reverted eigenvalue series.
    Expand,
    /// Compare the truncated series with the monodromy or quadrature oracle.
    Verify,
    /// Print lattice constants and identity residuals for q or k².
    Constants,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run::run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify) => {
            eprintln!("verification failed");
            ExitCode::from(3)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(4)
        }
    }
}
