//! `invdelta`: exact 24-colored partition numbers, their convergent
//! exact-formula evaluation, certified asymptotic expansion, and inequality
//! scans, with reproducible machine-readable output.
//!
//! Exit codes: 0 success / verification pass; 1 verification mismatch;
//! 2 usage error; 3 resource or precision failure.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use invdelta_core::Error;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "invdelta", version, about, max_term_width = 100)]
struct Cli {
    /// Working precision in bits (minimum 64); default follows the
    /// argument-size rule of the numeric kernel.
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = output::Format::Text)]
    format: output::Format,

    /// Seed recorded in structured outputs for reproducibility.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cache directory for the exact sequence table
    /// (overrides INVDELTA_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact sequence values.
    P24(commands::P24Args),
    /// Evaluate the truncated exact formula and resolve the integer.
    Rademacher(commands::RademacherArgs),
    /// Evaluate the I-Bessel function with certified bounds.
    Bessel(commands::BesselArgs),
    /// Emit exact expansion coefficients.
    Coeffs(commands::CoeffsArgs),
    /// Certified asymptotic evaluation of p24(n).
    Expand(commands::ExpandArgs),
    /// Scan an inequality operator over an index range.
    Scan(commands::ScanArgs),
    /// Verify corollary expansions and the conjectured growth.
    Verify(commands::VerifyArgs),
    /// Report the conjectured-growth ratios at chosen points.
    Conjecture(commands::ConjectureArgs),
    /// Run the sign-variant convention calibration.
    Calibrate(commands::CalibrateArgs),
}

fn main() -> ExitCode {
    // Die quietly when downstream closes the pipe, like other stream tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let config = commands::RunConfig {
        precision: cli.precision.map(|p| p.max(64)),
        format: cli.format,
        seed: cli.seed,
        cache_dir: cli
            .cache_dir
            .or_else(|| std::env::var_os("INVDELTA_CACHE_DIR").map(Into::into)),
    };
    let result = match cli.command {
        Command::P24(args) => commands::p24(&config, args),
        Command::Rademacher(args) => commands::rademacher(&config, args),
        Command::Bessel(args) => commands::bessel(&config, args),
        Command::Coeffs(args) => commands::coeffs(&config, args),
        Command::Expand(args) => commands::expand(&config, args),
        Command::Scan(args) => commands::scan(&config, args),
        Command::Verify(args) => commands::verify(&config, args),
        Command::Conjecture(args) => commands::conjecture(&config, args),
        Command::Calibrate(args) => commands::calibrate(&config, args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_)
        | Error::CutoffViolation { .. }
        | Error::Range(_)
        | Error::Precondition(_)
        | Error::Format(_) => 2,
        Error::Calibration(_) => 1,
        Error::PrecisionInsufficient(_)
        | Error::ResourceLimit(_)
        | Error::ResolutionFailure { .. }
        | Error::CeilingAmbiguous(_)
        | Error::Io(_) => 3,
    }
}
