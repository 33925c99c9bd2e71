use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use jordan_cg::arith::{parse_rational, HalfInt, Rational};
use jordan_cg::driver::{self, Limits};
use jordan_cg::io::{self, Document, Format};
use jordan_cg::Error;

/// Exact Clebsch-Gordan decompositions for the Jordanian quantum algebras
/// U_h(sl(2)) and U_h(su(1,1)).
#[derive(Parser)]
#[command(name = "jordan-cg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: json, csv or latex.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Record wall-clock timings (output is then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite for one representation.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Tensor product decomposition rule.
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// Coefficients of one weight eigenvector of the coproduct.
    #[command(subcommand)]
    Eigvec(EigvecCmd),
    /// Full coupled basis of a tensor product.
    #[command(subcommand)]
    Cgtable(CgtableCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Spin-j representation of U_h(sl(2)).
    Sl2 {
        /// Highest weight, e.g. 3/2.
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// Truncated positive discrete series of U_h(su(1,1)).
    Su11 {
        /// Lowest weight, a positive rational.
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        /// Truncation: basis mu = kappa .. kappa + cutoff.
        #[arg(long, default_value_t = 12)]
        cutoff: usize,
    },
}

#[derive(Args)]
struct Pair {
    /// Spin of the left factor.
    #[arg(long, allow_hyphen_values = true)]
    j1: String,
    /// Spin of the right factor.
    #[arg(long, allow_hyphen_values = true)]
    j2: String,
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// U_h(sl(2)).
    Sl2(Pair),
    /// U_h(su(1,1)).
    Su11 {
        /// Lowest weight of the left factor.
        #[arg(long, allow_hyphen_values = true)]
        kappa1: String,
        /// Lowest weight of the right factor.
        #[arg(long, allow_hyphen_values = true)]
        kappa2: String,
        /// Largest coupled weight to list.
        #[arg(long, allow_hyphen_values = true)]
        mu_max: String,
    },
}

#[derive(Subcommand)]
enum EigvecCmd {
    /// U_h(sl(2)).
    Sl2 {
        /// Spin of the left factor.
        #[arg(long, allow_hyphen_values = true)]
        j1: String,
        /// Weight in the left factor.
        #[arg(long, allow_hyphen_values = true)]
        m1: String,
        /// Spin of the right factor.
        #[arg(long, allow_hyphen_values = true)]
        j2: String,
        /// Weight in the right factor.
        #[arg(long, allow_hyphen_values = true)]
        m2: String,
    },
    /// U_h(su(1,1)).
    Su11 {
        /// Lowest weight of the left factor.
        #[arg(long, allow_hyphen_values = true)]
        kappa1: String,
        /// Weight in the left factor.
        #[arg(long, allow_hyphen_values = true)]
        mu1: String,
        /// Lowest weight of the right factor.
        #[arg(long, allow_hyphen_values = true)]
        kappa2: String,
        /// Weight in the right factor.
        #[arg(long, allow_hyphen_values = true)]
        mu2: String,
        /// Largest total order rho + sigma of the coefficient table.
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum CgtableCmd {
    /// U_h(sl(2)).
    Sl2(Pair),
}

fn half(s: &str) -> Result<HalfInt, Error> {
    s.parse()
}

fn rational(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn run(cmd: &Command, limits: Limits) -> Result<Document, Error> {
    match cmd {
        Command::Verify(VerifyCmd::Sl2 { j }) => driver::verify_sl2(half(j)?, limits),
        Command::Verify(VerifyCmd::Su11 { kappa, cutoff }) => driver::verify_su11(rational(kappa)?, *cutoff, limits),
        Command::Decompose(DecomposeCmd::Sl2(p)) => driver::decompose_sl2(half(&p.j1)?, half(&p.j2)?),
        Command::Decompose(DecomposeCmd::Su11 { kappa1, kappa2, mu_max }) => {
            driver::decompose_su11(rational(kappa1)?, rational(kappa2)?, rational(mu_max)?)
        }
        Command::Eigvec(EigvecCmd::Sl2 { j1, m1, j2, m2 }) => {
            driver::eigvec_sl2(half(j1)?, half(m1)?, half(j2)?, half(m2)?, limits)
        }
        Command::Eigvec(EigvecCmd::Su11 { kappa1, mu1, kappa2, mu2, degree }) => driver::eigvec_su11(
            rational(kappa1)?,
            rational(mu1)?,
            rational(kappa2)?,
            rational(mu2)?,
            *degree,
            limits,
        ),
        Command::Cgtable(CgtableCmd::Sl2(p)) => driver::cgtable_sl2(half(&p.j1)?, half(&p.j2)?, limits),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: Format = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => return fail(&e),
    };

    let start = Instant::now();
    let mut doc = match run(&cli.command, limits) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    if cli.timings {
        let ms = start.elapsed().as_millis() as u64;
        doc.timings = Some(BTreeMap::from([("total_ms".to_string(), ms)]));
    }

    let text = match io::render(&doc, format) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for c in doc.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAILED: {}{}", c.name, c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default());
    }
    ExitCode::from(driver::exit_code(&doc) as u8)
}
