//! `quadric`: command-line front end for the verification kit.
//!
//! Exit codes: 0 pass, 1 a checked property fails, 2 invalid input.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Status;

#[derive(Parser, Debug)]
#[command(
    name = "quadric",
    version,
    about = "Exact checks for commutative actions on smooth projective quadrics"
)]
struct Cli {
    /// Print the machine-readable details as JSON instead of a text report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebra axioms of a structure-constant file.
    Validate { algebra: PathBuf },
    /// Radical and maximal-ideal count of an algebra.
    Radical { algebra: PathBuf },
    /// Algebra and generating subspace of a cyclic representation.
    HtForward { rep: PathBuf },
    /// Cyclic representation of an algebra with a generating subspace.
    HtBackward { algebra: PathBuf, subspace: PathBuf },
    /// Scalar product induced on the algebra by the ambient form.
    InducedForm { rep: PathBuf },
    /// Compatibility identities and invariants of quadric data.
    CheckQuadric { data: PathBuf },
    /// The five structural consequences of compatibility.
    Lemma3 { data: PathBuf },
    /// Obstruction certificate for a mixed signature with n ≥ 3.
    Obstruct {
        data: PathBuf,
        /// Also write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normal form of mixed data on Q_2, with its certificate.
    #[command(name = "canonicalize-n2")]
    CanonicalizeN2 {
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// An explicit action from the catalog.
    Catalog {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
    },
    /// Apply a catalog action to a point.
    Act {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals, e.g. `1,2` or `-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        /// Comma-separated homogeneous coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Maximal torus dimension and whether a torus action on Q_n fits.
    TorusBound { n: usize },
    /// Seeded search for compatible scalar products.
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        seed: u64,
        /// Write obstruction certificates into this directory.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        /// Number of certificates to write.
        #[arg(long, default_value_t = 10)]
        keep: usize,
    },
    /// Re-check certificate files.
    VerifyCert {
        #[arg(required = true)]
        certs: Vec<PathBuf>,
    },
    /// Run the full acceptance battery and print the classification table.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write every obstruction certificate into this directory.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let report = commands::run(cli.command);
    let status = report.status;
    output::emit(name, &report, cli.json);
    ExitCode::from(match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Invalid => 2,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Radical { .. } => "radical",
        Command::HtForward { .. } => "ht-forward",
        Command::HtBackward { .. } => "ht-backward",
        Command::InducedForm { .. } => "induced-form",
        Command::CheckQuadric { .. } => "check-quadric",
        Command::Lemma3 { .. } => "lemma3",
        Command::Obstruct { .. } => "obstruct",
        Command::CanonicalizeN2 { .. } => "canonicalize-n2",
        Command::Catalog { .. } => "catalog",
        Command::Act { .. } => "act",
        Command::TorusBound { .. } => "torus-bound",
        Command::Fuzz { .. } => "fuzz",
        Command::VerifyCert { .. } => "verify-cert",
        Command::Verify { .. } => "verify",
    }
}
