//! `hlya`: checks, constructions and isoclinism certificates for algebras
//! given as JSON structure-constant documents.

mod certificate;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use certificate::{CliError, Verdict};

#[derive(Parser)]
#[command(name = "hlya", version, about = "Exact checks for regular Hom-Lie Yamaguti algebras")]
struct Cli {
    /// Worker threads for library computations (default: all cores).
    #[arg(long, global = true, env = "HLYA_THREADS")]
    threads: Option<usize>,
    /// Write the certificate here instead of stdout.
    #[arg(long, global = true)]
    certificate: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every axiom check and report center, derived subalgebra and stem flag.
    Check {
        /// Algebra document, or fixture:NAME.
        algebra: Option<String>,
        #[arg(long, conflicts_with = "algebra")]
        fixture: Option<String>,
    },
    /// Quotient by a Hom-ideal.
    Quotient {
        algebra: String,
        /// `center`, `derived`, `zero`, `meta:NAME` (from the document's
        /// metadata.ideals) or an inline JSON list of basis vectors.
        #[arg(long)]
        ideal: String,
        /// Write the quotient document here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Direct sum of two algebras over the same field.
    DirectSum {
        first: String,
        second: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Factor sets relative to the center.
    FactorSet(FactorSetArgs),
    /// Verify or search for an isoclinism witness.
    Isoclinic(IsoclinicArgs),
    /// Split off an abelian direct summand.
    Decompose {
        algebra: String,
        /// Directory receiving stem.json, abelian.json and witness.json.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
    /// Generate a deterministic directory of axiom-passing algebras.
    Corpus {
        /// F2 or F3.
        #[arg(long)]
        field: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every dimension-2 structure instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Built-in fixtures.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FactorSetMode {
    /// Extract the factor set of the algebra.
    #[arg(long)]
    extract: bool,
    /// Build the central extension from this factor-set document.
    #[arg(long, value_name = "FACTOR_SET")]
    extend: Option<String>,
    /// Extract, extend and verify the reconstruction isomorphism.
    #[arg(long)]
    roundtrip: bool,
}

#[derive(Args)]
struct FactorSetArgs {
    algebra: String,
    #[command(flatten)]
    mode: FactorSetMode,
    /// Write the factor set (--extract) or the extension (--extend) here.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct IsoclinicArgs {
    first: String,
    second: String,
    /// Witness document to verify.
    #[arg(long, conflicts_with = "search", required_unless_present = "search")]
    witness: Option<String>,
    #[arg(long)]
    search: bool,
    /// Expected field of both algebras (Q, F2, F3, ...).
    #[arg(long, requires = "search")]
    field: Option<String>,
    /// Maximum number of candidate matrices.
    #[arg(long, requires = "search", default_value_t = 1_000_000)]
    budget: u64,
    /// Entry bound for candidates over Q.
    #[arg(long, requires = "search", default_value_t = 2)]
    bound: i64,
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Print a fixture as an algebra document.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List fixture names.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Fixture { action } => {
            return match commands::fixture(action) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Command::Check { algebra, fixture } => commands::check(algebra, fixture),
        Command::Quotient { algebra, ideal, emit } => commands::quotient(&algebra, &ideal, emit),
        Command::DirectSum { first, second, emit } => commands::direct_sum(&first, &second, emit),
        Command::FactorSet(args) => commands::factor_set(args),
        Command::Isoclinic(args) => commands::isoclinic(args),
        Command::Decompose { algebra, emit_dir } => commands::decompose(&algebra, emit_dir),
        Command::Corpus {
            field,
            dim,
            count,
            seed,
            exhaustive,
            out,
        } => commands::corpus(&field, dim, count, seed, exhaustive, out),
    };
    match outcome.and_then(|run| run.finish(cli.certificate.as_deref())) {
        Ok(verdict) => ExitCode::from(verdict.exit_code()),
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(Verdict::Malformed.exit_code())
}
