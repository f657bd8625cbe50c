use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nlgate::commands::{self, Overrides, Settings, Source};
use nlgate::CliError;

/// Verify, synthesize and simulate group-form nonlocal unitaries.
///
/// Exit status: 0 on success, 1 when a check fails, 2 for unusable input.
#[derive(Parser)]
#[command(name = "nlgate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Residual threshold for unitarity, form conditions and Kraus checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Relative singular-value cutoff for Schmidt ranks.
    #[arg(long = "rank-tol", global = true)]
    rank_tol: Option<f64>,

    /// Seed for the entangling-strength estimator.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Restarts of the entangling-strength estimator.
    #[arg(long, global = true)]
    restarts: Option<usize>,

    /// Also write a machine-readable result to this path.
    #[arg(long = "json-out", global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Problem file (JSON).
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    path: Option<PathBuf>,

    /// Use a built-in catalog entry instead of a file.
    #[arg(long)]
    catalog: Option<String>,

    /// Pick the instance with this d_A when the entry has several.
    #[arg(long, requires = "catalog")]
    dim: Option<usize>,
}

impl Input {
    fn source(&self) -> Source {
        match (&self.path, &self.catalog) {
            (Some(p), _) => Source::File(p.clone()),
            (None, Some(name)) => Source::Catalog { name: name.clone(), dim: self.dim },
            (None, None) => unreachable!("clap requires one of path or --catalog"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every structural check on a problem.
    Validate(Input),
    /// Assemble U, M (and C), the W family and the Schmidt rank.
    Synth {
        #[command(flatten)]
        input: Input,
        /// Also estimate the entangling strength.
        #[arg(long)]
        strength: bool,
    },
    /// Simulate every measurement branch of the protocol.
    Simulate(Input),
    /// Recompute Schmidt ranks of catalog entries against their declared values.
    Report {
        /// Entry name or "all".
        #[arg(long, default_value = "all")]
        catalog: String,
        /// Also estimate entangling strengths.
        #[arg(long)]
        strength: bool,
    },
    /// Write a catalog entry as a problem file.
    Export {
        name: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List catalog entries.
    List,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let overrides = Overrides { tolerance: cli.tolerance, rank_tol: cli.rank_tol, seed: cli.seed, restarts: cli.restarts };
    let json_out = cli.json_out.as_deref();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Validate(input) => {
            let pf = input.source().load()?;
            let s = Settings::resolve(Some(&pf), &overrides);
            commands::validate(pf, &s, &mut out)
        }
        Command::Synth { input, strength } => {
            let pf = input.source().load()?;
            let s = Settings::resolve(Some(&pf), &overrides);
            commands::synth(pf, &s, strength, json_out, &mut out)
        }
        Command::Simulate(input) => {
            let pf = input.source().load()?;
            let s = Settings::resolve(Some(&pf), &overrides);
            commands::simulate_cmd(pf, &s, json_out, &mut out)
        }
        Command::Report { catalog, strength } => {
            let s = Settings::resolve(None, &overrides);
            commands::report(&catalog, &s, strength, json_out, &mut out)
        }
        Command::Export { name, dim, output } => commands::export(&name, dim, output.as_deref(), &mut out).map(|()| true),
        Command::List => commands::list(&mut out).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = std::io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
