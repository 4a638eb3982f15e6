use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use detineq_core::generators::{Family, GeneratorSpec};
use detineq_core::TheoremId;

use crate::campaign::{run_campaign, FuzzCampaignConfig};
use crate::check::{load_instance, run_check, CheckOptions, Target};
use crate::example::{run_example, ExampleId};
use crate::generate::run_generate;
use crate::{CliError, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};

pub const SEED_ENV: &str = "DETINEQ_SEED";

#[derive(Debug, Parser)]
#[command(name = "detineq", version, about = "Exact checks of Hadamard-type determinant inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one inequality on a matrix or frame read from a JSON file.
    Check(CheckArgs),
    /// Run a seeded fuzz campaign and print a summary report.
    Fuzz(FuzzArgs),
    /// Print a generated instance as JSON.
    Generate(GenerateArgs),
    /// Reconstruct a worked example and confirm its claims.
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// hadamard, fischer, zy, refined, hprod, frameProduct, frameZY,
    /// thompson, blockZY or lemma.
    #[arg(long)]
    pub theorem: String,
    /// Permutation in one-line notation, e.g. 2,3,1.
    #[arg(long)]
    pub perm: Option<String>,
    /// Block sizes, e.g. 2,2.
    #[arg(long)]
    pub partition: Option<String>,
    /// One-based index set G for fischer, e.g. 1,3.
    #[arg(long)]
    pub subset: Option<String>,
    /// Eigenvalues for frame checks, e.g. 3,2,1/2.
    #[arg(long)]
    pub spectrum: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long)]
    pub block_diagonal: bool,
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Draw n from n..=n-max by trial index.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub theorems: Vec<String>,
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub fail_fast: bool,
    /// Also print one JSON line per trial.
    #[arg(long)]
    pub verbose: bool,
    /// Write the summary report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn seed_override(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(flag),
    }
}

fn spec_from(args: &FamilyArgs) -> Result<GeneratorSpec, CliError> {
    let family: Family = args.family.parse()?;
    let mut spec = GeneratorSpec::new(family, args.n, seed_override(args.seed)?);
    spec.rank = args.rank;
    spec.sizes = args.sizes.clone();
    spec.block_diagonal = args.block_diagonal;
    spec.params = args.params.clone();
    if let Some(sizes) = &spec.sizes {
        if family == Family::BlockPd {
            spec.n = sizes.iter().sum();
        }
    }
    Ok(spec)
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn check(args: CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let target: Target = args.theorem.parse()?;
    let inst = load_instance(&args.input)?;
    let opts = CheckOptions {
        perm: args.perm,
        partition: args.partition,
        subset: args.subset,
        spectrum: args.spectrum,
        s: args.s,
        t: args.t,
    };
    let (json, holds) = run_check(inst, target, &opts)?;
    writeln!(out, "{json}")?;
    Ok(if holds { EXIT_OK } else { EXIT_VIOLATION })
}

fn fuzz(args: FuzzArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec = spec_from(&args.family)?;
    let theorems = args.theorems.iter().map(|t| t.parse::<TheoremId>()).collect::<Result<Vec<_>, _>>()?;
    let mut config = FuzzCampaignConfig::new(spec.clone(), args.trials, theorems, spec.seed);
    config.n_max = args.n_max;
    config.workers = args.jobs.unwrap_or_else(default_jobs);
    config.fail_fast = args.fail_fast;
    let report = run_campaign(&config, if args.verbose { Some(&mut *out) } else { None })?;
    match &args.output {
        Some(path) => std::fs::write(path, report.to_json() + "\n")?,
        None => writeln!(out, "{}", report.to_json())?,
    }
    Ok(report.exit_code())
}

fn generate(args: GenerateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    writeln!(out, "{}", run_generate(&spec_from(&args.family)?)?)?;
    Ok(EXIT_OK)
}

fn example(args: ExampleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let id: ExampleId = args.id.parse()?;
    let report = run_example(id, &args.params, seed_override(args.seed)?)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))?;
    Ok(if report.all_confirmed() { EXIT_OK } else { EXIT_VIOLATION })
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(a, out),
        Command::Fuzz(a) => fuzz(a, out),
        Command::Generate(a) => generate(a, out),
        Command::Example(a) => example(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
