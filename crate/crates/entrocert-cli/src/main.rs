//! Batch experiment runner: ingest distributions, states, and channels
//! from JSON files, run certification and audit experiments, emit CSV or
//! JSON reports with deterministic bytes for a fixed seed.
//!
//! Exit codes: 0 success, 1 certification failure under
//! `--require-certified`, 2 parse error, 3 validation error, 4 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use entrocert::continuity::{self, StateSet};
use entrocert::io::{self, IoSchemaError};
use entrocert::{DensityMatrix, Distribution, KrausChannel};

const EXIT_CERTIFICATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_IO: u8 = 4;

/// Draws per invariant family in the identity audit; fixed so a seed
/// pins the whole byte stream.
const IDENTITY_AUDIT_DRAWS: usize = 40;

#[derive(Parser)]
#[command(name = "entrocert", version, about = "Entropy continuity certification experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a certification or audit experiment and write a report.
    Run(RunArgs),
    /// Validate an input file, reporting per-invariant residuals.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    ShannonConvergence,
    VnConvergence,
    MiAudit,
    ChiAudit,
    IdentityAudit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Which experiment to run.
    #[arg(long, value_enum)]
    experiment: Experiment,

    /// Input file (repeatable): distributions for shannon-convergence,
    /// density matrices for the quantum experiments.
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,

    /// Channel file for mi-audit and chi-audit.
    #[arg(long)]
    channel: Option<PathBuf>,

    /// Candidate degrading map for mi-audit.
    #[arg(long = "degrading-map")]
    degrading_map: Option<PathBuf>,

    /// Largest block size k in the report grid.
    #[arg(long = "k-max", default_value_t = 10)]
    k_max: usize,

    /// Certification threshold in nats.
    #[arg(long, default_value_t = 1e-3)]
    threshold: f64,

    /// Seed for all random draws (identity-audit).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Exit nonzero unless the experiment certifies (or all audit checks pass).
    #[arg(long = "require-certified", default_value_t = false)]
    require_certified: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// File to validate.
    input: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum CliError {
    Parse(String),
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

fn classify(path: &Path, err: IoSchemaError) -> CliError {
    match err {
        IoSchemaError::Parse(e) => CliError::Parse(format!("{}: {}", path.display(), e)),
        IoSchemaError::UnknownSchema => CliError::Parse(format!("{}: {}", path.display(), IoSchemaError::UnknownSchema)),
        other => CliError::Validation(format!("{}: {}", path.display(), other)),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
}

fn load_distribution(path: &Path) -> Result<Distribution, CliError> {
    io::parse_distribution(&read_file(path)?).map_err(|e| classify(path, e))
}

fn load_density_matrix(path: &Path) -> Result<DensityMatrix, CliError> {
    io::parse_density_matrix(&read_file(path)?).map_err(|e| classify(path, e))
}

fn load_channel(path: &Path) -> Result<KrausChannel, CliError> {
    io::parse_channel(&read_file(path)?).map_err(|e| classify(path, e))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn require_inputs(inputs: &[PathBuf], what: &str) -> Result<(), CliError> {
    if inputs.is_empty() {
        return Err(CliError::Validation(format!("experiment needs at least one --input {what} file")));
    }
    Ok(())
}

fn run(args: &RunArgs) -> Result<bool, CliError> {
    if args.k_max < 1 {
        return Err(CliError::Validation("--k-max must be at least 1".into()));
    }
    if !(args.threshold > 0.0) {
        return Err(CliError::Validation("--threshold must be positive".into()));
    }
    let (content, certified) = match args.experiment {
        Experiment::ShannonConvergence => {
            require_inputs(&args.inputs, "distribution")?;
            let members = args.inputs.iter().map(|p| load_distribution(p)).collect::<Result<Vec<_>, _>>()?;
            let set = StateSet::ExplicitClassical(members);
            let report = continuity::certify_shannon_set(&set, args.k_max, args.threshold)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let content = match args.format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            (content, report.certified)
        }
        Experiment::VnConvergence => {
            require_inputs(&args.inputs, "density-matrix")?;
            let members = args.inputs.iter().map(|p| load_density_matrix(p)).collect::<Result<Vec<_>, _>>()?;
            let set = StateSet::ExplicitQuantum(members);
            let report = continuity::certify_vn_set(&set, args.k_max, args.threshold)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let content = match args.format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            (content, report.certified)
        }
        Experiment::MiAudit => {
            require_inputs(&args.inputs, "density-matrix")?;
            let channel_path = args
                .channel
                .as_ref()
                .ok_or_else(|| CliError::Validation("mi-audit needs --channel".into()))?;
            let phi = load_channel(channel_path)?;
            let degrading = match &args.degrading_map {
                Some(p) => Some(load_channel(p)?),
                None => None,
            };
            let members = args.inputs.iter().map(|p| load_density_matrix(p)).collect::<Result<Vec<_>, _>>()?;
            let set = StateSet::ExplicitQuantum(members);
            let audit = continuity::audit_corollary_mi(&phi, &set, degrading.as_ref(), args.k_max)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let content = match args.format {
                Format::Csv => audit.to_csv(),
                Format::Json => audit.to_json(),
            };
            (content, audit.passed)
        }
        Experiment::ChiAudit => {
            require_inputs(&args.inputs, "density-matrix")?;
            let channel_path = args
                .channel
                .as_ref()
                .ok_or_else(|| CliError::Validation("chi-audit needs --channel".into()))?;
            let phi = load_channel(channel_path)?;
            let members = args.inputs.iter().map(|p| load_density_matrix(p)).collect::<Result<Vec<_>, _>>()?;
            let set = StateSet::ExplicitQuantum(members);
            let audit = continuity::audit_corollary_chi(&phi, &set, args.k_max)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let content = match args.format {
                Format::Csv => audit.to_csv(),
                Format::Json => audit.to_json(),
            };
            (content, audit.passed)
        }
        Experiment::IdentityAudit => {
            let report = continuity::identity_audit(args.seed, IDENTITY_AUDIT_DRAWS);
            let content = match args.format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            (content, report.passed)
        }
    };
    write_output(&args.out, &content)?;
    Ok(certified)
}

fn validate(args: &ValidateArgs) -> Result<bool, CliError> {
    let text = read_file(&args.input)?;
    let report = io::validate_text(&text).map_err(|e| classify(&args.input, e))?;
    let content = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => {
            let mut out = String::from("invariant,residual,tolerance,pass\n");
            for r in &report.residuals {
                out.push_str(&format!("{},{:.11e},{:.11e},{}\n", r.invariant, r.residual, r.tolerance, r.pass));
            }
            for issue in &report.issues {
                out.push_str(&format!("issue,{issue},,false\n"));
            }
            out
        }
    };
    print!("{content}");
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => match run(args) {
            Ok(certified) => {
                if args.require_certified && !certified {
                    eprintln!("certification failed");
                    ExitCode::from(EXIT_CERTIFICATION)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => {
                eprintln!("error: {}", e.message());
                ExitCode::from(e.exit_code())
            }
        },
        Command::Validate(args) => match validate(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => {
                eprintln!("validation failed");
                ExitCode::from(EXIT_VALIDATION)
            }
            Err(e) => {
                eprintln!("error: {}", e.message());
                ExitCode::from(e.exit_code())
            }
        },
    }
}
