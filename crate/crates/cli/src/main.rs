//! `cbench`: generate, certify, verify, evaluate, replay, report, admit.

mod commands;
mod summary;

use std::path::PathBuf;
use std::process::ExitCode;

use cbench_eval::episode::Condition;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cbench", version, about = "Combinatorial constraint benchmark toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a certified dataset from a profile.
    Generate(GenerateArgs),
    /// Certify the polarity of one parameter point.
    Certify(CertifyArgs),
    /// Grade stored submissions against a dataset.
    Verify(VerifyArgs),
    /// Run an agent over a dataset and write traces.
    Evaluate(EvaluateArgs),
    /// Replay traces at smaller round caps (sim@k).
    Replay(ReplayArgs),
    /// Write metric tables for one or more trace files.
    Report(ReportArgs),
    /// Keep the instances at least one cohort member fails.
    Admit(AdmitArgs),
    /// List the registered problem families.
    Families,
}

#[derive(Args)]
pub struct GenerateArgs {
    /// Profile in TOML.
    #[arg(long)]
    pub profile: PathBuf,
    /// Dataset output (JSONL). Timings and drops are written next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Override the profile seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the per-candidate solver budget.
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    /// Checkpoint directory; an interrupted run resumes from it.
    #[arg(long)]
    pub checkpoint_dir: Option<PathBuf>,
    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub family: String,
    /// Parameter as name=value; repeatable. Unset parameters take their defaults.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Seed for sampled graph data.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3600.0)]
    pub budget_seconds: f64,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// JSONL of {"id", "response"} or {"id", "submission"} lines.
    #[arg(long)]
    pub submissions: PathBuf,
    /// Verdicts output (JSONL).
    #[arg(long)]
    pub out: PathBuf,
    /// Skip the pinned re-solve and accept on the direct check alone.
    #[arg(long)]
    pub no_cross_check: bool,
    #[arg(long, default_value_t = 60.0)]
    pub budget_seconds: f64,
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// Agent configuration (JSON or TOML), e.g. {"kind": "oracle"}.
    #[arg(long)]
    pub agent: PathBuf,
    #[arg(long, default_value = "tools")]
    pub condition: Condition,
    /// Tool-round budget.
    #[arg(long, default_value_t = 8)]
    pub budget: usize,
    /// Traces output (JSONL).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Store only status and latency of tool calls.
    #[arg(long)]
    pub no_outputs: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Forced {
    /// A forced trace counts every round it used.
    Total,
    /// A forced trace counts up to its last execute round.
    LastExecute,
}

#[derive(Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub traces: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub k: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Forced::Total)]
    pub forced: Forced,
    /// Row label; defaults to the file stem.
    #[arg(long)]
    pub label: Option<String>,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args)]
pub struct ReportArgs {
    /// Trace files, one run each.
    #[arg(long, required = true, num_args = 1..)]
    pub traces: Vec<PathBuf>,
    /// Output directory for CSV tables and summary.txt.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub k: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Forced::Total)]
    pub forced: Forced,
}

#[derive(Args)]
pub struct AdmitArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    /// Trace or verdict files, one per cohort member.
    #[arg(long, required = true, num_args = 1..)]
    pub cohort: Vec<PathBuf>,
    /// Admitted dataset output (JSONL).
    #[arg(long)]
    pub out: PathBuf,
}

/// A failed command and its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Solver(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Solver(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Solver(m) => m,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.cmd {
        Cmd::Generate(a) => commands::generate(a),
        Cmd::Certify(a) => commands::certify(a),
        Cmd::Verify(a) => commands::verify(a),
        Cmd::Evaluate(a) => commands::evaluate(a),
        Cmd::Replay(a) => commands::replay(a),
        Cmd::Report(a) => commands::report(a),
        Cmd::Admit(a) => commands::admit(a),
        Cmd::Families => commands::families(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
