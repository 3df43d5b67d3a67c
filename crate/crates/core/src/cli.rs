//! Command-line front end: `run` and `analyze`.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid scenario or missing run
//! artifacts, 3 runtime failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::run::{self, AnalysisMode, RunError};
use crate::scenario::{self, Scenario, ScenarioError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "plasmodium", version, about = "Virtual plasmodium lattice simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario file or builtin and write its outputs.
    Run(RunArgs),
    /// Recompute a report from a finished run directory.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunArgs {
    /// Path to a scenario document, or the name of a builtin scenario.
    #[arg(long)]
    pub scenario: String,
    /// Output directory, created if missing
    #[arg(long)]
    pub out: PathBuf,
    /// Override the scenario seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the number of steps
    #[arg(long)]
    pub steps: Option<u64>,
    /// Write PGM frames every N steps (0 disables)
    #[arg(long = "frame-every")]
    pub frame_every: Option<u64>,
    /// Suppress progress on stderr and the summary on stdout
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, clap::Args)]
pub struct AnalyzeArgs {
    /// Directory written by `run`
    #[arg(long)]
    pub run: PathBuf,
    /// tree, voronoi, morphology or choice
    #[arg(long)]
    pub mode: String,
}

/// Resolves `--scenario` as a builtin name first, then as a file path.
pub fn resolve_scenario(spec: &str) -> Result<Scenario, ScenarioError> {
    if let Ok(s) = scenario::builtin_scenario(spec) {
        return Ok(s);
    }
    match std::fs::read_to_string(spec) {
        Ok(text) => scenario::parse_scenario(&text),
        Err(e) => Err(ScenarioError::Invalid(vec![scenario::Violation {
            path: String::new(),
            message: format!(
                "cannot read scenario \"{spec}\" ({e}); builtins are: {}",
                scenario::builtin_names().join(", ")
            ),
        }])),
    }
}

fn exit_code(err: &RunError) -> i32 {
    match err {
        RunError::Scenario(_) | RunError::Capacity(_) | RunError::Artifact { .. } => EXIT_INVALID,
        RunError::Io { .. } | RunError::Step(_) => EXIT_RUNTIME,
    }
}

pub fn run_command(args: &RunArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if args.steps == Some(0) {
        let _ = writeln!(stderr, "error: --steps must be > 0");
        return EXIT_USAGE;
    }
    let mut scenario = match resolve_scenario(&args.scenario) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    if let Some(steps) = args.steps {
        scenario.steps = steps;
    }
    if let Some(every) = args.frame_every {
        scenario.outputs.frame_every = every;
    }
    let quiet = args.quiet;
    let mut last_pct = u64::MAX;
    let result = run::run_to_dir(scenario, &args.out, |t, total| {
        let pct = (t + 1) * 100 / total;
        if !quiet && pct % 10 == 0 && pct != last_pct {
            last_pct = pct;
            let _ = writeln!(stderr, "step {}/{total}", t + 1);
        }
    });
    match result {
        Ok(report) => {
            if !quiet {
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn analyze_command(args: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mode: AnalysisMode = match args.mode.parse() {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match run::load_run(&args.run) {
        Ok(artifacts) => {
            let report = run::analyze(&artifacts, mode);
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&report).expect("json"));
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    match &cli.command {
        Command::Run(a) => run_command(a, stdout, stderr),
        Command::Analyze(a) => analyze_command(a, stdout, stderr),
    }
}
