//! `robustpoly <command> <file>`: robust stability, SPR and sensitivity
//! checks on problem files.

mod problem;
mod run;

use clap::{Parser, Subcommand};
use run::{
    csv_text, digest, execute, exit_code, undecided_report, Envelope, ErrorBody, ErrorEnvelope,
    Failure, Options, EXIT_INDETERMINATE, EXIT_INPUT,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

const TOOL: &str = "robustpoly";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "robustpoly",
    version,
    about = "Vertex and edge criteria for uncertain polynomial families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Validate the verdict against N sampled members (plus corners and edge midpoints).
    #[arg(long, global = true, value_name = "N")]
    oracle: Option<usize>,

    /// Seed for the sampling oracle.
    #[arg(long, global = true, default_value_t = 0, value_name = "S")]
    seed: u64,

    /// Check every vertex pair instead of the reduced subsets.
    #[arg(long, global = true, visible_alias = "no-reduced-subsets")]
    full16: bool,

    /// Upper frequency for value-set grids and zero-exclusion sweeps.
    #[arg(long, global = true, value_name = "X")]
    omega_max: Option<f64>,

    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    json_indent: bool,

    /// Where `value-set` writes its CSV (default: next to the input, `.csv`).
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Any problem kind; dispatches on the file's `kind`.
    Check {
        file: PathBuf,
    },
    IntervalHurwitz {
        file: PathBuf,
    },
    TwoFamily {
        file: PathBuf,
    },
    Composite {
        file: PathBuf,
    },
    EdgeDstability {
        file: PathBuf,
    },
    CheckMatrix {
        file: PathBuf,
    },
    Spr {
        file: PathBuf,
    },
    SprOffset {
        file: PathBuf,
    },
    SensitivityMax {
        file: PathBuf,
    },
    ValueSet {
        file: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Check { .. } => "check",
            Self::IntervalHurwitz { .. } => "interval-hurwitz",
            Self::TwoFamily { .. } => "two-family",
            Self::Composite { .. } => "composite",
            Self::EdgeDstability { .. } => "edge-dstability",
            Self::CheckMatrix { .. } => "check-matrix",
            Self::Spr { .. } => "spr",
            Self::SprOffset { .. } => "spr-offset",
            Self::SensitivityMax { .. } => "sensitivity-max",
            Self::ValueSet { .. } => "value-set",
        }
    }

    /// Problem kind the command insists on, if any.
    fn kind(&self) -> Option<&'static str> {
        match self {
            Self::Check { .. } => None,
            Self::CheckMatrix { .. } => Some("matrix-family"),
            other => Some(other.name()),
        }
    }

    fn file(&self) -> &Path {
        match self {
            Self::Check { file }
            | Self::IntervalHurwitz { file }
            | Self::TwoFamily { file }
            | Self::Composite { file }
            | Self::EdgeDstability { file }
            | Self::CheckMatrix { file }
            | Self::Spr { file }
            | Self::SprOffset { file }
            | Self::SensitivityMax { file }
            | Self::ValueSet { file } => file,
        }
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("report serializes"));
}

fn input_error(command: &str, kind: &str, message: &str, pretty: bool) -> i32 {
    emit(
        &ErrorEnvelope {
            tool: TOOL,
            version: VERSION,
            command,
            error: ErrorBody { kind, message },
        },
        pretty,
    );
    EXIT_INPUT
}

fn main() {
    // Usage errors share the input-error exit code; clap's own code 2 would
    // read as an indeterminate verdict.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    let command = cli.command.name();
    let pretty = cli.json_indent;
    let path = cli.command.file();
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return input_error(command, "io", &format!("{}: {e}", path.display()), pretty),
    };
    let Ok(text) = std::str::from_utf8(&bytes) else {
        return input_error(command, "parse", "problem file is not UTF-8", pretty);
    };
    let problem = match problem::parse(text) {
        Ok(p) => p,
        Err(e) => return input_error(command, e.kind, &e.message, pretty),
    };
    if let Some(kind) = cli.command.kind() {
        if kind != problem.kind() {
            let message = format!(
                "command {command} expects kind {kind}, file has {}",
                problem.kind()
            );
            return input_error(command, "schema", &message, pretty);
        }
    }
    if cli.oracle == Some(0) {
        return input_error(
            command,
            "usage",
            "--oracle needs at least one sample",
            pretty,
        );
    }
    let opts = Options {
        oracle: cli.oracle,
        seed: cli.seed,
        full16: cli.full16,
        omega_max: cli.omega_max,
    };

    let start = Instant::now();
    let outcome = match execute(&problem, &opts) {
        Ok(o) => o,
        Err(Failure::Input(e)) => return input_error(command, e.kind, &e.message, pretty),
        Err(Failure::Undecided(message)) => {
            let report = undecided_report(command, &message);
            emit(
                &Envelope {
                    tool: TOOL,
                    version: VERSION,
                    command,
                    kind: problem.kind(),
                    input_digest: digest(&bytes),
                    report: &report,
                    result: None,
                    oracle: None,
                    timing_ms: format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
                },
                pretty,
            );
            return EXIT_INDETERMINATE;
        }
    };
    if let Some(rows) = &outcome.csv {
        let target = cli
            .csv
            .clone()
            .unwrap_or_else(|| path.with_extension("csv"));
        if let Err(e) = std::fs::write(&target, csv_text(rows)) {
            return input_error(command, "io", &format!("{}: {e}", target.display()), pretty);
        }
    }
    emit(
        &Envelope {
            tool: TOOL,
            version: VERSION,
            command,
            kind: problem.kind(),
            input_digest: digest(&bytes),
            report: &outcome.report,
            result: outcome.result.as_ref(),
            oracle: outcome.oracle.as_ref(),
            timing_ms: format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
        },
        pretty,
    );
    exit_code(outcome.report.verdict)
}
