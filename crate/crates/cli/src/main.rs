//! `sandwich`: construct the root system of the nilradical of a very
//! special sandwich algebra from ambient root data, and verify every
//! structural claim about its Weyl groups, up to the semidirect-product
//! decomposition of the full group.
//!
//! Subcommands: `build` (construct and serialize a bundle), `verify`
//! (run the check registry against a bundle), `scan` (search a box of h*
//! candidates for class-C alignments), and `report` (build + verify in
//! one step, without touching disk).
//!
//! Exit codes: 0 success, 1 verification failure, 2 class-C rejection,
//! 64 usage or environment error. The env var SANDWICH_CAP overrides the
//! group-closure cap (it takes precedence over --cap).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sandwich_core::group::DEFAULT_CLOSURE_CAP;
use sandwich_core::roots::TypeLabel;

use sandwich_cli::bundle::{
    bundle_to_doc, center_to_doc, parse_bundle, run_pipeline, BundleDoc, CenterRejectionDoc,
    ConfigDoc, PipelineOutcome, CENTER_SCHEMA,
};
use sandwich_cli::checks::{parse_check_selection, run_checks};
use sandwich_cli::report::{build_report, render_report_text};
use sandwich_cli::scan::{render_scan_text, run_scan};

#[derive(Parser)]
#[command(name = "sandwich", version, about = "nilradical root systems and their Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the aligned system, gate on the centre, and write the
    /// bundle as JSON.
    Build {
        /// Ambient type label (A, B, C, D, E6, E7, E8, F4, G2).
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        rank: usize,
        /// Comma-separated integer coordinates of h*, one per ambient
        /// coordinate.
        #[arg(long, allow_hyphen_values = true)]
        hstar: String,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Group-closure cap (SANDWICH_CAP overrides).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run the check registry against a bundle file.
    Verify {
        #[arg(long)]
        bundle: PathBuf,
        /// Comma-separated subset of checks (default: all).
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
        /// Include elapsed time in the report (excluded from canonical
        /// output).
        #[arg(long)]
        timing: bool,
    },
    /// Enumerate integer h* candidates that pass the class-C gate.
    Scan {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        rank: usize,
        /// Coordinates range over [-bound, bound].
        #[arg(long)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify in one step.
    Report {
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        hstar: String,
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes; everything else
            // is a usage error.
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(64)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build {
            ambient,
            rank,
            hstar,
            out,
            cap,
        } => {
            let config = make_config(&ambient, rank, &hstar, cap)?;
            match run_pipeline(&config)? {
                PipelineOutcome::Rejected(center) => {
                    let doc = CenterRejectionDoc {
                        schema: CENTER_SCHEMA.to_owned(),
                        config,
                        center: center_to_doc(&center)?,
                    };
                    emit(&to_json(&doc)?, out.as_deref())?;
                    Ok(ExitCode::from(2))
                }
                PipelineOutcome::Full(pipeline) => {
                    let doc = bundle_to_doc(&config, &pipeline)?;
                    emit(&to_json(&doc)?, out.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Verify {
            bundle,
            checks,
            format,
            out,
            cap,
            timing,
        } => {
            let text = std::fs::read_to_string(&bundle)
                .with_context(|| format!("cannot read {}", bundle.display()))?;
            let doc = parse_bundle(&text)?;
            verify_and_emit(&doc, checks.as_deref(), format, out.as_deref(), cap, timing)
        }
        Command::Scan {
            ambient,
            rank,
            bound,
            format,
            out,
        } => {
            let label: TypeLabel = ambient.parse().map_err(anyhow::Error::from)?;
            let doc = run_scan(label, rank, bound)?;
            let rendered = match format {
                Format::Json => to_json(&doc)?,
                Format::Text => render_scan_text(&doc),
            };
            emit(&rendered, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            ambient,
            rank,
            hstar,
            checks,
            format,
            out,
            cap,
            timing,
        } => {
            let config = make_config(&ambient, rank, &hstar, cap)?;
            match run_pipeline(&config)? {
                PipelineOutcome::Rejected(center) => {
                    let doc = CenterRejectionDoc {
                        schema: CENTER_SCHEMA.to_owned(),
                        config,
                        center: center_to_doc(&center)?,
                    };
                    emit(&to_json(&doc)?, out.as_deref())?;
                    Ok(ExitCode::from(2))
                }
                PipelineOutcome::Full(pipeline) => {
                    let doc = bundle_to_doc(&config, &pipeline)?;
                    verify_and_emit(&doc, checks.as_deref(), format, out.as_deref(), cap, timing)
                }
            }
        }
    }
}

fn verify_and_emit(
    doc: &BundleDoc,
    checks: Option<&str>,
    format: Format,
    out: Option<&Path>,
    cap: Option<usize>,
    timing: bool,
) -> Result<ExitCode> {
    let selected = parse_check_selection(checks)?;
    let requested: Vec<String> = selected.iter().cloned().collect();
    let cap = effective_cap(cap)?;
    let started = Instant::now();
    let run = run_checks(doc, &selected, cap)?;
    let elapsed = timing.then(|| started.elapsed().as_millis() as u64);
    let report = build_report(doc, &requested, &run, elapsed);
    let rendered = match format {
        Format::Json => to_json(&report)?,
        Format::Text => render_report_text(&report),
    };
    emit(&rendered, out)?;
    Ok(if run.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn make_config(ambient: &str, rank: usize, hstar: &str, cap: Option<usize>) -> Result<ConfigDoc> {
    let h_star = parse_hstar(hstar)?;
    Ok(ConfigDoc {
        ambient_type: ambient.trim().to_ascii_uppercase(),
        rank,
        h_star,
        cap: effective_cap(cap)?,
    })
}

fn parse_hstar(s: &str) -> Result<Vec<i64>> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .with_context(|| format!("bad h* coordinate {part:?}"))
        })
        .collect::<Result<_>>()?;
    if coords.is_empty() {
        bail!("h* must have at least one coordinate");
    }
    Ok(coords)
}

/// SANDWICH_CAP beats --cap beats the library default.
fn effective_cap(flag: Option<usize>) -> Result<usize> {
    if let Ok(raw) = std::env::var("SANDWICH_CAP") {
        let cap: usize = raw
            .trim()
            .parse()
            .context("SANDWICH_CAP must be a positive integer")?;
        if cap == 0 {
            bail!("SANDWICH_CAP must be positive");
        }
        return Ok(cap);
    }
    match flag {
        Some(0) => bail!("--cap must be positive"),
        Some(n) => Ok(n),
        None => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).context("serialization failed")?;
    text.push('\n');
    Ok(text)
}

fn emit(rendered: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
