//! Scenario CLI for the kernel-bundle stability engine.
//!
//! Subcommands: `verdict` (classify a scenario), `window` (polarization
//! window report), `sweep` (CSV classification or claim verification over
//! parameter ranges), `oracle-scan` (grid scan against the closed forms).
//!
//! Exit codes: 0 for any verdict including inconclusive, 1 for I/O
//! problems, 2 for schema or invariant violations, 3 for a contradiction
//! between asserted facts and numerics.

mod report;
mod scenario;

use clap::{Parser, Subcommand, ValueEnum};
use kernelstab_core::oracle::{
    scan_destabilizers, scan_teixidor, sweep_claim, sweep_classify, ClaimSweep, GridSpec,
    SweepRange, Template,
};
use kernelstab_core::{classify, destabilizer_region, polarization_window, Error as CoreError};
use report::{
    render_oracle_scan_text, render_verdict_text, render_window_text, DestabilizerSection,
    OracleScanReport, WindowReport,
};
use scenario::{load_scenario, Scenario};
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Schema(String),
    Contradiction(String),
}

impl CliError {
    fn invariant(error: CoreError) -> CliError {
        match error {
            CoreError::Contradiction(c) => {
                let mut message = c.detail.clone();
                for source in &c.sources {
                    message.push_str(&format!("\n  source: {source}"));
                }
                CliError::Contradiction(format!("[{}] {message}", c.rule))
            }
            other => CliError::Schema(other.to_string()),
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Schema(_) => 2,
            CliError::Contradiction(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Schema(m) | CliError::Contradiction(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "kernelstab",
    version,
    about = "Exact-rational stability verdicts for kernel bundles on two-component nodal curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a scenario and print the verdict with its certificate chain
    Verdict {
        /// Scenario file (TOML with [curve], [pair], [hypotheses])
        file: PathBuf,
        /// Output format (default: text, or the scenario's options.format)
        #[arg(long)]
        format: Option<Format>,
    },
    /// Print the polarization window of the scenario's kernel bundle
    Window {
        file: PathBuf,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Classify tuples over parameter ranges into a CSV table, or verify
    /// the section-count claim exhaustively (--template claim)
    Sweep {
        /// Fact template: complete, star, series, grassmannian, or claim
        #[arg(long)]
        template: String,
        /// Inclusive range A..B for g1 (default 2..3; claim default 2..8)
        #[arg(long, value_parser = parse_range)]
        g1: Option<RangeInclusive<i64>>,
        /// Inclusive range for g2 (default 2..3; claim default 2..8)
        #[arg(long, value_parser = parse_range)]
        g2: Option<RangeInclusive<i64>>,
        /// Inclusive range for r (default 1..1; claim default 1..4)
        #[arg(long, value_parser = parse_range)]
        r: Option<RangeInclusive<i64>>,
        /// Inclusive range for d1 (default 1..6; ignored by claim)
        #[arg(long, value_parser = parse_range)]
        d1: Option<RangeInclusive<i64>>,
        /// Inclusive range for d2 (default 1..6; ignored by claim)
        #[arg(long, value_parser = parse_range)]
        d2: Option<RangeInclusive<i64>>,
        /// Inclusive range for k (default: per-template admissible values)
        #[arg(long, value_parser = parse_range)]
        k: Option<RangeInclusive<i64>>,
        /// Claim sweep degree cap factor: d_i in [1, factor * g_i] (default 4)
        #[arg(long, default_value_t = 4)]
        d_factor: i64,
        /// Output path for the CSV table (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a polarization grid against the closed-form window and
    /// destabilizer bounds of a scenario
    OracleScan {
        file: PathBuf,
        /// Grid denominator N; points are t/N (default 1000)
        #[arg(long)]
        grid: Option<i64>,
        #[arg(long)]
        format: Option<Format>,
    },
}

fn parse_range(text: &str) -> Result<RangeInclusive<i64>, String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad range `{text}`: expected A..B"))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad range `{text}`: expected A..B"))?;
        Ok(lo..=hi)
    } else {
        let value: i64 = text
            .trim()
            .parse()
            .map_err(|_| format!("bad range `{text}`: expected A..B or a single integer"))?;
        Ok(value..=value)
    }
}

fn resolve_format(flag: Option<Format>, scenario: &Scenario) -> Result<Format, CliError> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match scenario.format.as_deref() {
        None | Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(CliError::Schema(format!(
            "options.format must be `text` or `json`, got `{other}`"
        ))),
    }
}

fn cmd_verdict(file: PathBuf, format: Option<Format>) -> Result<(), CliError> {
    let scenario = load_scenario(&file)?;
    let format = resolve_format(format, &scenario)?;
    let verdict = classify(&scenario.pair, &scenario.curve, &scenario.hypotheses)
        .map_err(CliError::invariant)?;
    match format {
        Format::Text => print!("{}", render_verdict_text(&verdict)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&verdict).expect("verdicts serialize")
        ),
    }
    Ok(())
}

fn cmd_window(file: PathBuf, format: Option<Format>) -> Result<(), CliError> {
    let scenario = load_scenario(&file)?;
    let format = resolve_format(format, &scenario)?;
    let report = WindowReport::new(polarization_window(&scenario.pair, &scenario.curve));
    match format {
        Format::Text => print!("{}", render_window_text(&report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    template: String,
    g1: Option<RangeInclusive<i64>>,
    g2: Option<RangeInclusive<i64>>,
    r: Option<RangeInclusive<i64>>,
    d1: Option<RangeInclusive<i64>>,
    d2: Option<RangeInclusive<i64>>,
    k: Option<RangeInclusive<i64>>,
    d_factor: i64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    if template == "claim" {
        let spec = ClaimSweep::new(
            r.unwrap_or(1..=4),
            g1.unwrap_or(2..=8),
            g2.unwrap_or(2..=8),
            d_factor,
        )
        .map_err(CliError::invariant)?;
        let report = sweep_claim(&spec);
        let text = format!("{report}\n");
        if let Some(path) = out {
            std::fs::write(&path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        print!("{text}");
        if !report.is_clean() {
            return Err(CliError::Schema(
                "claim sweep found counterexamples: the implementation is inconsistent".into(),
            ));
        }
        return Ok(());
    }

    let template: Template =
        template
            .parse()
            .map_err(|e: kernelstab_core::oracle::UnknownTemplate| {
                CliError::Schema(format!("{e} (or `claim`)"))
            })?;
    let defaults = SweepRange::default_range();
    let range = SweepRange::new(
        g1.unwrap_or_else(|| defaults.g1.clone()),
        g2.unwrap_or_else(|| defaults.g2.clone()),
        r.unwrap_or_else(|| defaults.r.clone()),
        d1.unwrap_or_else(|| defaults.d1.clone()),
        d2.unwrap_or_else(|| defaults.d2.clone()),
        k,
    )
    .map_err(CliError::invariant)?;

    let summary = match &out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut writer = std::io::BufWriter::new(file);
            let summary = sweep_classify(&range, template, &mut writer)
                .map_err(|e| CliError::Io(e.to_string()))?;
            writer.flush().map_err(|e| CliError::Io(e.to_string()))?;
            summary
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let summary = sweep_classify(&range, template, &mut lock)
                .map_err(|e| CliError::Io(e.to_string()))?;
            lock.flush().map_err(|e| CliError::Io(e.to_string()))?;
            summary
        }
    };

    // Keep the CSV clean when it goes to stdout.
    match &out {
        Some(path) => println!("wrote {}\n{summary}", path.display()),
        None => eprintln!("{summary}"),
    }
    Ok(())
}

fn cmd_oracle_scan(
    file: PathBuf,
    grid: Option<i64>,
    format: Option<Format>,
) -> Result<(), CliError> {
    let scenario = load_scenario(&file)?;
    let format = resolve_format(format, &scenario)?;
    let denominator = grid.or(scenario.grid).unwrap_or(1000);
    let grid = GridSpec::new(denominator).map_err(CliError::invariant)?;

    let window = polarization_window(&scenario.pair, &scenario.curve);
    let kernel = scenario.pair.kernel_sheaf();
    let feasible = scan_teixidor(&kernel, &scenario.curve, &grid).map_err(CliError::invariant)?;
    let expected: Vec<i64> = grid
        .ts()
        .filter(|t| window.contains(&grid.weight(*t)))
        .collect();

    let destabilizer = match scan_destabilizers(&scenario.pair, &scenario.curve, &grid) {
        Ok(scan) => {
            let region = destabilizer_region(&scenario.pair, &scenario.curve)
                .map_err(CliError::invariant)?;
            let points = scan.feasible();
            let expected: Vec<i64> = grid
                .ts()
                .filter(|t| region.contains(&grid.weight(*t)))
                .collect();
            Some(DestabilizerSection {
                region,
                feasible: points.len(),
                first: points.first().copied(),
                last: points.last().copied(),
                matches_region: points == expected,
            })
        }
        Err(CoreError::SectionCountsUnknown) => None,
        Err(other) => return Err(CliError::invariant(other)),
    };

    let report = OracleScanReport {
        grid: denominator,
        window,
        teixidor_feasible: feasible.len(),
        teixidor_first: feasible.first().copied(),
        teixidor_last: feasible.last().copied(),
        teixidor_matches_window: feasible == expected,
        destabilizer,
    };
    match format {
        Format::Text => print!("{}", render_oracle_scan_text(&report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Verdict { file, format } => cmd_verdict(file, format),
        Command::Window { file, format } => cmd_window(file, format),
        Command::Sweep {
            template,
            g1,
            g2,
            r,
            d1,
            d2,
            k,
            d_factor,
            out,
        } => cmd_sweep(template, g1, g2, r, d1, d2, k, d_factor, out),
        Command::OracleScan { file, grid, format } => cmd_oracle_scan(file, grid, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {}", error.message());
            ExitCode::from(error.code())
        }
    }
}
