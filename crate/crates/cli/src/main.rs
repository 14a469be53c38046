//! `trighyp`: certify mixed trigonometric/hyperbolic inequalities.
//!
//! Exit codes: 0 when every requested check passed, 1 when a check was
//! undecided or refuted, 2 for usage errors and unknown ids or atoms.
//! The TRIGHYP_SEED environment variable is reserved; nothing in the engine
//! is random, so it is ignored.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trighyp::error::Error;
use trighyp::exact::{parse_rational, to_sci};
use trighyp::report::{self, Format};
use trighyp::series::SeriesAtom;
use trighyp::verify::{self, RunConfig};

#[derive(Parser)]
#[command(name = "trighyp", version, about = "Prove inequalities between sin x/x, tan x/x, sinh x/x and related ratios with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Starting series order for Taylor models and enclosures.
    #[arg(long, global = true, default_value_t = 24)]
    order: usize,
    /// Width of the near-zero regime, as a rational such as 1/64.
    #[arg(long, global = true, default_value = "1/64")]
    delta: String,
    /// Maximum bisection depth per piece.
    #[arg(long, global = true, default_value_t = 40)]
    depth: u32,
    /// Largest k for the Bernoulli bound checks.
    #[arg(long, global = true, default_value_t = 100)]
    kmax: u32,
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock times in certificates (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bernoulli numbers B_2k with the bound checks at each k.
    Bernoulli { kmax: u32 },
    /// Exact Maclaurin coefficients of one atom from both construction routes.
    Series { atom: String, order: usize },
    /// Certify one registry entry, or all of them.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Tightness table on an even grid over (0, pi/2).
    Scan {
        id: String,
        n: usize,
        /// Adjacent chain pair to compare (default: first against last element).
        #[arg(long)]
        pair: Option<usize>,
    },
    /// Exact reproduction claims: coefficients, series identities, Bernoulli bounds.
    Report,
    /// List registry ids with their chains.
    List,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Indeterminate(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let cfg = RunConfig {
        series_order: cli.order,
        max_order: cli.order.max(RunConfig::default().max_order),
        delta: parse_rational(&cli.delta)?,
        bisection_depth: cli.depth,
        k_max: cli.kmax,
        jobs: cli.jobs,
        ..RunConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Runtime(e.to_string())),
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let format: Format = cli.format.parse()?;
    match &cli.command {
        Command::Bernoulli { kmax } => {
            let rows = trighyp::par::with_jobs(cli.jobs, || report::bernoulli_rows(*kmax, trighyp::bernoulli::DEFAULT_PI_DIGITS))??;
            emit(cli, &report::render_bernoulli(&rows, format))?;
            Ok(rows.iter().all(|r| r.lemma4 && r.lemma6 && r.lemma5 != Some(false) && r.lemma7 != Some(false)))
        }
        Command::Series { atom, order } => {
            let atom: SeriesAtom = atom.parse()?;
            let r = report::series_report(atom, *order);
            emit(cli, &report::render_series(&r, format))?;
            Ok(r.routes_agree)
        }
        Command::Verify { id, all } => {
            let cfg = config(cli)?;
            let mut certs = if *all { verify::verify_all(&cfg)? } else { vec![verify::verify(id.as_deref().unwrap_or_default(), &cfg)?] };
            if !cli.timings {
                certs.iter_mut().for_each(|c| c.wall_time_ms = None);
            }
            emit(cli, &report::render_certificates(&certs, format))?;
            if cli.out.is_some() && format != Format::Text {
                eprint!("{}", report::certificates_text(&certs));
            }
            Ok(certs.iter().all(|c| c.certified))
        }
        Command::Scan { id, n, pair } => {
            config(cli)?;
            let rows = verify::scan(id, *n, *pair)?;
            let text = match format {
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|r| serde_json::json!({"x": to_sci(&r.x, 30), "lhs": to_sci(&r.lhs, 30), "rhs": to_sci(&r.rhs, 30), "margin": to_sci(&r.margin, 30)}))
                        .collect();
                    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Failure::Runtime(e.to_string()))?;
                    s.push('\n');
                    s
                }
                _ => verify::scan_csv(&rows),
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Command::Report => {
            let claims = trighyp::par::with_jobs(cli.jobs, || report::exact_claims(cli.kmax))??;
            emit(cli, &report::render_claims(&claims, format))?;
            Ok(claims.iter().all(|c| c.pass))
        }
        Command::List => {
            let mut out = String::new();
            for spec in trighyp::registry::registry() {
                let chain: Vec<String> = spec.chain.iter().map(|e| e.to_string()).collect();
                let op = if spec.strict { " < " } else { " <= " };
                out.push_str(&format!("{:<22} {:<14} {}\n", spec.id, format!("{:?}", spec.domain), chain.join(op)));
            }
            emit(cli, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
