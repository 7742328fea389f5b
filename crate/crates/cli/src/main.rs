//! `qcert`: runs the verification suite and reports the outcome.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcert_core::suite::{run_suite, CheckId, Format, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "qcert",
    version,
    about = "Exact verification of q-supercongruences and their p-adic specializations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected checks and emit a report.
    Verify(Box<VerifyArgs>),
    /// List check ids with a one-line description.
    ListChecks,
    /// Print the statement a check tests.
    Explain { id: String },
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check ids (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Comma-separated n values for q-series checks.
    #[arg(long = "n", value_delimiter = ',', allow_negative_numbers = true)]
    n: Option<Vec<i64>>,
    /// Comma-separated primes for classical checks and the bridge.
    #[arg(long = "p", value_delimiter = ',')]
    p: Option<Vec<u64>>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<i64>,
    /// Parameter samples per grid point.
    #[arg(long)]
    samples: Option<u32>,
    /// Sampler seed; QCERT_SEED supplies a default.
    #[arg(long)]
    seed: Option<u64>,
    /// Power of p for classical checks.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    max_n: Option<i64>,
    /// Raise the top cyclotomic power of q-series moduli.
    #[arg(long)]
    extra_power: Option<u32>,
    /// json or markdown.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// TOML file with the same keys as the report's config; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

const USAGE: u8 = 2;

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qcert: {msg}");
    ExitCode::from(USAGE)
}

fn resolve(a: &VerifyArgs) -> Result<SuiteConfig, String> {
    let mut c = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let table: toml::Table =
                toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let has_seed = table.contains_key("seed");
            let mut c: SuiteConfig = table
                .try_into()
                .map_err(|e| format!("{}: {e}", path.display()))?;
            if !has_seed {
                c.seed = env_seed()?.unwrap_or(c.seed);
            }
            c
        }
        None => {
            let mut c = SuiteConfig::default();
            c.seed = env_seed()?.unwrap_or(c.seed);
            c
        }
    };
    if let Some(v) = &a.checks {
        c.checks = v.clone();
    }
    if let Some(v) = &a.n {
        c.n_list = Some(v.clone());
    }
    if let Some(v) = &a.p {
        c.p_list = Some(v.clone());
    }
    c.d = a.d.unwrap_or(c.d);
    c.r = a.r.unwrap_or(c.r);
    c.samples = a.samples.unwrap_or(c.samples);
    c.seed = a.seed.unwrap_or(c.seed);
    c.precision = a.precision.or(c.precision);
    c.max_n = a.max_n.unwrap_or(c.max_n);
    c.extra_power = a.extra_power.unwrap_or(c.extra_power);
    c.jobs = a.jobs.or(c.jobs);
    if let Some(f) = &a.format {
        c.output_format = f.parse::<Format>().map_err(|e| e.to_string())?;
    }
    Ok(c)
}

fn env_seed() -> Result<Option<u64>, String> {
    match std::env::var("QCERT_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("QCERT_SEED = `{s}` is not a 64-bit integer")),
        Err(_) => Ok(None),
    }
}

fn verify(a: &VerifyArgs) -> ExitCode {
    let config = match resolve(a) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = report.render(config.output_format);
    match &a.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                return usage(format!("{}: {e}", path.display()));
            }
        }
        None => println!("{text}"),
    }
    let s = report.summary;
    eprintln!("pass {}, fail {}, skip {}", s.pass, s.fail, s.skip);
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => verify(&a),
        Command::ListChecks => {
            for c in CheckId::all() {
                println!("{:<18} {}", c.id(), c.anchor());
            }
            ExitCode::SUCCESS
        }
        Command::Explain { id } => match id.parse::<CheckId>() {
            Ok(c) => {
                println!("{}: {}", c.id(), c.anchor());
                if let Some(s) = c.status() {
                    println!("status: {s}");
                }
                println!("\n{}", c.statement());
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
    }
}
