use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use contention::oracle::suite::Suite;
use contention_cli::analyze::{analyze, Quantity};
use contention_cli::io::{config_from_value, load_config, parse_range, read_json, write_output};
use contention_cli::simulate::{event_log_csv, record_json, simulate};
use contention_cli::{sweep, verify, EXIT_USAGE, EXIT_VERIFY_FAILED};
use serde_json::{json, Value};

/// Contention-resolution analysis and simulation for a shared radio channel.
#[derive(Parser)]
#[command(name = "contention", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print closed-form tables as CSV.
    #[command(group(ArgGroup::new("quantity").required(true).args(["two_point", "m_seq", "k_rates", "exp_opt"])))]
    Analyze {
        /// Optimal two-point success probabilities over --n.
        #[arg(long)]
        two_point: bool,
        /// The M_k recurrence up to --k (or over a range).
        #[arg(long)]
        m_seq: bool,
        /// Optimal k-point rates a_1..a_k for each k in --k.
        #[arg(long)]
        k_rates: bool,
        /// Optimal exponential-family backoff (α*, δ*) for --lambda, --u, --beta.
        #[arg(long)]
        exp_opt: bool,
        /// Station counts, e.g. `2..10`.
        #[arg(long, default_value = "2..10")]
        n: String,
        /// Transmission points: `15` means 1..15 for --m-seq; ranges allowed.
        #[arg(long, default_value = "15")]
        k: String,
        #[arg(long, default_value_t = 0.01)]
        lambda: f64,
        #[arg(long, default_value_t = 10)]
        u: u32,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run one simulation and write its JSON record.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Seed for every random draw; overrides any seed in the config.
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the event log as CSV (time, station, event).
        #[arg(long)]
        event_log: Option<PathBuf>,
        /// Record wall-clock time in the output (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
    },
    /// Sweep the optimal k-point protocol over a range of k.
    Sweep {
        /// Base config; its protocol, if any, is replaced for each k.
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "1..15")]
        k: String,
        #[arg(long, default_value_t = 1)]
        reps: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare closed forms with their oracles; exits 1 on any |z| >= 3.
    Verify {
        /// gap, clw, kpoint or all.
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Offset added to every closed form (negative control).
        #[arg(
            long,
            default_value_t = 0.0,
            hide = true,
            allow_negative_numbers = true
        )]
        perturb: f64,
    },
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze {
            two_point,
            m_seq,
            k_rates,
            exp_opt,
            n,
            k,
            lambda,
            u,
            beta,
            output,
        } => {
            let quantity = if two_point {
                Quantity::TwoPoint {
                    n: parse_range(&n)?,
                }
            } else if m_seq {
                let k = parse_range(&k)?;
                let k = if k.start() == k.end() {
                    1..=*k.end()
                } else {
                    k
                };
                Quantity::MSequence { k }
            } else if k_rates {
                Quantity::KRates {
                    k: parse_range(&k)?,
                }
            } else {
                debug_assert!(exp_opt);
                Quantity::ExpOpt { lambda, u, beta }
            };
            write_output(output.as_deref(), analyze(&quantity)?.as_bytes())?;
        }
        Command::Simulate {
            config,
            seed,
            output,
            event_log,
            timing,
        } => {
            let cfg = load_config(&config, seed)?;
            let (record, log) = simulate(&cfg, event_log.is_some(), timing)?;
            write_output(output.as_deref(), record_json(&record)?.as_bytes())?;
            if let (Some(path), Some(log)) = (event_log, log) {
                write_output(Some(&path), event_log_csv(&log)?.as_bytes())?;
            }
        }
        Command::Sweep {
            config,
            k,
            reps,
            seed,
            output,
        } => {
            let mut value = read_json(&config)?;
            let obj = value
                .as_object_mut()
                .with_context(|| format!("{}: config must be a JSON object", config.display()))?;
            obj.insert("seed".into(), Value::from(seed));
            obj.entry("protocol")
                .or_insert_with(|| json!({"kind": "k_point_discrete", "probs": [1.0]}));
            let base =
                config_from_value(value).with_context(|| format!("in {}", config.display()))?;
            let rows = sweep::run(&base, parse_range(&k)?, reps, seed)?;
            write_output(output.as_deref(), sweep::rows_to_csv(&rows)?.as_bytes())?;
        }
        Command::Verify {
            suite,
            seed,
            output,
            perturb,
        } => {
            let suite: Suite = suite.parse()?;
            let report = verify::verify(suite, seed, perturb)?;
            write_output(output.as_deref(), verify::report_jsonl(&report)?.as_bytes())?;
            let failures: Vec<_> = report.failures().collect();
            for f in &failures {
                eprintln!("FAIL {}: z = {:.3}", f.quantity, f.z_score);
            }
            eprintln!(
                "{} of {} comparisons passed",
                report.comparisons.len() - failures.len(),
                report.comparisons.len()
            );
            if !failures.is_empty() {
                return Ok(EXIT_VERIFY_FAILED as u8);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
