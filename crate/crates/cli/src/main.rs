use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use panel_msfe::covariance::Bandwidth;
use panel_msfe::inference::CiMode;
use panel_msfe::simulation::{emit_table, TableFormat};
use panel_msfe_cli::commands::{analyze_report, cmd_analyze, cmd_simulate, cmd_table};
use panel_msfe_cli::config::{
    read_config, AnalyzeConfig, Command, SigmaChoice, TableConfig, Threads, DEFAULT_TABLE_SEED,
};
use panel_msfe_cli::{CliError, Result};

#[derive(Parser)]
#[command(
    name = "panel-msfe",
    version,
    about = "Pooled versus individual forecasts in panels"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the Monte Carlo study described by a config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        reps: Option<usize>,
        /// Worker threads; 0 or absent means all cores.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether pooling improves forecasts for a panel on disk.
    Analyze {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        predict: PathBuf,
        #[arg(long, default_value = "banded")]
        sigma: String,
        /// Bandwidth, or `auto`.
        #[arg(long, default_value = "auto")]
        bandwidth: String,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long)]
        fixed_effects: bool,
        #[arg(long)]
        strict_paper_ci: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate one of the built-in tables.
    Table {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 5000)]
        reps: usize,
        #[arg(long, default_value_t = DEFAULT_TABLE_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn setup_threads(threads: Threads) -> Result<()> {
    let count = match threads {
        Threads::Count(n) if n > 0 => n,
        _ => match std::env::var("PANEL_MSFE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
        {
            Some(n) if n > 0 => n,
            _ => return Ok(()),
        },
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(count)
        .build_global()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}

fn threads_arg(t: Option<usize>) -> Threads {
    match t {
        Some(n) if n > 0 => Threads::Count(n),
        _ => Threads::Auto,
    }
}

fn parse_bandwidth(s: &str) -> Result<Bandwidth> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Bandwidth::Auto);
    }
    match s.parse::<usize>() {
        Ok(b) if b >= 1 => Ok(Bandwidth::Fixed(b)),
        _ => Err(CliError::Validation(format!(
            "bandwidth must be `auto` or a positive integer, got `{s}`"
        ))),
    }
}

fn print_or_note(summary_text: String, out: &Option<PathBuf>) {
    print!("{summary_text}");
    if let Some(p) = out {
        eprintln!("wrote {}", p.display());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Cmd::Simulate {
            config,
            seed,
            reps,
            threads,
            out,
        } => {
            let cfg = read_config(&config)?;
            cfg.check_inputs()?;
            setup_threads(if threads.is_some() {
                threads_arg(threads)
            } else {
                cfg.threads
            })?;
            let out = out.or(cfg.output);
            match cfg.command {
                Command::Simulate(mut study) => {
                    if let Some(s) = seed {
                        study.scenario.seed = s;
                    }
                    if let Some(r) = reps {
                        study.scenario.reps = r;
                    }
                    study.scenario.validate().map_err(CliError::from)?;
                    let summary = cmd_simulate(&study, out.as_deref())?;
                    print_or_note(emit_table(&summary, TableFormat::Text), &out);
                }
                Command::Table(mut t) => {
                    t.seed = seed.unwrap_or(t.seed);
                    t.reps = reps.unwrap_or(t.reps);
                    let summary = cmd_table(&t, out.as_deref())?;
                    print_or_note(emit_table(&summary, TableFormat::Text), &out);
                }
                Command::Analyze(a) => {
                    let r = cmd_analyze(&a, out.as_deref())?;
                    print!("{}", analyze_report(&r));
                }
            }
        }
        Cmd::Analyze {
            panel,
            predict,
            sigma,
            bandwidth,
            alpha,
            fixed_effects,
            strict_paper_ci,
            out,
        } => {
            let mut a = AnalyzeConfig::new(panel, predict);
            a.sigma = sigma.parse::<SigmaChoice>().map_err(CliError::Validation)?;
            a.bandwidth = parse_bandwidth(&bandwidth)?;
            a.alpha = alpha;
            a.fixed_effects = fixed_effects;
            a.ci_mode = if strict_paper_ci {
                CiMode::StrictPaper
            } else {
                CiMode::Symmetric
            };
            for p in [&a.panel, &a.predict] {
                if !p.exists() {
                    return Err(CliError::Validation(format!(
                        "input file {} does not exist",
                        p.display()
                    )));
                }
            }
            let r = cmd_analyze(&a, out.as_deref())?;
            print!("{}", analyze_report(&r));
        }
        Cmd::Table {
            id,
            reps,
            seed,
            threads,
            out,
        } => {
            setup_threads(threads_arg(threads))?;
            let id = id.parse().map_err(|_| CliError::UnknownTable(id.clone()))?;
            let summary = cmd_table(&TableConfig { id, reps, seed }, out.as_deref())?;
            print_or_note(emit_table(&summary, TableFormat::Text), &out);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}
