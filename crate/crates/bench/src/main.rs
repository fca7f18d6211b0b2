use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use submod::objectives::write_edge_list;
use submod::{brute_force_opt, check_submodular, gen_er, GraphF64};
use submod_bench::runner::{build_oracle, load_graph};
use submod_bench::{run_experiment, BenchError, ExperimentConfig, ObjectiveConfig};

/// Submodular maximization experiments.
#[derive(Debug, Parser)]
#[command(name = "submod-bench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a sweep described by a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write a seeded Erdős–Rényi graph as an edge list.
    GenEr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Brute-force optimum for every budget of a small config.
    Opt {
        #[arg(long)]
        config: PathBuf,
    },
    /// Randomized submodularity and non-negativity audit.
    Check {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 25)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveArg {
    Maxcut,
    Revmax,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<(), BenchError> {
    match command {
        Command::Run { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let out = run_experiment(&cfg)?;
            println!("wrote {} rows to {}", out.rows.len(), out.runs.display());
            println!("summary in {}", out.summary.display());
        }
        Command::GenEr { n, p, seed, out } => {
            let graph: GraphF64 = gen_er(n, p, seed).map_err(|e| BenchError::Config(e.to_string()))?;
            write_edge_list(&graph, BufWriter::new(File::create(&out)?))?;
            println!("wrote {} edges to {}", graph.edge_count(), out.display());
        }
        Command::Opt { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let oracle = build_oracle(load_graph(&cfg.dataset)?, &cfg.objective)?;
            for k in cfg.budgets(oracle.ground_size())? {
                let (set, value) = brute_force_opt(&oracle, k)?;
                let ids: Vec<String> = set.iter().map(|x| x.0.to_string()).collect();
                println!("k={k} opt={value} set=[{}]", ids.join(","));
            }
        }
        Command::Check { objective, n, p, trials, seed } => {
            let objective = match objective {
                ObjectiveArg::Maxcut => ObjectiveConfig::Maxcut,
                ObjectiveArg::Revmax => ObjectiveConfig::Revmax { seed: seed.wrapping_add(1) },
            };
            let graph: GraphF64 = gen_er(n, p, seed).map_err(|e| BenchError::Config(e.to_string()))?;
            let oracle = build_oracle(graph, &objective)?;
            let report = check_submodular(&oracle, trials, seed).map_err(|e| BenchError::Config(e.to_string()))?;
            for v in report.violations.iter().take(5) {
                println!("{v:?}");
            }
            let found = report.violations.len() + report.negative_values.len();
            println!("{}: {trials} trials, {found} violations", objective.name());
            if found > 0 {
                return Err(BenchError::Runtime(format!("{found} violations found")));
            }
        }
    }
    Ok(())
}
