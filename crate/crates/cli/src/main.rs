use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use edcs_cli::commands::{gen_to_path, run_mpc, MpcAlgorithm, MpcRequest};
use edcs_cli::experiments::MpcSettings;
use edcs_cli::{parse_seeds, run_experiment, Config, Experiment, Result};

#[derive(Parser)]
#[command(name = "edcs", version, about = "EDCS coreset, MPC and streaming experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment over a seed range and write CSV.
    Run {
        #[arg(long)]
        experiment: String,
        /// Flat key=value file; missing keys take the experiment defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// `a..b` (end exclusive) or `a..=b`.
        #[arg(long, default_value = "0..10")]
        seeds: String,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated graph file.
    Gen {
        /// lowerbound | bipartite | er | regular
        generator: String,
        /// lowerbound: n k; bipartite: n_left n_right p; er: n p; regular: n d
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the MPC matching pipeline on a graph file and print a JSON report.
    Mpc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Full)]
        algorithm: Algo,
        #[arg(long, value_enum, default_value_t = Mode::Practice)]
        mode: Mode,
        /// Memory parameter in edges; defaults to n.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 16)]
        base_threshold: usize,
        #[arg(long, default_value_t = 8.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Full,
    Iterate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Theory,
    Practice,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run {
            experiment,
            config,
            seeds,
            out,
        } => {
            let exp: Experiment = experiment.parse()?;
            let cfg = match config {
                Some(p) => Config::load(p)?,
                None => Config::default(),
            };
            let table = run_experiment(exp, cfg, parse_seeds(&seeds)?)?;
            match out {
                Some(p) => table.write_csv(std::io::BufWriter::new(std::fs::File::create(p)?))?,
                None => table.write_csv(std::io::stdout().lock())?,
            }
            let v = table.violations();
            if v > 0 {
                eprintln!("{exp}: {v} invariant violations");
            }
            Ok(v == 0)
        }
        Command::Gen {
            generator,
            params,
            out,
            seed,
        } => {
            let g = gen_to_path(&generator, &params, seed, &out)?;
            eprintln!("wrote {} vertices, {} edges to {}", g.n(), g.m(), out.display());
            Ok(true)
        }
        Command::Mpc {
            input,
            algorithm,
            mode,
            s,
            base_threshold,
            alpha,
            epsilon,
            seed,
            trace_out,
        } => {
            let mut cfg = Config::default().with_default(
                "mode",
                match mode {
                    Mode::Theory => "theory",
                    Mode::Practice => "practice",
                },
            );
            cfg = cfg.with_default("base_threshold", &base_threshold.to_string());
            if let Some(s) = s {
                cfg = cfg.with_default("s", &s.to_string());
            }
            let settings = MpcSettings::from_config(&cfg)?;
            let req = MpcRequest {
                input: &input,
                settings,
                algorithm: match algorithm {
                    Algo::Full => MpcAlgorithm::Full,
                    Algo::Iterate => MpcAlgorithm::Iterate,
                },
                epsilon,
                alpha,
                seed,
                trace_out: trace_out.as_deref(),
            };
            let (report, bad) = run_mpc(&req)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(bad == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
