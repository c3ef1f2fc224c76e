use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphon_ham::harness::{
    analyze, construct, graphon_to_json, parse_graphon_json, parse_int_list, preset, rows_to_csv, run_estimate,
    EstimateConfig, EstimateMode, Target, DEFAULT_SEED, DEFAULT_TRIALS, PRESET_NAMES,
};
use graphon_ham::hamiltonicity::DEFAULT_BUDGET;
use graphon_ham::sampling::{sample_directed, RngSpec};
use graphon_ham::skeleton::DEFAULT_CYCLE_CAP;
use graphon_ham::{Error, StepGraphon};
use serde_json::{json, Map, Value};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "graphon-ham", version, about = "Hamiltonicity of random digraphs sampled from step-graphons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the condition report of a graphon as JSON.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Give up when the skeleton has more cycles than this.
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: usize,
    },
    /// Estimate p(n) by sampling; prints CSV.
    Estimate {
        #[command(flatten)]
        source: Source,
        /// Comma-separated sample sizes.
        #[arg(long = "n", value_name = "N,...")]
        n_values: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads (default: all cores). Results do not depend on it.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Decomposition)]
        mode: ModeArg,
        /// Node expansions per Hamiltonian-cycle search in cycle mode.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Allow cycle mode above n = 60.
        #[arg(long)]
        allow_large: bool,
    },
    /// Build and verify a witness on the complete partite graph K_y.
    Construct {
        #[command(flatten)]
        source: Source,
        /// Nodes per block, comma-separated.
        #[arg(long, value_name = "Y,...", allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = TargetArg::Decomposition)]
        target: TargetArg,
    },
    /// List the built-in graphons, or print one as a graphon file.
    Presets { name: Option<String> },
    /// Draw one digraph and print it as an edge list.
    Sample {
        #[command(flatten)]
        source: Source,
        #[arg(long = "n")]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
}

#[derive(Args)]
struct Source {
    /// Graphon JSON file.
    file: Option<PathBuf>,
    /// Built-in graphon instead of a file.
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Decomposition,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Decomposition,
    Cycle,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_infeasible() {
            EXIT_INFEASIBLE
        } else if matches!(e, Error::InvalidArgument(_)) {
            EXIT_USAGE
        } else {
            EXIT_PARSE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(source: &Source) -> Result<StepGraphon, Failure> {
    match (&source.file, &source.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            Ok(parse_graphon_json(&text)?)
        }
        (None, Some(name)) => Ok(preset(name)?),
        _ => Err(Failure {
            code: EXIT_USAGE,
            message: "give a graphon file or --preset NAME".into(),
        }),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize")));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { source, cycle_cap } => {
            print_json(&analyze(&load(&source)?, cycle_cap)?);
        }
        Command::Estimate {
            source,
            n_values,
            trials,
            seed,
            workers,
            mode,
            budget,
            allow_large,
        } => {
            let graphon = load(&source)?;
            let n_values = parse_int_list(&n_values)?
                .into_iter()
                .map(|n| usize::try_from(n).map_err(|_| Error::InvalidArgument(format!("negative n: {n}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let mut config = EstimateConfig::new(graphon, n_values);
            config.trials = trials;
            config.master_seed = seed;
            config.workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            config.mode = match mode {
                ModeArg::Decomposition => EstimateMode::Decomposition,
                ModeArg::Cycle => EstimateMode::Cycle,
            };
            config.budget = budget;
            config.allow_large = allow_large;
            emit(&rows_to_csv(&run_estimate(&config)?));
        }
        Command::Construct { source, y, target } => {
            let graphon = load(&source)?;
            let y = parse_int_list(&y)?;
            let target = match target {
                TargetArg::Decomposition => Target::Decomposition,
                TargetArg::Cycle => Target::Cycle,
            };
            let c = construct(&graphon, &y, target)?;
            let mut out = c.witness.to_json();
            out["block_of"] = json!(c.graph.block_of());
            emit(&format!("{out}\n"));
        }
        Command::Presets { name: Some(name) } => {
            print_json(&graphon_to_json(&preset(&name)?));
        }
        Command::Presets { name: None } => {
            let mut all = Map::new();
            for name in PRESET_NAMES {
                all.insert(name.to_string(), graphon_to_json(&preset(name)?));
            }
            print_json(&Value::Object(all));
        }
        Command::Sample {
            source,
            n,
            seed,
            trial,
        } => {
            let g = sample_directed(&load(&source)?, n, &RngSpec::new(seed, trial));
            emit(&g.to_edge_list());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
