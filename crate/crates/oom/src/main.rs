//! Thin command-line front end; all logic lives in the library.

use clap::{Args, Parser, Subcommand};
use oom::cli::{self, Command, RunConfig};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "oom",
    about = "Query observable operator models: probabilities, cylinder measures, \
             truncated inner products, and dimension diagnostics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: TopCommand,
}

#[derive(Args, Clone)]
struct Common {
    /// Path to the JSON model file.
    model: PathBuf,
    /// Write a machine-readable CSV report here as well.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Node cap for prefix-tree enumerations.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Fan enumeration out over first-symbol subtrees (same values).
    #[arg(long)]
    parallel: bool,
}

#[derive(Subcommand)]
enum TopCommand {
    /// Exhaustively check the model up to a depth.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Probability of one string.
    Prob {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        string: String,
    },
    /// Probability of a string conditioned on a directly preceding one.
    Cond {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        string: String,
        /// The preceding string; empty for no conditioning.
        #[arg(long, default_value = "")]
        given: String,
    },
    /// Draw sequences from the model.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Truncated inner product of two conditional futures, depth by depth.
    Inner {
        #[command(flatten)]
        common: Common,
        /// Conditioning prefix of the left future; empty for unconditioned.
        #[arg(long, default_value = "")]
        left: String,
        /// Conditioning prefix of the right future.
        #[arg(long, default_value = "")]
        right: String,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
    },
    /// Run the inner-product series until it stabilizes.
    Converge {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "")]
        left: String,
        #[arg(long, default_value = "")]
        right: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Consecutive quiet steps required.
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long, default_value_t = 20)]
        max_depth: usize,
    },
    /// Truncated Gram matrix and numerical-rank dimension estimate.
    Gram {
        #[command(flatten)]
        common: Common,
        /// Comma-separated prefixes; an empty item is the empty prefix.
        /// Defaults to all positive-probability prefixes up to length 2.
        #[arg(long)]
        prefixes: Option<String>,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 1e-8)]
        rank_tol: f64,
    },
    /// Density estimate of a conditional future along one string.
    Density {
        #[command(flatten)]
        common: Common,
        /// Conditioning prefix of the future function.
        #[arg(long, default_value = "")]
        function: String,
        /// Evaluation string; must have positive probability.
        #[arg(long)]
        prefix: String,
    },
    /// Pre-measure of a cylinder set, optionally conditioned on a prefix.
    Cylinder {
        #[command(flatten)]
        common: Common,
        /// Textual cylinder set, e.g. `2:aa,ab`; `0:` is the whole space.
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "")]
        given: String,
    },
    /// Print one of the bundled example model files.
    Example {
        /// One of iid_uniform, two_state_sticky, alternating.
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn config_from(common: Common, seed: u64, command: Command) -> RunConfig {
    RunConfig {
        model_path: common.model,
        command,
        seed,
        output: common.output,
        budget: common.budget,
        parallel: common.parallel,
    }
}

fn main() {
    let cli = Cli::parse();
    let config = match cli.command {
        TopCommand::Validate { common, depth } => {
            config_from(common, 0, Command::Validate { depth })
        }
        TopCommand::Prob { common, string } => config_from(common, 0, Command::Prob { string }),
        TopCommand::Cond {
            common,
            string,
            given,
        } => config_from(common, 0, Command::Cond { string, given }),
        TopCommand::Sample {
            common,
            length,
            count,
            seed,
        } => config_from(common, seed, Command::Sample { length, count }),
        TopCommand::Inner {
            common,
            left,
            right,
            max_depth,
        } => config_from(
            common,
            0,
            Command::Inner {
                left,
                right,
                max_depth,
            },
        ),
        TopCommand::Converge {
            common,
            left,
            right,
            tol,
            window,
            max_depth,
        } => config_from(
            common,
            0,
            Command::Converge {
                left,
                right,
                tol,
                window,
                max_depth,
            },
        ),
        TopCommand::Gram {
            common,
            prefixes,
            depth,
            rank_tol,
        } => config_from(
            common,
            0,
            Command::Gram {
                prefixes,
                depth,
                rank_tol,
            },
        ),
        TopCommand::Density {
            common,
            function,
            prefix,
        } => config_from(common, 0, Command::Density { function, prefix }),
        TopCommand::Cylinder { common, set, given } => {
            config_from(common, 0, Command::Cylinder { given, set })
        }
        TopCommand::Example { name, output } => {
            match cli::generate_example(&name) {
                Ok(json) => {
                    if let Some(path) = output {
                        if let Err(e) = std::fs::write(&path, json + "\n") {
                            eprintln!("error: {}: {e}", path.display());
                            std::process::exit(1);
                        }
                    } else {
                        println!("{json}");
                    }
                    return;
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    std::process::exit(cli::exit_code(&e));
                }
            }
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = cli::run(&config, &mut out) {
        eprintln!("error: {e}");
        std::process::exit(cli::exit_code(&e));
    }
}
