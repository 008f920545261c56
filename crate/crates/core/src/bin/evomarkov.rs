use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use evomarkov::cli::{self, AnalyzeOptions, EstimateMode, Format};
use evomarkov::matrix::{MarkovChain, DEFAULT_TOL};
use evomarkov::structure::DEFAULT_CLOSED_SETS_CAP;
use evomarkov::Result;

#[derive(Parser)]
#[command(name = "evomarkov", version, about = "Analyze a matrix as a Markov chain, evolution algebra and weighted digraph")]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// Matrix file (comma-separated rows, optional `labels:` first line)
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Row-stochastic tolerance
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Coefficients with magnitude at most this are not edges
    #[arg(long, global = true, default_value_t = 0.0)]
    zero_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Largest dimension for which closed sets are enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSED_SETS_CAP)]
    closed_sets_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Transition,
    Return,
}

#[derive(Subcommand)]
enum Command {
    /// Full structural report
    Analyze {
        /// Also check walk sums against matrix powers up to this length
        #[arg(long)]
        verify_walks: Option<usize>,
    },
    /// Markov graph in DOT syntax
    Dot {
        /// Write here instead of standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// n-th power of the matrix
    Power {
        #[arg(long)]
        n: u32,
    },
    /// Walks of a fixed length between two states
    Walks {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        length: usize,
    },
    /// Compare walk sums with matrix powers for every pair
    VerifyWalks {
        #[arg(long)]
        max_length: usize,
    },
    /// Sample one trajectory
    Simulate {
        #[arg(long)]
        start: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo estimates
    Estimate {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Steps for `transition` mode
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// State for `return` mode
        #[arg(long)]
        state: Option<String>,
        /// Horizon for `return` mode
        #[arg(long, default_value_t = 200)]
        horizon: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(args: Cli) -> Result<String> {
    let s = &args.shared;
    let input = s.input.as_ref().ok_or_else(|| evomarkov::Error::Io("--input is required".into()))?;
    let m = cli::read_matrix(input)?;
    let format = match s.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    let chain = || MarkovChain::new(m.clone(), s.tol);
    match args.command {
        Command::Analyze { verify_walks } => {
            let opts = AnalyzeOptions {
                tol: s.tol,
                zero_tol: s.zero_tol,
                closed_sets_cap: s.closed_sets_cap,
                verify_walks,
            };
            cli::run_analyze(&m, &opts, format)
        }
        Command::Dot { output } => {
            let dot = cli::run_dot(&m, s.zero_tol);
            match output {
                Some(path) => {
                    std::fs::write(&path, dot)
                        .map_err(|e| evomarkov::Error::Io(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(dot),
            }
        }
        Command::Power { n } => Ok(cli::run_power(&m, n, format)),
        Command::Walks { from, to, length } => {
            cli::run_walks(&m, &from, &to, length, s.zero_tol, format)
        }
        Command::VerifyWalks { max_length } => {
            cli::run_verify_walks(&m, max_length, s.tol, s.zero_tol, format)
        }
        Command::Simulate { start, steps, seed } => {
            cli::run_simulate(&chain()?, &start, steps, seed, format)
        }
        Command::Estimate {
            mode,
            steps,
            state,
            horizon,
            trials,
            seed,
        } => {
            let mode = match mode {
                ModeArg::Transition => EstimateMode::Transition { steps },
                ModeArg::Return => EstimateMode::Return {
                    state: state.ok_or_else(|| {
                        evomarkov::Error::Io("--state is required with --mode return".into())
                    })?,
                    horizon,
                },
            };
            cli::run_estimate(&chain()?, &mode, trials, seed, format)
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let input = args.shared.input.clone();
    match run(args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match input {
                Some(p) => eprintln!("error: {}: {e}", p.display()),
                None => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
