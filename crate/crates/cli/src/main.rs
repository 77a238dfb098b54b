use std::path::PathBuf;
use std::process::ExitCode;

use blw_cli::{cmd_check, cmd_eval, cmd_fuzz, cmd_parse, cmd_valid, thread_count, CheckInput, Verdict};
use blw_core::search::SearchBounds;
use clap::{ArgGroup, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "blw", version, about = "Basic Logic workbench: evaluation, proof checking, countermodel search")]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its tree and canonical form.
    Parse { formula: String },
    /// Evaluate a formula at a world of a model file.
    Eval {
        model: PathBuf,
        world: usize,
        formula: String,
    },
    /// Check a natural-deduction or Hilbert proof file.
    #[command(group(ArgGroup::new("system").required(true).args(["nd", "hilbert"])))]
    Check {
        #[arg(long, value_name = "FILE")]
        nd: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        hilbert: Option<PathBuf>,
        /// Write the natural-deduction translation of a Hilbert proof here.
        #[arg(long, value_name = "OUT", requires = "hilbert")]
        translate: Option<PathBuf>,
    },
    /// Search for a countermodel to a sequent.
    Valid {
        sequent: String,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_worlds: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_denom: u64,
    },
    /// Evaluate every sequent of a proof on random structures.
    Fuzz {
        proof: PathBuf,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_worlds: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_denom: u64,
    },
}

fn bounds(max_worlds: u64, max_denom: u64) -> SearchBounds {
    SearchBounds::new(max_worlds as usize, max_denom)
}

fn run(cli: Cli) -> Verdict {
    let threads = match thread_count(std::env::var("BLW_THREADS").ok().as_deref()) {
        Ok(n) => n,
        Err(e) => return Verdict::error(e),
    };
    if threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            return Verdict::error(e);
        }
    }
    match cli.command {
        Command::Parse { formula } => cmd_parse(&formula),
        Command::Eval {
            model,
            world,
            formula,
        } => cmd_eval(&model, world, &formula),
        Command::Check {
            nd,
            hilbert,
            translate,
        } => match (nd, hilbert) {
            (Some(path), _) => cmd_check(CheckInput::Nd(&path)),
            (None, Some(path)) => cmd_check(CheckInput::Hilbert {
                path: &path,
                translate: translate.as_deref(),
            }),
            (None, None) => unreachable!("clap requires one of --nd, --hilbert"),
        },
        Command::Valid {
            sequent,
            max_worlds,
            max_denom,
        } => cmd_valid(&sequent, bounds(max_worlds, max_denom)),
        Command::Fuzz {
            proof,
            trials,
            seed,
            max_worlds,
            max_denom,
        } => cmd_fuzz(&proof, trials, seed, bounds(max_worlds, max_denom)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    let verdict = run(cli);
    let out = verdict.render(as_json);
    if verdict.exit_code() == 2 && !as_json {
        eprintln!("{out}");
    } else {
        println!("{out}");
    }
    ExitCode::from(verdict.exit_code())
}
