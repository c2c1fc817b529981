use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use npsim::adversarial::Family;
use npsim::cli::{
    cmd_bounds, cmd_gen, cmd_ratio, cmd_simulate, load_trace, parse_rational, BoundsArgs, GenArgs,
    PolicyArgs, RatioArgs, SimulateArgs,
};
use npsim::{Admission, Discipline, Error, Rational};

#[derive(Parser)]
#[command(name = "npsim", version, about = "Shared-memory buffer simulator for packets with heterogeneous size and processing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an online policy over a trace file
    Simulate {
        /// Trace file, or "-" for stdin
        trace: PathBuf,
        #[command(flatten)]
        policy: PolicyFlags,
        /// Write the per-slot log as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write an adversarial trace
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        buffer: u64,
        #[arg(long)]
        max_size: u32,
        #[arg(long)]
        max_cycles: Option<u32>,
        /// Number of repeat iterations
        #[arg(long)]
        slots: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a policy against the offline optimum
    Ratio {
        trace: PathBuf,
        #[command(flatten)]
        policy: PolicyFlags,
        #[arg(long)]
        max_cycles: Option<u32>,
        /// State budget for the exact oracle
        #[arg(long, default_value_t = 2_000_000)]
        oracle_budget: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the competitive-ratio bounds for a parameter set
    Bounds {
        #[arg(long)]
        policy: Admission,
        #[arg(long, default_value = "srpt")]
        priority: Discipline,
        #[arg(long)]
        buffer: u64,
        #[arg(long)]
        max_size: u32,
        #[arg(long, default_value_t = 1)]
        max_cycles: u32,
        /// Average transmitted packet length, as p/q or a decimal
        #[arg(long, value_parser = parse_la)]
        la: Option<Rational>,
    },
}

#[derive(Args)]
struct PolicyFlags {
    #[arg(long)]
    policy: Admission,
    #[arg(long, default_value = "srpt")]
    priority: Discipline,
    #[arg(long)]
    buffer: u64,
    #[arg(long)]
    max_size: Option<u32>,
}

impl From<PolicyFlags> for PolicyArgs {
    fn from(f: PolicyFlags) -> Self {
        PolicyArgs {
            policy: f.policy,
            priority: f.priority,
            buffer: f.buffer,
            max_size: f.max_size,
        }
    }
}

fn parse_la(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> npsim::Result<String> {
    match cli.command {
        Command::Simulate { trace, policy, csv } => {
            let trace = load_trace(&trace)?;
            cmd_simulate(
                &trace,
                &SimulateArgs {
                    policy: policy.into(),
                    csv,
                },
            )
        }
        Command::Gen {
            family,
            buffer,
            max_size,
            max_cycles,
            slots,
            out,
        } => cmd_gen(&GenArgs {
            family,
            buffer,
            max_size,
            max_cycles,
            slots,
            out,
        }),
        Command::Ratio {
            trace,
            policy,
            max_cycles,
            oracle_budget,
            csv,
        } => {
            let trace = load_trace(&trace)?;
            cmd_ratio(
                &trace,
                &RatioArgs {
                    policy: policy.into(),
                    max_cycles,
                    oracle_budget,
                    csv,
                },
            )
        }
        Command::Bounds {
            policy,
            priority,
            buffer,
            max_size,
            max_cycles,
            la,
        } => Ok(cmd_bounds(&BoundsArgs {
            policy,
            priority,
            buffer,
            max_size,
            max_cycles,
            avg_len: la,
        })),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::Regime(_) | Error::Config(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
