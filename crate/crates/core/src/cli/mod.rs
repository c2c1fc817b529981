//! Command implementations behind the `npsim` binary, plus the trace file
//! and CSV formats they read and write.
//!
//! Commands return the text they would print so that they can be tested
//! without spawning a process.

mod commands;
mod csv;
mod tracefile;

pub use commands::{
    cmd_bounds, cmd_gen, cmd_ratio, cmd_simulate, parse_rational, BoundsArgs, GenArgs, PolicyArgs,
    RatioArgs, SimulateArgs,
};
pub use csv::{ratio_csv, slot_log_csv, RatioRow};
pub use tracefile::{load_trace, parse_trace, write_trace};
