//! Offline optimum, empirical competitive ratios and closed-form bounds.

mod bounds;
mod harness;
mod ratio;
mod search;

pub use bounds::{bound_value, bounds_for, BoundKind, BoundQuery};
pub use harness::{check_upper_bounds, minimize_trace, BoundCheck};
pub use ratio::{empirical_ratio, OptSource, RatioReport};
pub use search::{
    opt_exhaustive, opt_offline, replay_witness, Decision, OracleBudget, OracleResult, WitnessStep,
};
