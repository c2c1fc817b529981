//! Slotted-time simulation of a single bounded buffer that stores packets of
//! heterogeneous size (in bytes) and heterogeneous processing requirement (in
//! cycles), together with the tooling needed to measure how far an online
//! buffer-management policy falls behind a clairvoyant optimum.
//!
//! The crate is organised as follows:
//!
//!  - [`model`]: packets, traces, the byte-addressed priority buffer and the
//!    policy configuration shared by everything else.
//!  - [`policy`]: the greedy non-push-out admission rule (NPO) and the
//!    threshold push-out rule (PO).
//!  - [`engine`]: the three-phase slot loop (transmission, arrival,
//!    processing) with a work-conserving single processor.
//!  - [`ordset`]: dominance between ordered multisets and the insertion
//!    operations that preserve it.
//!  - [`oracle`]: exact offline optimum on small instances, empirical
//!    competitive ratios and closed-form bound calculators.
//!  - [`adversarial`]: deterministic lower-bound arrival sequences.
//!  - [`cli`]: trace file format, CSV output and the command implementations
//!    behind the `npsim` binary.

pub mod adversarial;
pub mod cli;
pub mod engine;
mod error;
pub mod model;
pub mod oracle;
pub mod ordset;
pub mod policy;

pub use error::{Error, Result};
pub use model::{
    Admission, BufferState, Discipline, Packet, PolicyConfig, SimResult, SlotRecord, TieBreak,
    Trace, TraceMetadata,
};

/// Exact rational used for ratios, bounds and ordered-set elements.
pub type Rational = num_rational::Ratio<i64>;

/// Renders a rational as `p/q` (always with an explicit denominator).
pub fn fmt_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders a rational as `p/q (decimal)`.
pub fn fmt_ratio_long(r: &Rational) -> String {
    format!("{} ({:.6})", fmt_ratio(r), ratio_to_f64(r))
}

pub fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
