use std::fmt::Write;

use crate::model::SimResult;
use crate::{fmt_ratio, Rational};

/// Per-slot log as CSV: `slot,occupancy,transmitted_cum,drops,pushouts`.
pub fn slot_log_csv(result: &SimResult) -> String {
    let mut out = String::from("slot,occupancy,transmitted_cum,drops,pushouts\n");
    for r in &result.per_slot_log {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.slot, r.occupancy, r.transmitted_cum, r.drops, r.pushouts
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub policy: String,
    pub alg_bytes: u64,
    pub opt_bytes: u64,
    pub opt_source: String,
    pub ratio: Rational,
    pub bound_name: String,
    pub bound: Option<Rational>,
}

/// Ratio/bound rows as CSV. Rationals are written as `p/q`.
pub fn ratio_csv(rows: &[RatioRow]) -> String {
    let mut out = String::from("policy,alg_bytes,opt_bytes,opt_source,ratio,bound_name,bound\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.policy,
            r.alg_bytes,
            r.opt_bytes,
            r.opt_source,
            fmt_ratio(&r.ratio),
            r.bound_name,
            r.bound.as_ref().map(fmt_ratio).unwrap_or_default()
        );
    }
    out
}
