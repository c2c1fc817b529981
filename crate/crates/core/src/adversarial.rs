//! Deterministic lower-bound arrival sequences.
//!
//! Each generator emits the exact arrival order of one construction (cheap
//! packets first, then the packets the optimum keeps) and attaches the byte
//! counts the construction predicts. The optimum values come from an
//! explicit strategy and are therefore lower bounds on the true optimum.

use std::fmt;
use std::str::FromStr;

use crate::model::{SimResult, Trace, TraceBuilder, TraceMetadata};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Greedy non-push-out under SRPT; ratio tends to `kL`.
    NpoSrptLb,
    /// Threshold push-out under SRPT; ratio tends to `L`.
    PoSrptLb,
    /// Threshold push-out under LP; ratio tends to `k`.
    PoLpLb,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::NpoSrptLb => "npo-srpt-lb",
            Family::PoSrptLb => "po-srpt-lb",
            Family::PoLpLb => "po-lp-lb",
        }
    }

    /// The ratio the construction approaches as `n` grows.
    pub fn limit(self, max_size: u32, max_cycles: u32) -> Rational {
        let (l, k) = (i64::from(max_size), i64::from(max_cycles));
        Rational::from_integer(match self {
            Family::NpoSrptLb => k * l,
            Family::PoSrptLb => l,
            Family::PoLpLb => k,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "npo-srpt-lb" => Ok(Family::NpoSrptLb),
            "po-srpt-lb" => Ok(Family::PoSrptLb),
            "po-lp-lb" => Ok(Family::PoLpLb),
            other => Err(Error::Parameter(format!("unknown family '{other}'"))),
        }
    }
}

/// Parameters and predicted byte counts of one generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdversarialFamily {
    pub family: Family,
    pub buffer: u64,
    pub max_size: u32,
    pub max_cycles: u32,
    pub n: u64,
    /// `None` when the construction leaves the online count to simulation.
    pub analytic_alg_bytes: Option<u64>,
    pub analytic_opt_bytes: u64,
}

impl AdversarialFamily {
    pub fn metadata(&self) -> TraceMetadata {
        TraceMetadata {
            family: self.family.name().to_string(),
            buffer: self.buffer,
            max_size: self.max_size,
            max_cycles: self.max_cycles,
            n: self.n,
            analytic_alg_bytes: self.analytic_alg_bytes,
            analytic_opt_bytes: Some(self.analytic_opt_bytes),
        }
    }

    /// `analytic OPT / analytic ALG`, when both are known.
    pub fn analytic_ratio(&self) -> Option<Rational> {
        self.analytic_alg_bytes
            .filter(|&a| a > 0)
            .map(|a| Rational::new(self.analytic_opt_bytes as i64, a as i64))
    }

    /// Slot at which the repeated (second-phase) arrivals start.
    fn repeat_start(&self) -> u64 {
        match self.family {
            Family::NpoSrptLb | Family::PoSrptLb => 1,
            Family::PoLpLb => u64::from(self.max_size) * u64::from(self.max_cycles - 1) + 1,
        }
    }

    fn repeat_period(&self) -> u64 {
        match self.family {
            Family::NpoSrptLb | Family::PoSrptLb => 1,
            Family::PoLpLb => u64::from(self.max_cycles),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub trace: Trace,
    pub family: AdversarialFamily,
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(msg.into()))
    }
}

fn common_checks(buffer: u64, max_size: u32) -> Result<()> {
    require(max_size >= 1, "L must be at least 1")?;
    require(buffer >= u64::from(max_size), "B must be at least L")?;
    require(buffer.is_multiple_of(u64::from(max_size)), format!("L={max_size} must divide B={buffer}"))
}

/// Slot 0: `B-L+1` one-byte `k`-cycle packets, then `B/L` `L`-byte 1-cycle
/// packets. Slots `1..=n`: one of each, in the same order.
pub fn gen_npo_srpt_lb(buffer: u64, max_size: u32, max_cycles: u32, n: u64) -> Result<Generated> {
    common_checks(buffer, max_size)?;
    require(max_cycles >= 1, "k must be at least 1")?;
    let l = u64::from(max_size);
    let mut b = TraceBuilder::new();
    b.push_many(0, buffer - l + 1, 1, max_cycles);
    b.push_many(0, buffer / l, max_size, 1);
    for t in 1..=n {
        b.push(t, 1, max_cycles).push(t, max_size, 1);
    }
    let family = AdversarialFamily {
        family: Family::NpoSrptLb,
        buffer,
        max_size,
        max_cycles,
        n,
        analytic_alg_bytes: None,
        analytic_opt_bytes: buffer + n * l,
    };
    Ok(Generated {
        trace: b.build_with(family.metadata()),
        family,
    })
}

/// Slot 0: `B-2L+1` one-byte packets, then `B/L` `L`-byte packets. Slots
/// `1..=n`: one of each. Every packet needs a single cycle.
pub fn gen_po_srpt_lb(buffer: u64, max_size: u32, n: u64) -> Result<Generated> {
    common_checks(buffer, max_size)?;
    let l = u64::from(max_size);
    require(buffer >= 2 * l, format!("B={buffer} must be at least 2L={}", 2 * l))?;
    let mut b = TraceBuilder::new();
    b.push_many(0, buffer - 2 * l + 1, 1, 1);
    b.push_many(0, buffer / l, max_size, 1);
    for t in 1..=n {
        b.push(t, 1, 1).push(t, max_size, 1);
    }
    let family = AdversarialFamily {
        family: Family::PoSrptLb,
        buffer,
        max_size,
        max_cycles: 1,
        n,
        analytic_alg_bytes: Some(buffer - 2 * l + 1 + n),
        analytic_opt_bytes: buffer + n * l,
    };
    Ok(Generated {
        trace: b.build_with(family.metadata()),
        family,
    })
}

/// Two phases.
///
/// First, `L` iterations of `k-1` slots each: iteration `i` opens with
/// `ceil(B/i)` packets of `i` bytes needing `k` cycles followed by as many
/// `i`-byte single-cycle packets. Each iteration's larger packets displace
/// whatever the previous one left behind.
///
/// Then `n` iterations, `k` slots apart, starting in the slot where the
/// online buffer first transmits: one `L`-byte `k`-cycle packet followed by
/// `k` `L`-byte single-cycle packets.
pub fn gen_po_lp_lb(buffer: u64, max_size: u32, max_cycles: u32, n: u64) -> Result<Generated> {
    common_checks(buffer, max_size)?;
    let (l, k) = (u64::from(max_size), u64::from(max_cycles));
    require(max_cycles >= 2, "k must be at least 2")?;
    require(buffer >= 2 * l, format!("B={buffer} must be at least 2L={}", 2 * l))?;
    require(n >= 1, "n must be at least 1")?;
    let mut b = TraceBuilder::new();
    for i in 1..=l {
        let slot = (i - 1) * (k - 1);
        let count = buffer.div_ceil(i);
        b.push_many(slot, count, i as u32, max_cycles);
        b.push_many(slot, count, i as u32, 1);
    }
    let start = l * (k - 1) + 1;
    for j in 0..n {
        let slot = start + j * k;
        b.push(slot, max_size, max_cycles);
        b.push_many(slot, k, max_size, 1);
    }
    let family = AdversarialFamily {
        family: Family::PoLpLb,
        buffer,
        max_size,
        max_cycles,
        n,
        analytic_alg_bytes: Some(l * n + buffer),
        analytic_opt_bytes: l * (l + 1) * (k - 1) / 2 + k * n * l + buffer,
    };
    Ok(Generated {
        trace: b.build_with(family.metadata()),
        family,
    })
}

/// Dispatches to the family's generator. `max_cycles` is ignored by
/// `po-srpt-lb`.
pub fn generate(family: Family, buffer: u64, max_size: u32, max_cycles: u32, n: u64) -> Result<Generated> {
    match family {
        Family::NpoSrptLb => gen_npo_srpt_lb(buffer, max_size, max_cycles, n),
        Family::PoSrptLb => gen_po_srpt_lb(buffer, max_size, n),
        Family::PoLpLb => gen_po_lp_lb(buffer, max_size, max_cycles, n),
    }
}

/// Slot-level comparison between a simulated online run and the byte
/// schedule the construction narrates for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationReport {
    pub expected_total: u64,
    pub actual_total: u64,
    /// `(slot, expected, actual)` for every arrival-phase slot that differs.
    pub slot_diffs: Vec<(u64, u64, u64)>,
    pub expected_drain: u64,
    pub actual_drain: u64,
}

impl DeviationReport {
    pub fn matches(&self) -> bool {
        self.expected_total == self.actual_total && self.slot_diffs.is_empty()
    }
}

impl fmt::Display for DeviationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "total: expected {} actual {}",
            self.expected_total, self.actual_total
        )?;
        for (slot, e, a) in &self.slot_diffs {
            writeln!(f, "  slot {slot}: expected {e} actual {a}")?;
        }
        write!(
            f,
            "drain after last arrival: expected {} actual {}",
            self.expected_drain, self.actual_drain
        )
    }
}

/// Compares `result` with the construction's narrated online schedule: no
/// transmissions before the repeated phase, one packet's worth per repeated
/// iteration (1 byte for `po-srpt-lb`, `L` bytes for `po-lp-lb`), and the
/// remainder of the analytic count during the final drain.
pub fn deviation_report(generated: &Generated, result: &SimResult) -> Result<DeviationReport> {
    let fam = &generated.family;
    let expected_total = fam.analytic_alg_bytes.ok_or_else(|| {
        Error::Parameter(format!("{} has no analytic online count", fam.family))
    })?;
    let per_iteration = match fam.family {
        Family::PoSrptLb => 1,
        Family::PoLpLb => u64::from(fam.max_size),
        Family::NpoSrptLb => unreachable!("no analytic online count"),
    };
    let start = fam.repeat_start();
    let period = fam.repeat_period();
    let last_arrival = generated.trace.num_slots() as u64 - 1;
    let mut slot_diffs = Vec::new();
    let mut through_arrivals = 0;
    for rec in result.per_slot_log.iter().take_while(|r| r.slot <= last_arrival) {
        let in_repeat = rec.slot >= start && (rec.slot - start).is_multiple_of(period);
        let expected = if in_repeat { per_iteration } else { 0 };
        if expected != rec.transmitted_bytes {
            slot_diffs.push((rec.slot, expected, rec.transmitted_bytes));
        }
        through_arrivals = rec.transmitted_cum;
    }
    Ok(DeviationReport {
        expected_total,
        actual_total: result.transmitted_bytes,
        slot_diffs,
        expected_drain: expected_total.saturating_sub(fam.n * per_iteration),
        actual_drain: result.transmitted_bytes - through_arrivals,
    })
}
