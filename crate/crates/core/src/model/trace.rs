use std::collections::HashSet;

use crate::model::Packet;
use crate::{Error, Result};

/// Provenance of a generated trace: which construction produced it, its
/// parameters and the closed-form byte counts the construction predicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMetadata {
    pub family: String,
    pub buffer: u64,
    pub max_size: u32,
    pub max_cycles: u32,
    pub n: u64,
    pub analytic_alg_bytes: Option<u64>,
    pub analytic_opt_bytes: Option<u64>,
}

/// Slotted arrival schedule. `arrivals[t]` lists the packets arriving in
/// slot `t`, in the order they are offered to the buffer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub arrivals: Vec<Vec<Packet>>,
    pub metadata: Option<TraceMetadata>,
}

impl Trace {
    pub fn num_slots(&self) -> usize {
        self.arrivals.len()
    }

    pub fn packets(&self) -> impl Iterator<Item = &Packet> {
        self.arrivals.iter().flatten()
    }

    pub fn num_packets(&self) -> usize {
        self.arrivals.iter().map(Vec::len).sum()
    }

    pub fn total_bytes(&self) -> u64 {
        self.packets().map(|p| u64::from(p.size)).sum()
    }

    pub fn max_size(&self) -> Option<u32> {
        self.packets().map(|p| p.size).max()
    }

    pub fn max_cycles(&self) -> Option<u32> {
        self.packets().map(|p| p.required_cycles).max()
    }

    /// Checks slot consistency, id uniqueness and per-packet sanity.
    pub fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        for (t, slot) in self.arrivals.iter().enumerate() {
            for p in slot {
                p.validate()?;
                if p.arrival_slot != t as u64 {
                    return Err(Error::InvalidTrace(format!(
                        "packet {} listed in slot {t} but arrives in slot {}",
                        p.id, p.arrival_slot
                    )));
                }
                if p.residual_cycles != p.required_cycles {
                    return Err(Error::InvalidTrace(format!(
                        "packet {} arrives partially processed",
                        p.id
                    )));
                }
                if !ids.insert(p.id) {
                    return Err(Error::InvalidTrace(format!("duplicate packet id {}", p.id)));
                }
            }
        }
        Ok(())
    }
}

/// Builds a trace slot by slot, handing out monotone packet ids.
#[derive(Debug, Default)]
pub struct TraceBuilder {
    arrivals: Vec<Vec<Packet>>,
    next_id: u64,
}

impl TraceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a packet arriving in `slot`. Slots may be skipped (they stay
    /// empty) but must not go backwards relative to earlier pushes.
    pub fn push(&mut self, slot: u64, size: u32, cycles: u32) -> &mut Self {
        let t = slot as usize;
        if self.arrivals.len() <= t {
            self.arrivals.resize_with(t + 1, Vec::new);
        }
        self.arrivals[t].push(Packet::new(self.next_id, slot, size, cycles));
        self.next_id += 1;
        self
    }

    pub fn push_many(&mut self, slot: u64, count: u64, size: u32, cycles: u32) -> &mut Self {
        for _ in 0..count {
            self.push(slot, size, cycles);
        }
        self
    }

    /// Makes sure the trace covers at least `slots` slots.
    pub fn ensure_slots(&mut self, slots: usize) -> &mut Self {
        if self.arrivals.len() < slots {
            self.arrivals.resize_with(slots, Vec::new);
        }
        self
    }

    pub fn build(self) -> Trace {
        Trace {
            arrivals: self.arrivals,
            metadata: None,
        }
    }

    pub fn build_with(self, metadata: TraceMetadata) -> Trace {
        Trace {
            arrivals: self.arrivals,
            metadata: Some(metadata),
        }
    }
}

/// Shorthand for tests and examples: `slots[t]` is a list of
/// `(size, cycles)` arriving in slot `t`.
impl From<&[&[(u32, u32)]]> for Trace {
    fn from(slots: &[&[(u32, u32)]]) -> Self {
        let mut b = TraceBuilder::new();
        b.ensure_slots(slots.len());
        for (t, slot) in slots.iter().enumerate() {
            for &(size, cycles) in slot.iter() {
                b.push(t as u64, size, cycles);
            }
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_assigns_unique_ids_and_slots() {
        let mut b = TraceBuilder::new();
        b.push(0, 1, 1).push(2, 2, 3).push(2, 1, 1);
        let t = b.build();
        assert_eq!(t.num_slots(), 3);
        assert!(t.arrivals[1].is_empty());
        assert_eq!(t.num_packets(), 3);
        t.validate().unwrap();
    }

    #[test]
    fn validate_rejects_slot_mismatch_and_duplicates() {
        let mut t = Trace::from(&[&[(1, 1)][..], &[(1, 1)][..]][..]);
        t.arrivals[1][0].arrival_slot = 0;
        assert!(t.validate().is_err());

        let mut t = Trace::from(&[&[(1, 1), (2, 1)][..]][..]);
        t.arrivals[0][1].id = 0;
        assert!(t.validate().is_err());
    }
}
