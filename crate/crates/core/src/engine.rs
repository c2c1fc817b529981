//! The slotted-time loop.
//!
//! Every slot runs three phases in order:
//!
//!  1. transmission: packets with no residual cycles leave and are credited;
//!  2. arrival: the slot's packets are offered one at a time to the
//!     admission policy;
//!  3. processing: if the buffer is non-empty, one packet loses one cycle.
//!
//! A packet that finishes in phase 3 keeps its buffer space until phase 1 of
//! the next slot. After the last trace slot the loop keeps running with no
//! arrivals until the buffer is empty.

use crate::model::{BufferState, Packet, PolicyConfig, SimResult, SlotRecord, Trace};
use crate::policy::{self, AdmissionOutcome};
use crate::{Error, Result};

/// Decides admissions and which packet the processor serves.
///
/// [`PolicyConfig`] is the online implementation; the offline oracle replays
/// its witness schedules through the same loop with its own controller.
pub trait Controller {
    fn admit(&mut self, buffer: &mut BufferState, packet: Packet) -> Result<AdmissionOutcome>;

    /// 1-based index of the packet to process. Only called on a non-empty
    /// buffer.
    fn select(&mut self, slot: u64, buffer: &BufferState) -> Result<usize>;
}

impl Controller for PolicyConfig {
    fn admit(&mut self, buffer: &mut BufferState, packet: Packet) -> Result<AdmissionOutcome> {
        policy::admit(self, buffer, packet)
    }

    fn select(&mut self, _slot: u64, _buffer: &BufferState) -> Result<usize> {
        Ok(1)
    }
}

#[derive(Debug, Clone)]
pub struct EngineState<C = PolicyConfig> {
    clock: u64,
    buffer: BufferState,
    stats: SimResult,
    controller: C,
}

impl EngineState<PolicyConfig> {
    pub fn new(config: PolicyConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self::with_controller(BufferState::for_config(&config), config))
    }
}

impl<C: Controller> EngineState<C> {
    pub fn with_controller(buffer: BufferState, controller: C) -> Self {
        EngineState {
            clock: 0,
            buffer,
            stats: SimResult::default(),
            controller,
        }
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn buffer(&self) -> &BufferState {
        &self.buffer
    }

    pub fn stats(&self) -> &SimResult {
        &self.stats
    }

    /// Bytes accepted so far equal bytes transmitted, pushed out or still
    /// resident.
    pub fn bytes_conserved(&self) -> bool {
        self.stats.accepted_bytes
            == self.stats.transmitted_bytes + self.stats.pushed_out_bytes + self.buffer.occupancy()
    }

    /// Runs one full slot with the given arrivals.
    pub fn step(&mut self, arrivals: &[Packet]) -> Result<SlotRecord> {
        let slot = self.clock;

        let done = self.buffer.take_finished();
        let sent: u64 = done.iter().map(|p| u64::from(p.size)).sum();
        self.stats.transmitted_bytes += sent;
        self.stats.transmitted_packets += done.len() as u64;

        let (mut drops, mut pushouts) = (0, 0);
        for &p in arrivals {
            if p.arrival_slot != slot {
                return Err(Error::Contract(format!(
                    "packet {} for slot {} offered in slot {slot}",
                    p.id, p.arrival_slot
                )));
            }
            let out = self.controller.admit(&mut self.buffer, p)?;
            if out.rejected {
                drops += 1;
            } else {
                self.stats.accepted_bytes += u64::from(p.size);
            }
            pushouts += out.pushed_out.len() as u64;
            self.stats.pushed_out_bytes += out.pushed_out_bytes();
        }
        self.stats.rejected_count += drops;
        self.stats.pushed_out_count += pushouts;

        let occupancy = self.buffer.occupancy();
        let last_start = self.buffer.last_start_position().unwrap_or(0);

        let processed = !self.buffer.is_empty();
        if processed {
            let idx = self.controller.select(slot, &self.buffer)?;
            self.buffer.process(idx)?;
        }

        self.clock += 1;
        self.stats.slots_run = self.clock;
        let record = SlotRecord {
            slot,
            occupancy,
            last_start,
            transmitted_bytes: sent,
            transmitted_cum: self.stats.transmitted_bytes,
            drops,
            pushouts,
            processed,
        };
        self.stats.per_slot_log.push(record);
        Ok(record)
    }

    /// Runs empty slots until nothing is left in the buffer.
    pub fn drain(&mut self) -> Result<()> {
        while !self.buffer.is_empty() {
            self.step(&[])?;
        }
        Ok(())
    }

    pub fn finish(self) -> SimResult {
        self.stats
    }
}

/// Runs `trace` to completion under the online policy `config`.
pub fn simulate(trace: &Trace, config: &PolicyConfig) -> Result<SimResult> {
    run(trace, EngineState::new(*config)?)
}

/// Runs `trace` to completion from a prepared engine state.
pub fn run<C: Controller>(trace: &Trace, mut engine: EngineState<C>) -> Result<SimResult> {
    for slot in &trace.arrivals {
        engine.step(slot)?;
    }
    engine.drain()?;
    Ok(engine.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Admission, Discipline};
    use proptest::prelude::*;

    fn all_configs(capacity: u64, max_size: u32) -> Vec<PolicyConfig> {
        let mut v = Vec::new();
        for adm in [Admission::Npo, Admission::Po] {
            for disc in [Discipline::Srpt, Discipline::Lp] {
                let c = PolicyConfig::new(adm, disc, capacity, max_size);
                if c.validate().is_ok() {
                    v.push(c);
                }
            }
        }
        v
    }

    #[test]
    fn single_packet_is_forced() {
        let trace = Trace::from(&[&[(2, 2)][..]][..]);
        for cfg in all_configs(4, 2) {
            let r = simulate(&trace, &cfg).unwrap();
            assert_eq!(r.transmitted_bytes, 2, "{}", cfg.label());
            // processed in slots 0 and 1, leaves in phase 1 of slot 2
            assert_eq!(r.slots_run, 3);
            assert_eq!(r.per_slot_log[2].transmitted_bytes, 2);
            assert_eq!(r.per_slot_log[1].transmitted_bytes, 0);
        }
    }

    #[test]
    fn idle_step_only_advances_clock() {
        let cfg = PolicyConfig::new(Admission::Npo, Discipline::Srpt, 4, 2);
        let mut e = EngineState::new(cfg).unwrap();
        let before = e.buffer().clone();
        let rec = e.step(&[]).unwrap();
        assert_eq!(e.clock(), 1);
        assert_eq!(e.buffer(), &before);
        assert!(!rec.processed);
        assert_eq!(e.stats().transmitted_bytes, 0);
    }

    #[test]
    fn two_unit_packets() {
        let trace = Trace::from(&[&[(1, 1), (1, 1)][..]][..]);
        let cfg = PolicyConfig::new(Admission::Npo, Discipline::Srpt, 2, 1);
        let r = simulate(&trace, &cfg).unwrap();
        assert_eq!(r.transmitted_bytes, 2);
        assert_eq!(r.transmitted_packets, 2);
        let sent: Vec<u64> = r.per_slot_log.iter().map(|s| s.transmitted_bytes).collect();
        assert_eq!(sent, vec![0, 1, 1]);
    }

    #[test]
    fn empty_trace_transmits_nothing() {
        let trace = Trace::default();
        for cfg in all_configs(8, 2) {
            let r = simulate(&trace, &cfg).unwrap();
            assert_eq!(r.transmitted_bytes, 0);
            assert_eq!(r.avg_transmitted_len(), None);
        }
    }

    #[test]
    fn finished_packet_holds_space_until_next_slot() {
        // B=1: the first packet finishes in slot 0 and leaves in phase 1 of
        // slot 1, before the second one arrives.
        let trace = Trace::from(&[&[(1, 1)][..], &[(1, 1)][..]][..]);
        let cfg = PolicyConfig::new(Admission::Npo, Discipline::Srpt, 1, 1);
        assert_eq!(simulate(&trace, &cfg).unwrap().transmitted_bytes, 2);
        // two cycles: still resident when the second arrives, so it is rejected
        let trace = Trace::from(&[&[(1, 2)][..], &[(1, 1)][..]][..]);
        let r = simulate(&trace, &cfg).unwrap();
        assert_eq!(r.transmitted_bytes, 1);
        assert_eq!(r.rejected_count, 1);
    }

    #[test]
    fn po_config_error_surfaces() {
        let cfg = PolicyConfig::new(Admission::Po, Discipline::Srpt, 3, 2);
        assert!(matches!(simulate(&Trace::default(), &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn arrival_for_wrong_slot_is_rejected() {
        let cfg = PolicyConfig::new(Admission::Npo, Discipline::Srpt, 4, 2);
        let mut e = EngineState::new(cfg).unwrap();
        assert!(e.step(&[Packet::new(0, 3, 1, 1)]).is_err());
    }

    fn arb_trace() -> impl Strategy<Value = Trace> {
        prop::collection::vec(prop::collection::vec((1u32..=3, 1u32..=3), 0..4), 0..8).prop_map(
            |slots| {
                let refs: Vec<&[(u32, u32)]> = slots.iter().map(Vec::as_slice).collect();
                Trace::from(refs.as_slice())
            },
        )
    }

    proptest! {
        #[test]
        fn slot_invariants_hold(trace in arb_trace(), extra in 0u64..5) {
            let cap = 6 + extra;
            for cfg in all_configs(cap, 3) {
                let mut e = EngineState::new(cfg).unwrap();
                let mut steps: Vec<&[Packet]> = trace.arrivals.iter().map(Vec::as_slice).collect();
                let mut prev_tx = 0;
                let mut i = 0;
                loop {
                    let arrivals = steps.get(i).copied().unwrap_or(&[]);
                    if i >= steps.len() && e.buffer().is_empty() { break; }
                    let rec = e.step(arrivals).unwrap();
                    prop_assert!(e.bytes_conserved());
                    prop_assert!(rec.occupancy <= cap);
                    prop_assert_eq!(rec.processed, rec.occupancy > 0);
                    prop_assert!(rec.transmitted_cum >= prev_tx);
                    prev_tx = rec.transmitted_cum;
                    // C = 1 and every packet needs at least one cycle
                    prop_assert!(rec.transmitted_bytes <= 3);
                    prop_assert!(e.buffer().is_sorted());
                    if cfg.admission == Admission::Npo {
                        prop_assert_eq!(rec.pushouts, 0);
                    } else {
                        prop_assert!(rec.last_start <= cfg.po_threshold().unwrap());
                        prop_assert!(rec.occupancy <= cap - 3);
                    }
                    i += 1;
                }
                steps.clear();
                let a = simulate(&trace, &cfg).unwrap();
                let b = simulate(&trace, &cfg).unwrap();
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(e.finish(), a);
            }
        }
    }
}
