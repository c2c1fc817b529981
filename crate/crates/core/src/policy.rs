//! Admission policies.
//!
//! Both policies insert by the buffer's priority order. NPO only ever says
//! yes or no to the arrival; PO always inserts and then trims the
//! lowest-priority tail until the last packet starts no later than byte
//! `B - 2L + 1`, which keeps occupancy at most `B - L`.

use crate::model::{config::po_threshold, Admission, BufferState, Packet, PolicyConfig};
use crate::Result;

/// Result of offering one packet to the buffer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdmissionOutcome {
    /// The arrival is stored once the policy is done.
    pub accepted: bool,
    /// Packets dropped by this arrival, lowest priority first. Under PO this
    /// may contain the arrival itself.
    pub pushed_out: Vec<Packet>,
    /// NPO turned the arrival away without touching the buffer.
    pub rejected: bool,
}

impl AdmissionOutcome {
    pub fn pushed_out_ids(&self) -> Vec<u64> {
        self.pushed_out.iter().map(|p| p.id).collect()
    }

    pub fn pushed_out_bytes(&self) -> u64 {
        self.pushed_out.iter().map(|p| u64::from(p.size)).sum()
    }
}

/// Greedy non-push-out admission.
pub fn npo_admit(buffer: &mut BufferState, packet: Packet) -> AdmissionOutcome {
    if u64::from(packet.size) <= buffer.free_space() {
        buffer.insert_by_priority(packet);
        AdmissionOutcome {
            accepted: true,
            ..Default::default()
        }
    } else {
        AdmissionOutcome {
            rejected: true,
            ..Default::default()
        }
    }
}

/// Threshold push-out admission for maximum packet size `max_size`.
pub fn po_admit(buffer: &mut BufferState, packet: Packet, max_size: u32) -> Result<AdmissionOutcome> {
    let threshold = po_threshold(buffer.capacity(), max_size)?;
    buffer.insert_by_priority(packet);
    let mut pushed_out = Vec::new();
    while buffer.last_start_position().is_some_and(|s| s > threshold) {
        pushed_out.extend(buffer.pop_last());
    }
    let accepted = !pushed_out.iter().any(|q| q.id == packet.id);
    Ok(AdmissionOutcome {
        accepted,
        pushed_out,
        rejected: false,
    })
}

/// Dispatches on the configured admission policy.
pub fn admit(config: &PolicyConfig, buffer: &mut BufferState, packet: Packet) -> Result<AdmissionOutcome> {
    match config.admission {
        Admission::Npo => Ok(npo_admit(buffer, packet)),
        Admission::Po => po_admit(buffer, packet, config.max_size),
    }
}
