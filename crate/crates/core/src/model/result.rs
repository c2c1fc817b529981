use crate::Rational;

/// What happened in one slot, as observed after its arrival phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotRecord {
    pub slot: u64,
    /// Buffer occupancy right after the arrival phase.
    pub occupancy: u64,
    /// Start byte of the lowest-priority packet after arrivals (0 if empty).
    pub last_start: u64,
    pub transmitted_bytes: u64,
    pub transmitted_cum: u64,
    /// Arrivals rejected outright (NPO).
    pub drops: u64,
    /// Packets dropped by push-out, including arrivals dropped immediately.
    pub pushouts: u64,
    /// Whether the processor did work in phase three.
    pub processed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimResult {
    pub transmitted_bytes: u64,
    pub transmitted_packets: u64,
    pub accepted_bytes: u64,
    pub pushed_out_bytes: u64,
    pub rejected_count: u64,
    pub pushed_out_count: u64,
    pub slots_run: u64,
    pub per_slot_log: Vec<SlotRecord>,
}

impl SimResult {
    /// Average size of the transmitted packets (`L_a`). Undefined when
    /// nothing was transmitted.
    pub fn avg_transmitted_len(&self) -> Option<Rational> {
        (self.transmitted_packets > 0).then(|| {
            Rational::new(self.transmitted_bytes as i64, self.transmitted_packets as i64)
        })
    }
}
