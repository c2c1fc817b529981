use std::cmp::Ordering;

use crate::model::{Discipline, Packet, PolicyConfig, TieBreak};
use crate::{Error, Result};

/// A `B`-byte buffer holding packets sorted by priority, head first.
///
/// Byte positions are 1-indexed: the head starts at byte 1 and packet `i`
/// starts right after the last byte of packet `i-1`. Public index arguments
/// are 1-based to match that geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BufferState {
    capacity: u64,
    discipline: Discipline,
    tie_break: TieBreak,
    packets: Vec<Packet>,
    occupancy: u64,
}

impl BufferState {
    pub fn new(capacity: u64, discipline: Discipline, tie_break: TieBreak) -> Self {
        BufferState {
            capacity,
            discipline,
            tie_break,
            packets: Vec::new(),
            occupancy: 0,
        }
    }

    pub fn for_config(config: &PolicyConfig) -> Self {
        Self::new(config.capacity, config.discipline, config.tie_break)
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn discipline(&self) -> Discipline {
        self.discipline
    }

    pub fn packets(&self) -> &[Packet] {
        &self.packets
    }

    pub fn len(&self) -> usize {
        self.packets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packets.is_empty()
    }

    /// Sum of the sizes of the stored packets.
    pub fn occupancy(&self) -> u64 {
        self.occupancy
    }

    pub fn free_space(&self) -> u64 {
        self.capacity.saturating_sub(self.occupancy)
    }

    pub fn head(&self) -> Option<&Packet> {
        self.packets.first()
    }

    /// Byte at which the `index`-th packet (1-based) starts.
    pub fn start_position(&self, index: usize) -> Result<u64> {
        if index == 0 || index > self.packets.len() {
            return Err(Error::Contract(format!(
                "index {index} out of range for buffer of {} packets",
                self.packets.len()
            )));
        }
        Ok(1 + self.packets[..index - 1]
            .iter()
            .map(|p| u64::from(p.size))
            .sum::<u64>())
    }

    /// Start byte of the lowest-priority packet, if any.
    pub fn last_start_position(&self) -> Option<u64> {
        self.packets
            .last()
            .map(|last| self.occupancy - u64::from(last.size) + 1)
    }

    /// Inserts `packet` at its priority position and returns that position
    /// (1-based). Equal keys are ordered by the configured tie-break, which
    /// by default puts the arrival behind every stored equal-key packet.
    ///
    /// Capacity is not checked here; admission policies decide what stays.
    pub fn insert_by_priority(&mut self, packet: Packet) -> usize {
        let (disc, tie) = (self.discipline, self.tie_break);
        let at = self
            .packets
            .partition_point(|q| disc.cmp(tie, q, &packet) == Ordering::Less);
        self.packets.insert(at, packet);
        self.occupancy += u64::from(packet.size);
        at + 1
    }

    /// Removes and returns the `index`-th packet (1-based).
    pub fn remove(&mut self, index: usize) -> Result<Packet> {
        if index == 0 || index > self.packets.len() {
            return Err(Error::Contract(format!(
                "cannot remove index {index} from buffer of {} packets",
                self.packets.len()
            )));
        }
        let p = self.packets.remove(index - 1);
        self.occupancy -= u64::from(p.size);
        Ok(p)
    }

    /// Removes the lowest-priority packet.
    pub fn pop_last(&mut self) -> Option<Packet> {
        let p = self.packets.pop()?;
        self.occupancy -= u64::from(p.size);
        Some(p)
    }

    pub fn position_of(&self, id: u64) -> Option<usize> {
        self.packets.iter().position(|p| p.id == id).map(|i| i + 1)
    }

    /// Spends one cycle on the `index`-th packet (1-based) and restores the
    /// priority order if its key changed.
    pub fn process(&mut self, index: usize) -> Result<u64> {
        if index == 0 || index > self.packets.len() {
            return Err(Error::Contract(format!(
                "cannot process index {index} in buffer of {} packets",
                self.packets.len()
            )));
        }
        self.packets[index - 1].process()?;
        let id = self.packets[index - 1].id;
        if !self.is_sorted() {
            let p = self.packets.remove(index - 1);
            self.occupancy -= u64::from(p.size);
            self.insert_by_priority(p);
        }
        Ok(id)
    }

    /// Removes every packet whose processing is complete, preserving the
    /// order of the rest.
    pub fn take_finished(&mut self) -> Vec<Packet> {
        let (done, keep): (Vec<Packet>, Vec<Packet>) =
            self.packets.drain(..).partition(Packet::is_done);
        self.packets = keep;
        self.occupancy -= done.iter().map(|p| u64::from(p.size)).sum::<u64>();
        done
    }

    pub fn is_sorted(&self) -> bool {
        self.packets.windows(2).all(|w| {
            self.discipline.cmp(self.tie_break, &w[0], &w[1]) == Ordering::Less
        })
    }
}
