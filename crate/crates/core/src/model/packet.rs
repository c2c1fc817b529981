use crate::{Error, Result};

/// One unit of work: a packet of `size` bytes that needs `required_cycles`
/// processing cycles before it can leave the buffer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Packet {
    pub id: u64,
    pub arrival_slot: u64,
    pub size: u32,
    pub required_cycles: u32,
    pub residual_cycles: u32,
}

impl Packet {
    /// A fresh packet with all of its cycles still outstanding.
    pub fn new(id: u64, arrival_slot: u64, size: u32, cycles: u32) -> Self {
        Packet {
            id,
            arrival_slot,
            size,
            required_cycles: cycles,
            residual_cycles: cycles,
        }
    }

    pub fn is_done(&self) -> bool {
        self.residual_cycles == 0
    }

    /// Spends one processing cycle on this packet.
    pub fn process(&mut self) -> Result<()> {
        if self.residual_cycles == 0 {
            return Err(Error::Contract(format!(
                "packet {} has no residual cycles left",
                self.id
            )));
        }
        self.residual_cycles -= 1;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::InvalidTrace(format!("packet {} has size 0", self.id)));
        }
        if self.required_cycles == 0 {
            return Err(Error::InvalidTrace(format!(
                "packet {} requires 0 cycles",
                self.id
            )));
        }
        if self.residual_cycles > self.required_cycles {
            return Err(Error::InvalidTrace(format!(
                "packet {} has more residual than required cycles",
                self.id
            )));
        }
        Ok(())
    }
}
