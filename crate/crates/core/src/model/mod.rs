//! Domain types shared by every other module.

mod buffer;
pub(crate) mod config;
mod packet;
mod result;
mod trace;

pub use buffer::BufferState;
pub use config::{Admission, Discipline, PolicyConfig, TieBreak};
pub use packet::Packet;
pub use result::{SimResult, SlotRecord};
pub use trace::{Trace, TraceBuilder, TraceMetadata};
