use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::model::Packet;
use crate::{Error, Result};

/// Buffer-management (admission) policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Admission {
    /// Greedy non-push-out: accept iff the packet fits.
    Npo,
    /// Threshold push-out: accept, then drop lowest-priority packets that
    /// start past byte `B - 2L + 1`.
    Po,
}

/// Priority discipline. Determines both the buffer order and which packet
/// the processor serves (always the head).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Discipline {
    /// Fewest residual cycles first.
    Srpt,
    /// Largest size first.
    Lp,
}

/// How packets with equal priority keys are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Earlier arrival (then lower id) ranks higher, so an arrival lands
    /// behind every stored packet with the same key.
    #[default]
    ArrivalOrder,
    /// Later arrival ranks higher. Only used to probe how sensitive the
    /// lower-bound constructions are to the tie rule.
    NewestFirst,
}

impl Discipline {
    /// Compares the priority keys only: `Less` means `a` has strictly higher
    /// priority than `b`.
    pub fn key_cmp(self, a: &Packet, b: &Packet) -> Ordering {
        match self {
            Discipline::Srpt => a.residual_cycles.cmp(&b.residual_cycles),
            Discipline::Lp => b.size.cmp(&a.size),
        }
    }

    /// Total order used to keep the buffer sorted (head first).
    pub fn cmp(self, tie: TieBreak, a: &Packet, b: &Packet) -> Ordering {
        let arrival = (a.arrival_slot, a.id).cmp(&(b.arrival_slot, b.id));
        self.key_cmp(a, b).then(match tie {
            TieBreak::ArrivalOrder => arrival,
            TieBreak::NewestFirst => arrival.reverse(),
        })
    }
}

/// Full description of an online algorithm: admission policy, priority
/// discipline, buffer capacity `B` and maximum packet size `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolicyConfig {
    pub admission: Admission,
    pub discipline: Discipline,
    pub capacity: u64,
    pub max_size: u32,
    pub tie_break: TieBreak,
}

impl PolicyConfig {
    pub fn new(admission: Admission, discipline: Discipline, capacity: u64, max_size: u32) -> Self {
        PolicyConfig {
            admission,
            discipline,
            capacity,
            max_size,
            tie_break: TieBreak::default(),
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    /// Last byte position at which a packet may start under PO (`B-2L+1`).
    pub fn po_threshold(&self) -> Result<u64> {
        po_threshold(self.capacity, self.max_size)
    }

    pub fn validate(&self) -> Result<()> {
        if self.capacity == 0 {
            return Err(Error::Config("buffer capacity must be positive".into()));
        }
        if self.max_size == 0 {
            return Err(Error::Config("maximum packet size must be positive".into()));
        }
        if self.admission == Admission::Po {
            self.po_threshold()?;
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.admission, self.discipline)
    }
}

pub(crate) fn po_threshold(capacity: u64, max_size: u32) -> Result<u64> {
    let two_l = 2 * u64::from(max_size);
    if capacity < two_l {
        return Err(Error::Config(format!(
            "push-out requires B >= 2L (B={capacity}, L={max_size})"
        )));
    }
    Ok(capacity - two_l + 1)
}

impl fmt::Display for Admission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Admission::Npo => "NPO",
            Admission::Po => "PO",
        })
    }
}

impl fmt::Display for Discipline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Discipline::Srpt => "SRPT",
            Discipline::Lp => "LP",
        })
    }
}

impl FromStr for Admission {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "npo" => Ok(Admission::Npo),
            "po" => Ok(Admission::Po),
            other => Err(Error::Config(format!("unknown policy '{other}'"))),
        }
    }
}

impl FromStr for Discipline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "srpt" => Ok(Discipline::Srpt),
            "lp" => Ok(Discipline::Lp),
            other => Err(Error::Config(format!("unknown priority '{other}'"))),
        }
    }
}
