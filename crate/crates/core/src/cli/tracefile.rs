//! Line-oriented JSON trace files.
//!
//! ```text
//! {"family":"po-srpt-lb","B":8,"L":2,"k":1,"n":1,"analytic_alg_bytes":6,"analytic_opt_bytes":10}
//! {"slot":0,"packets":[{"size":1,"cycles":1},{"size":2,"cycles":1}]}
//! {"slot":1,"packets":[{"size":1,"cycles":1}]}
//! ```
//!
//! The optional metadata record must come first. Slot numbers start at 0
//! and strictly increase; missing slots have no arrivals. The writer emits
//! non-empty slots plus the final slot, so the slot count survives a round
//! trip.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::model::{Trace, TraceBuilder, TraceMetadata};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetaRecord {
    family: String,
    #[serde(rename = "B")]
    buffer: u64,
    #[serde(rename = "L")]
    max_size: u32,
    k: u32,
    n: u64,
    analytic_alg_bytes: Option<u64>,
    analytic_opt_bytes: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PacketRecord {
    size: u32,
    cycles: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotRecordLine {
    slot: u64,
    packets: Vec<PacketRecord>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::TraceParse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut metadata = None;
    let mut builder = TraceBuilder::new();
    let mut last_slot: Option<u64> = None;
    let mut seen_record = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(raw).map_err(|e| parse_err(line, e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| parse_err(line, "expected a JSON object"))?;
        if obj.contains_key("slot") {
            let rec: SlotRecordLine =
                serde_json::from_value(value).map_err(|e| parse_err(line, e.to_string()))?;
            if last_slot.is_some_and(|s| rec.slot <= s) {
                return Err(parse_err(line, format!("slot {} is not ascending", rec.slot)));
            }
            builder.ensure_slots(rec.slot as usize + 1);
            for p in rec.packets {
                if p.size == 0 || p.cycles == 0 {
                    return Err(parse_err(line, "size and cycles must be positive"));
                }
                builder.push(rec.slot, p.size, p.cycles);
            }
            last_slot = Some(rec.slot);
        } else if obj.contains_key("family") {
            if seen_record {
                return Err(parse_err(line, "metadata must be the first record"));
            }
            let m: MetaRecord =
                serde_json::from_value(value).map_err(|e| parse_err(line, e.to_string()))?;
            metadata = Some(TraceMetadata {
                family: m.family,
                buffer: m.buffer,
                max_size: m.max_size,
                max_cycles: m.k,
                n: m.n,
                analytic_alg_bytes: m.analytic_alg_bytes,
                analytic_opt_bytes: m.analytic_opt_bytes,
            });
        } else {
            return Err(parse_err(line, "record has neither \"slot\" nor \"family\""));
        }
        seen_record = true;
    }

    let mut trace = builder.build();
    trace.metadata = metadata;
    Ok(trace)
}

pub fn write_trace(trace: &Trace) -> Result<String> {
    let mut out = String::new();
    if let Some(m) = &trace.metadata {
        let rec = MetaRecord {
            family: m.family.clone(),
            buffer: m.buffer,
            max_size: m.max_size,
            k: m.max_cycles,
            n: m.n,
            analytic_alg_bytes: m.analytic_alg_bytes,
            analytic_opt_bytes: m.analytic_opt_bytes,
        };
        out.push_str(&serde_json::to_string(&rec).map_err(|e| Error::Io(e.to_string()))?);
        out.push('\n');
    }
    let last = trace.num_slots().checked_sub(1);
    for (t, slot) in trace.arrivals.iter().enumerate() {
        if slot.is_empty() && Some(t) != last {
            continue;
        }
        let rec = SlotRecordLine {
            slot: t as u64,
            packets: slot
                .iter()
                .map(|p| PacketRecord {
                    size: p.size,
                    cycles: p.required_cycles,
                })
                .collect(),
        };
        out.push_str(&serde_json::to_string(&rec).map_err(|e| Error::Io(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

/// Reads a trace from `path`, or from stdin when `path` is `-`.
pub fn load_trace(path: &Path) -> Result<Trace> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
    };
    parse_trace(&text)
}
