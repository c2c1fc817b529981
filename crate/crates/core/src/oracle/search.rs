//! Exact offline optimum for small traces.
//!
//! The optimum is searched over non-preemptive, work-conserving schedules:
//! every arrival is accepted (if it fits) or rejected, accepted packets are
//! never dropped, and each slot the processor serves some stored packet.
//! Since nothing is ever dropped after admission and there are no
//! deadlines, every accepted packet is eventually transmitted; once the
//! last arrival has been decided the remaining value is just the bytes in
//! the buffer.
//!
//! Packets are identified only by `(size, residual)` inside the search, so a
//! state is a decision point plus a sorted multiset of such pairs. States are
//! expanded layer by layer (decision points are totally ordered in time) and
//! values are filled in backwards.

use std::collections::{HashMap, HashSet};

use crate::engine::{self, Controller, EngineState};
use crate::model::{BufferState, Discipline, Packet, TieBreak, Trace};
use crate::policy::AdmissionOutcome;
use crate::{Error, Result};

/// Limits on the search effort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_states: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_states: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Accept(u64),
    Reject(u64),
    Process(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WitnessStep {
    pub slot: u64,
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub opt_bytes: u64,
    pub explored_states: u64,
    pub witness: Option<Vec<WitnessStep>>,
}

/// Sorted `(size, residual)` pairs.
type Canon = Vec<(u32, u32)>;

#[derive(Debug, Clone, Copy)]
enum Point {
    Arrive(usize, usize),
    Process(usize),
}

fn decision_points(trace: &Trace) -> Vec<Point> {
    let Some(last) = trace.arrivals.iter().rposition(|s| !s.is_empty()) else {
        return Vec::new();
    };
    let mut points = Vec::new();
    for t in 0..=last {
        for i in 0..trace.arrivals[t].len() {
            points.push(Point::Arrive(t, i));
        }
        if t < last {
            points.push(Point::Process(t));
        }
    }
    points
}

fn occupancy(buf: &Canon) -> u64 {
    buf.iter().map(|&(s, _)| u64::from(s)).sum()
}

fn with_packet(buf: &Canon, p: (u32, u32)) -> Canon {
    let mut b = buf.clone();
    let at = b.partition_point(|x| *x <= p);
    b.insert(at, p);
    b
}

/// Processes one packet of class `buf[idx]`, then removes finished packets
/// (the next slot's transmission phase). Returns the new state and the bytes
/// transmitted.
fn process_class(buf: &Canon, idx: usize) -> (Canon, u64) {
    let mut b = buf.clone();
    b[idx].1 -= 1;
    let sent: u64 = b.iter().filter(|x| x.1 == 0).map(|x| u64::from(x.0)).sum();
    b.retain(|x| x.1 > 0);
    b.sort_unstable();
    (b, sent)
}

/// Indices of the first member of each distinct class.
fn distinct_classes(buf: &Canon) -> impl Iterator<Item = usize> + '_ {
    (0..buf.len()).filter(move |&i| i == 0 || buf[i] != buf[i - 1])
}

enum Move {
    Next(Canon, u64),
    Accept(Canon),
}

fn successors(trace: &Trace, capacity: u64, point: Point, buf: &Canon) -> Vec<(Move, Option<usize>)> {
    match point {
        Point::Arrive(t, i) => {
            let p = &trace.arrivals[t][i];
            let mut v = vec![(Move::Next(buf.clone(), 0), None)];
            if occupancy(buf) + u64::from(p.size) <= capacity {
                v.push((Move::Accept(with_packet(buf, (p.size, p.required_cycles))), None));
            }
            v
        }
        Point::Process(_) => {
            if buf.is_empty() {
                vec![(Move::Next(Vec::new(), 0), None)]
            } else {
                distinct_classes(buf)
                    .map(|i| {
                        let (b, sent) = process_class(buf, i);
                        (Move::Next(b, sent), Some(i))
                    })
                    .collect()
            }
        }
    }
}

fn target(m: &Move) -> (&Canon, u64) {
    match m {
        Move::Next(b, r) => (b, *r),
        Move::Accept(b) => (b, 0),
    }
}

/// Exact offline optimum of `trace` for a `capacity`-byte buffer, with a
/// witness schedule that reproduces it.
pub fn opt_offline(trace: &Trace, capacity: u64, budget: OracleBudget) -> Result<OracleResult> {
    trace.validate()?;
    let points = decision_points(trace);
    if points.is_empty() {
        return Ok(OracleResult {
            opt_bytes: 0,
            explored_states: 0,
            witness: Some(Vec::new()),
        });
    }

    // forward: reachable states per decision point
    let mut layers: Vec<HashSet<Canon>> = Vec::with_capacity(points.len() + 1);
    layers.push(HashSet::from([Vec::new()]));
    let mut explored: u64 = 1;
    for (i, &point) in points.iter().enumerate() {
        let mut next = HashSet::new();
        for buf in &layers[i] {
            for (m, _) in successors(trace, capacity, point, buf) {
                next.insert(target(&m).0.clone());
            }
        }
        explored += next.len() as u64;
        if explored > budget.max_states {
            return Err(Error::OracleInfeasible {
                budget: budget.max_states,
            });
        }
        layers.push(next);
    }

    // backward: value = bytes transmitted from this point on
    let mut values: Vec<HashMap<Canon, u64>> = vec![HashMap::new(); points.len() + 1];
    values[points.len()] = layers[points.len()]
        .iter()
        .map(|b| (b.clone(), occupancy(b)))
        .collect();
    for i in (0..points.len()).rev() {
        let mut vals = HashMap::with_capacity(layers[i].len());
        for buf in &layers[i] {
            let best = successors(trace, capacity, points[i], buf)
                .iter()
                .map(|(m, _)| {
                    let (b, r) = target(m);
                    r + values[i + 1][b]
                })
                .max()
                .expect("every state has a successor");
            vals.insert(buf.clone(), best);
        }
        values[i] = vals;
    }
    let opt_bytes = values[0][&Vec::new()];

    let witness = reconstruct(trace, capacity, &points, &values);
    Ok(OracleResult {
        opt_bytes,
        explored_states: explored,
        witness: Some(witness),
    })
}

fn reconstruct(
    trace: &Trace,
    capacity: u64,
    points: &[Point],
    values: &[HashMap<Canon, u64>],
) -> Vec<WitnessStep> {
    let mut steps = Vec::new();
    let mut canon: Canon = Vec::new();
    let mut actual: Vec<Packet> = Vec::new();
    for (i, &point) in points.iter().enumerate() {
        let here = values[i][&canon];
        let succ = successors(trace, capacity, point, &canon);
        let (m, class) = succ
            .into_iter()
            .rev() // prefer accepting on ties
            .find(|(m, _)| {
                let (b, r) = target(m);
                r + values[i + 1][b] == here
            })
            .expect("optimal successor exists");
        match point {
            Point::Arrive(t, j) => {
                let p = trace.arrivals[t][j];
                let decision = if matches!(m, Move::Accept(_)) {
                    actual.push(p);
                    Decision::Accept(p.id)
                } else {
                    Decision::Reject(p.id)
                };
                steps.push(WitnessStep {
                    slot: t as u64,
                    decision,
                });
            }
            Point::Process(t) => {
                if let Some(c) = class {
                    let (size, res) = canon[c];
                    let k = actual
                        .iter()
                        .position(|p| p.size == size && p.residual_cycles == res)
                        .expect("class present in actual buffer");
                    actual[k].residual_cycles -= 1;
                    steps.push(WitnessStep {
                        slot: t as u64,
                        decision: Decision::Process(actual[k].id),
                    });
                    actual.retain(|p| p.residual_cycles > 0);
                }
            }
        }
        canon = target(&m).0.clone();
    }
    steps
}

/// Plain exhaustive search over the same schedule space, tracking concrete
/// packets and branching on every stored packet. No memoisation and no
/// symmetry reduction: this is the cross-check for [`opt_offline`].
pub fn opt_exhaustive(trace: &Trace, capacity: u64, max_leaves: u64) -> Result<u64> {
    trace.validate()?;
    let mut leaves = 0;
    let mut buf = Vec::new();
    exhaustive_from(trace, capacity, 0, 0, &mut buf, &mut leaves, max_leaves)
}

fn exhaustive_from(
    trace: &Trace,
    capacity: u64,
    slot: usize,
    cursor: usize,
    buf: &mut Vec<Packet>,
    leaves: &mut u64,
    max_leaves: u64,
) -> Result<u64> {
    if slot >= trace.num_slots() {
        *leaves += 1;
        if *leaves > max_leaves {
            return Err(Error::OracleInfeasible { budget: max_leaves });
        }
        // nothing is ever dropped, so the drain transmits everything stored
        return Ok(buf.iter().map(|p| u64::from(p.size)).sum());
    }
    let arrivals = &trace.arrivals[slot];
    if cursor < arrivals.len() {
        let p = arrivals[cursor];
        let mut best = exhaustive_from(trace, capacity, slot, cursor + 1, buf, leaves, max_leaves)?;
        let used: u64 = buf.iter().map(|q| u64::from(q.size)).sum();
        if used + u64::from(p.size) <= capacity {
            buf.push(p);
            let v = exhaustive_from(trace, capacity, slot, cursor + 1, buf, leaves, max_leaves)?;
            buf.pop();
            best = best.max(v);
        }
        return Ok(best);
    }
    // phase 3 of `slot`, then phase 1 of `slot + 1`
    let next = |buf: &mut Vec<Packet>, leaves: &mut u64| -> Result<u64> {
        let (done, mut rest): (Vec<Packet>, Vec<Packet>) =
            buf.iter().copied().partition(|p| p.residual_cycles == 0);
        let sent: u64 = done.iter().map(|p| u64::from(p.size)).sum();
        Ok(sent + exhaustive_from(trace, capacity, slot + 1, 0, &mut rest, leaves, max_leaves)?)
    };
    if buf.is_empty() {
        return next(buf, leaves);
    }
    let mut best = 0;
    for k in 0..buf.len() {
        buf[k].residual_cycles -= 1;
        best = best.max(next(buf, leaves)?);
        buf[k].residual_cycles += 1;
    }
    Ok(best)
}

/// Replays a witness through the engine's phase semantics.
struct WitnessController {
    accept: HashMap<u64, bool>,
    process: HashMap<u64, u64>,
}

impl Controller for WitnessController {
    fn admit(&mut self, buffer: &mut BufferState, packet: Packet) -> Result<AdmissionOutcome> {
        let accept = *self.accept.get(&packet.id).ok_or_else(|| {
            Error::Contract(format!("witness has no decision for packet {}", packet.id))
        })?;
        if !accept {
            return Ok(AdmissionOutcome {
                rejected: true,
                ..Default::default()
            });
        }
        if u64::from(packet.size) > buffer.free_space() {
            return Err(Error::Contract(format!(
                "witness accepts packet {} without room",
                packet.id
            )));
        }
        buffer.insert_by_priority(packet);
        Ok(AdmissionOutcome {
            accepted: true,
            ..Default::default()
        })
    }

    fn select(&mut self, slot: u64, buffer: &BufferState) -> Result<usize> {
        match self.process.get(&slot) {
            Some(&id) => buffer.position_of(id).ok_or_else(|| {
                Error::Contract(format!("witness processes absent packet {id} in slot {slot}"))
            }),
            None => Ok(1),
        }
    }
}

/// Runs `trace` with admissions and processing dictated by `witness` and
/// returns the bytes transmitted.
pub fn replay_witness(trace: &Trace, capacity: u64, witness: &[WitnessStep]) -> Result<u64> {
    let mut ctl = WitnessController {
        accept: HashMap::new(),
        process: HashMap::new(),
    };
    for step in witness {
        match step.decision {
            Decision::Accept(id) => {
                ctl.accept.insert(id, true);
            }
            Decision::Reject(id) => {
                ctl.accept.insert(id, false);
            }
            Decision::Process(id) => {
                ctl.process.insert(step.slot, id);
            }
        }
    }
    let buffer = BufferState::new(capacity, Discipline::Srpt, TieBreak::ArrivalOrder);
    let result = engine::run(trace, EngineState::with_controller(buffer, ctl))?;
    Ok(result.transmitted_bytes)
}
