//! Checks empirical ratios against the upper bounds that apply to a run.

use crate::engine::simulate;
use crate::model::{PolicyConfig, Trace};
use crate::oracle::{bound_value, bounds_for, opt_offline, BoundKind, BoundQuery, OracleBudget};
use crate::{Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub kind: BoundKind,
    pub bound: Rational,
    pub ratio: Rational,
    pub opt_bytes: u64,
    pub alg_bytes: u64,
    pub holds: bool,
}

/// Evaluates every upper bound stated for `config`'s policy whose regime
/// holds, against the exact optimum. `max_cycles` is the `k` the bounds are
/// instantiated with.
///
/// Returns an empty list when no bound applies or nothing was transmitted by
/// either side.
pub fn check_upper_bounds(
    trace: &Trace,
    config: &PolicyConfig,
    max_cycles: u32,
    budget: OracleBudget,
) -> Result<Vec<BoundCheck>> {
    let kinds: Vec<BoundKind> = bounds_for(config.admission, config.discipline)
        .into_iter()
        .filter(|k| k.is_upper() && k.regime_holds(config.capacity, config.max_size, max_cycles))
        .collect();
    if kinds.is_empty() {
        return Ok(Vec::new());
    }
    let alg = simulate(trace, config)?;
    let opt = opt_offline(trace, config.capacity, budget)?.opt_bytes;
    if alg.transmitted_bytes == 0 {
        // a non-empty trace always lets the online policy transmit something
        assert_eq!(opt, 0, "optimum transmits but {} does not", config.label());
        return Ok(Vec::new());
    }
    let ratio = Rational::new(opt as i64, alg.transmitted_bytes as i64);
    kinds
        .into_iter()
        .map(|kind| {
            let bound = bound_value(&BoundQuery {
                kind,
                buffer: config.capacity,
                max_size: config.max_size,
                max_cycles,
                avg_len: alg.avg_transmitted_len(),
            })?;
            Ok(BoundCheck {
                kind,
                bound,
                ratio,
                opt_bytes: opt,
                alg_bytes: alg.transmitted_bytes,
                holds: ratio <= bound,
            })
        })
        .collect()
}

/// Greedily deletes packets (and trailing empty slots) from `trace` while
/// `still_fails` keeps returning true.
pub fn minimize_trace(trace: &Trace, mut still_fails: impl FnMut(&Trace) -> bool) -> Trace {
    let mut current = trace.clone();
    current.metadata = None;
    loop {
        let mut shrunk = false;
        'search: for t in 0..current.arrivals.len() {
            for i in 0..current.arrivals[t].len() {
                let mut candidate = current.clone();
                candidate.arrivals[t].remove(i);
                if still_fails(&candidate) {
                    current = candidate;
                    shrunk = true;
                    break 'search;
                }
            }
        }
        if !shrunk {
            break;
        }
    }
    while current.arrivals.last().is_some_and(Vec::is_empty) {
        current.arrivals.pop();
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Admission, Discipline};

    #[test]
    fn minimizer_keeps_only_what_the_predicate_needs() {
        let t = Trace::from(&[&[(1, 1), (3, 2)][..], &[(2, 2), (3, 1)][..], &[][..]][..]);
        let min = minimize_trace(&t, |c| c.packets().any(|p| p.size == 3 && p.required_cycles == 1));
        assert_eq!(min.num_packets(), 1);
        assert_eq!(min.num_slots(), 2);
    }

    #[test]
    fn npo_bound_checked_on_small_instance() {
        let t = Trace::from(&[&[(1, 2), (2, 1), (2, 1)][..], &[(2, 1)][..]][..]);
        let cfg = PolicyConfig::new(Admission::Npo, Discipline::Srpt, 4, 2);
        let checks = check_upper_bounds(&t, &cfg, 2, OracleBudget::default()).unwrap();
        assert_eq!(checks.len(), 1);
        assert!(checks[0].holds);
        assert_eq!(checks[0].kind, BoundKind::NpoSrptUpper);
    }
}
