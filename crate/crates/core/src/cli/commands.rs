use std::fmt::Write;
use std::path::PathBuf;

use crate::adversarial::{generate, Family};
use crate::cli::{ratio_csv, slot_log_csv, write_trace, RatioRow};
use crate::engine::simulate;
use crate::model::{Admission, Discipline, PolicyConfig, Trace};
use crate::oracle::{bound_value, bounds_for, empirical_ratio, BoundQuery, OracleBudget};
use crate::{fmt_ratio_long, Error, Rational, Result};

/// Policy flags shared by `simulate` and `ratio`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyArgs {
    pub policy: Admission,
    pub priority: Discipline,
    pub buffer: u64,
    /// Required for PO; NPO falls back to the largest packet in the trace.
    pub max_size: Option<u32>,
}

impl PolicyArgs {
    fn config(&self, trace: &Trace) -> Result<PolicyConfig> {
        let max_size = match (self.policy, self.max_size) {
            (_, Some(l)) => l,
            (Admission::Po, None) => {
                return Err(Error::Usage("--max-size is required with --policy po".into()))
            }
            (Admission::Npo, None) => trace.max_size().unwrap_or(1),
        };
        if let Some(big) = trace.packets().find(|p| p.size > max_size) {
            return Err(Error::Usage(format!(
                "packet {} has size {} > L={max_size}",
                big.id, big.size
            )));
        }
        let config = PolicyConfig::new(self.policy, self.priority, self.buffer, max_size);
        config.validate().map_err(|e| match e {
            Error::Config(msg) => Error::Usage(msg),
            other => other,
        })?;
        Ok(config)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulateArgs {
    pub policy: PolicyArgs,
    pub csv: Option<PathBuf>,
}

pub fn cmd_simulate(trace: &Trace, args: &SimulateArgs) -> Result<String> {
    trace.validate()?;
    let config = args.policy.config(trace)?;
    let r = simulate(trace, &config)?;
    if let Some(path) = &args.csv {
        std::fs::write(path, slot_log_csv(&r))?;
    }
    let mut out = String::new();
    let _ = writeln!(out, "policy: {}", config.label());
    let _ = writeln!(out, "buffer: {}", config.capacity);
    let _ = writeln!(out, "max_size: {}", config.max_size);
    let _ = writeln!(out, "transmitted_bytes={}", r.transmitted_bytes);
    let _ = writeln!(out, "transmitted_packets={}", r.transmitted_packets);
    let la = r
        .avg_transmitted_len()
        .map(|la| fmt_ratio_long(&la))
        .unwrap_or_else(|| "undefined".into());
    let _ = writeln!(out, "avg_transmitted_len={la}");
    let _ = writeln!(out, "rejected={}", r.rejected_count);
    let _ = writeln!(out, "pushed_out={}", r.pushed_out_count);
    let _ = writeln!(out, "pushed_out_bytes={}", r.pushed_out_bytes);
    let _ = writeln!(out, "slots={}", r.slots_run);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenArgs {
    pub family: Family,
    pub buffer: u64,
    pub max_size: u32,
    pub max_cycles: Option<u32>,
    pub slots: u64,
    pub out: Option<PathBuf>,
}

/// Generates a trace. Returns the trace text, or a one-line summary when it
/// was written to `out`.
pub fn cmd_gen(args: &GenArgs) -> Result<String> {
    let k = match (args.family, args.max_cycles) {
        (_, Some(k)) => k,
        (Family::PoSrptLb, None) => 1,
        (f, None) => return Err(Error::Usage(format!("--max-cycles is required for {f}"))),
    };
    let g = generate(args.family, args.buffer, args.max_size, k, args.slots)?;
    let text = write_trace(&g.trace)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(format!(
                "wrote {} ({} records) to {}\n",
                args.family,
                text.lines().count(),
                path.display()
            ))
        }
        None => Ok(text),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioArgs {
    pub policy: PolicyArgs,
    /// `k` used for bound evaluation; defaults to the trace metadata, then
    /// to the largest requirement in the trace.
    pub max_cycles: Option<u32>,
    pub oracle_budget: u64,
    pub csv: Option<PathBuf>,
}

pub fn cmd_ratio(trace: &Trace, args: &RatioArgs) -> Result<String> {
    trace.validate()?;
    let config = args.policy.config(trace)?;
    let k = args
        .max_cycles
        .or_else(|| trace.metadata.as_ref().map(|m| m.max_cycles))
        .or_else(|| trace.max_cycles())
        .unwrap_or(1);
    let report = empirical_ratio(
        trace,
        &config,
        OracleBudget {
            max_states: args.oracle_budget,
        },
    )?;

    let mut out = String::new();
    let _ = writeln!(out, "policy: {}", config.label());
    let _ = writeln!(out, "alg_bytes={}", report.alg_bytes);
    let _ = writeln!(out, "opt_bytes={} (source: {})", report.opt_bytes, report.source);
    let _ = writeln!(out, "ratio={}", fmt_ratio_long(&report.ratio));

    let mut rows = Vec::new();
    let kinds: Vec<_> = bounds_for(config.admission, config.discipline)
        .into_iter()
        .filter(|b| b.is_upper())
        .collect();
    if kinds.is_empty() {
        let _ = writeln!(out, "no upper bound stated for {}", config.label());
    }
    for kind in kinds {
        let q = BoundQuery {
            kind,
            buffer: config.capacity,
            max_size: config.max_size,
            max_cycles: k,
            avg_len: report.alg.avg_transmitted_len(),
        };
        let bound = match bound_value(&q) {
            Ok(v) => {
                let status = if report.ratio <= v { "holds" } else { "VIOLATED" };
                let _ = writeln!(out, "bound {kind} [{}]: {} {status}", kind.formula(), fmt_ratio_long(&v));
                Some(v)
            }
            Err(_) => {
                let _ = writeln!(out, "bound {kind} [{}]: not in regime ({})", kind.formula(), kind.regime());
                None
            }
        };
        rows.push(RatioRow {
            policy: config.label(),
            alg_bytes: report.alg_bytes,
            opt_bytes: report.opt_bytes,
            opt_source: report.source.to_string(),
            ratio: report.ratio,
            bound_name: kind.to_string(),
            bound,
        });
    }
    if let Some(path) = &args.csv {
        if rows.is_empty() {
            rows.push(RatioRow {
                policy: config.label(),
                alg_bytes: report.alg_bytes,
                opt_bytes: report.opt_bytes,
                opt_source: report.source.to_string(),
                ratio: report.ratio,
                bound_name: String::new(),
                bound: None,
            });
        }
        std::fs::write(path, ratio_csv(&rows))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsArgs {
    pub policy: Admission,
    pub priority: Discipline,
    pub buffer: u64,
    pub max_size: u32,
    pub max_cycles: u32,
    pub avg_len: Option<Rational>,
}

/// Lists every bound stated for the policy, marking out-of-regime rows.
pub fn cmd_bounds(args: &BoundsArgs) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "bounds for {}/{} (B={}, L={}, k={})",
        args.policy, args.priority, args.buffer, args.max_size, args.max_cycles
    );
    let kinds = bounds_for(args.policy, args.priority);
    if kinds.is_empty() {
        let _ = writeln!(out, "no bounds stated for {}/{}", args.policy, args.priority);
    }
    for kind in kinds {
        let in_regime = kind.regime_holds(args.buffer, args.max_size, args.max_cycles);
        let status = if in_regime { "ok" } else { "violated" };
        let value = if !in_regime {
            "n/a".to_string()
        } else if kind.needs_avg_len() && args.avg_len.is_none() {
            "needs --la".to_string()
        } else {
            match bound_value(&BoundQuery {
                kind,
                buffer: args.buffer,
                max_size: args.max_size,
                max_cycles: args.max_cycles,
                avg_len: args.avg_len,
            }) {
                Ok(v) => fmt_ratio_long(&v),
                Err(e) => format!("error: {e}"),
            }
        };
        let asymptote = kind
            .stated_asymptote(args.max_cycles)
            .map(|a| format!(" (large-buffer value {a})"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{kind}: {value}{asymptote} [{}] regime {} {status}",
            kind.formula(),
            kind.regime()
        );
    }
    out
}

/// Parses `p/q`, an integer, or a finite decimal such as `1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Usage(format!("cannot parse '{s}' as a rational"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let sign = if s.starts_with('-') { -1 } else { 1 };
        return Ok(Rational::new(int * den + sign * frac, den));
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy(policy: Admission, priority: Discipline, buffer: u64, max_size: Option<u32>) -> PolicyArgs {
        PolicyArgs {
            policy,
            priority,
            buffer,
            max_size,
        }
    }

    #[test]
    fn simulate_single_packet_summary() {
        let t = Trace::from(&[&[(2, 2)][..]][..]);
        let out = cmd_simulate(
            &t,
            &SimulateArgs {
                policy: policy(Admission::Npo, Discipline::Srpt, 4, None),
                csv: None,
            },
        )
        .unwrap();
        assert!(out.contains("transmitted_bytes=2\n"), "{out}");
        assert!(out.contains("avg_transmitted_len=2/1"));
    }

    #[test]
    fn po_requires_max_size() {
        let t = Trace::from(&[&[(2, 2)][..]][..]);
        let args = SimulateArgs {
            policy: policy(Admission::Po, Discipline::Srpt, 8, None),
            csv: None,
        };
        assert!(matches!(cmd_simulate(&t, &args), Err(Error::Usage(_))));
    }

    #[test]
    fn po_small_buffer_is_usage_error() {
        let t = Trace::from(&[&[(2, 2)][..]][..]);
        let args = SimulateArgs {
            policy: policy(Admission::Po, Discipline::Srpt, 3, Some(2)),
            csv: None,
        };
        assert!(matches!(cmd_simulate(&t, &args), Err(Error::Usage(_))));
    }

    #[test]
    fn oversized_packet_is_usage_error() {
        let t = Trace::from(&[&[(3, 1)][..]][..]);
        let args = SimulateArgs {
            policy: policy(Admission::Po, Discipline::Srpt, 8, Some(2)),
            csv: None,
        };
        assert!(matches!(cmd_simulate(&t, &args), Err(Error::Usage(_))));
    }

    #[test]
    fn gen_record_count() {
        let text = cmd_gen(&GenArgs {
            family: Family::PoSrptLb,
            buffer: 8,
            max_size: 2,
            max_cycles: None,
            slots: 3,
            out: None,
        })
        .unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[0].contains("\"family\":\"po-srpt-lb\""));
        assert_eq!(lines.iter().filter(|l| l.contains("\"slot\"")).count(), 4);
    }

    #[test]
    fn gen_parameter_error() {
        let r = cmd_gen(&GenArgs {
            family: Family::NpoSrptLb,
            buffer: 7,
            max_size: 2,
            max_cycles: Some(2),
            slots: 3,
            out: None,
        });
        assert!(matches!(r, Err(Error::Parameter(_))));
    }

    #[test]
    fn bounds_table_npo() {
        let out = cmd_bounds(&BoundsArgs {
            policy: Admission::Npo,
            priority: Discipline::Srpt,
            buffer: 100,
            max_size: 4,
            max_cycles: 5,
            avg_len: None,
        });
        assert!(out.contains("NPO/SRPT upper: 125/6 (20.833333)"), "{out}");
        assert!(out.contains("NPO/SRPT lower: 20/1"), "{out}");
    }

    #[test]
    fn bounds_table_marks_regime() {
        let out = cmd_bounds(&BoundsArgs {
            policy: Admission::Po,
            priority: Discipline::Srpt,
            buffer: 7,
            max_size: 4,
            max_cycles: 1,
            avg_len: Some(Rational::from_integer(2)),
        });
        assert!(out.contains("PO/SRPT lower: n/a [L] regime B ≥ 2L violated"), "{out}");

        // B = 4L^2 - 2L + 1 with L = 2
        let out = cmd_bounds(&BoundsArgs {
            policy: Admission::Po,
            priority: Discipline::Srpt,
            buffer: 13,
            max_size: 2,
            max_cycles: 1,
            avg_len: Some(Rational::from_integer(1)),
        });
        assert!(out.contains("PO/SRPT upper (large buffer): 4/1 (4.000000) [2L/La] regime B > 4L²-2L ok"), "{out}");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2));
        assert_eq!(parse_rational("1.25").unwrap(), Rational::new(5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
