use std::fmt;

use crate::engine::simulate;
use crate::model::{PolicyConfig, SimResult, Trace};
use crate::oracle::{opt_offline, OracleBudget};
use crate::{Error, Rational, Result};

/// Where the optimum used in a ratio came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptSource {
    /// Exact offline search.
    Oracle,
    /// Closed form attached to a generated trace. This is the value of a
    /// constructed strategy, so it can only understate the true optimum.
    Analytic,
}

impl fmt::Display for OptSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptSource::Oracle => "oracle",
            OptSource::Analytic => "analytic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub alg_bytes: u64,
    pub opt_bytes: u64,
    pub source: OptSource,
    pub ratio: Rational,
    pub alg: SimResult,
}

/// `OPT / ALG` for `trace` under `config`. Uses the exact oracle when it
/// fits in `budget`, otherwise the trace's analytic optimum.
pub fn empirical_ratio(trace: &Trace, config: &PolicyConfig, budget: OracleBudget) -> Result<RatioReport> {
    let alg = simulate(trace, config)?;
    if alg.transmitted_bytes == 0 {
        return Err(Error::UndefinedRatio(format!(
            "{} transmitted nothing",
            config.label()
        )));
    }
    let (opt_bytes, source) = match opt_offline(trace, config.capacity, budget) {
        Ok(r) => (r.opt_bytes, OptSource::Oracle),
        Err(e @ Error::OracleInfeasible { .. }) => {
            let analytic = trace
                .metadata
                .as_ref()
                .and_then(|m| m.analytic_opt_bytes)
                .ok_or(e)?;
            (analytic, OptSource::Analytic)
        }
        Err(e) => return Err(e),
    };
    Ok(RatioReport {
        alg_bytes: alg.transmitted_bytes,
        opt_bytes,
        source,
        ratio: Rational::new(opt_bytes as i64, alg.transmitted_bytes as i64),
        alg,
    })
}
