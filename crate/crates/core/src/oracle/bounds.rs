//! Closed-form competitive-ratio bounds.

use std::fmt;

use crate::model::{Admission, Discipline};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// NPO/SRPT is at most `kL * B / (B - L)` competitive.
    NpoSrptUpper,
    /// NPO/SRPT is no better than `kL` competitive.
    NpoSrptLower,
    /// PO/SRPT is at most `(4L - 2) / L_a` competitive when `B > 2L`.
    PoSrptUpper,
    /// PO/SRPT is at most `(2L - 1)(N + 1) / (N L_a)` competitive with
    /// `N = ceil((B - 2L + 1) / (2L - 1))`.
    PoSrptRefined,
    /// PO/SRPT is at most `2L / L_a` competitive when `B > 4L^2 - 2L`.
    PoSrptLargeBuffer,
    /// PO/SRPT is no better than `L` competitive.
    PoSrptLower,
    /// PO/LP is at most `(2(k+1)B + kL(L+1)) / (2(B - 2L + 1))` competitive,
    /// tending to `k + 3`; only claimed for buffers much larger than `kL(L+1)`.
    PoLpUpper,
    /// PO/LP is no better than `k` competitive.
    PoLpLower,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::NpoSrptLower,
        BoundKind::NpoSrptUpper,
        BoundKind::PoSrptLower,
        BoundKind::PoSrptUpper,
        BoundKind::PoSrptRefined,
        BoundKind::PoSrptLargeBuffer,
        BoundKind::PoLpLower,
        BoundKind::PoLpUpper,
    ];

    pub fn is_upper(self) -> bool {
        !matches!(
            self,
            BoundKind::NpoSrptLower | BoundKind::PoSrptLower | BoundKind::PoLpLower
        )
    }

    pub fn needs_avg_len(self) -> bool {
        matches!(
            self,
            BoundKind::PoSrptUpper | BoundKind::PoSrptRefined | BoundKind::PoSrptLargeBuffer
        )
    }

    pub fn policy(self) -> (Admission, Discipline) {
        match self {
            BoundKind::NpoSrptUpper | BoundKind::NpoSrptLower => (Admission::Npo, Discipline::Srpt),
            BoundKind::PoLpUpper | BoundKind::PoLpLower => (Admission::Po, Discipline::Lp),
            _ => (Admission::Po, Discipline::Srpt),
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            BoundKind::NpoSrptUpper => "kL*B/(B-L)",
            BoundKind::NpoSrptLower => "kL",
            BoundKind::PoSrptUpper => "(4L-2)/La",
            BoundKind::PoSrptRefined => "(2L-1)(N+1)/(N*La), N=ceil((B-2L+1)/(2L-1))",
            BoundKind::PoSrptLargeBuffer => "2L/La",
            BoundKind::PoSrptLower => "L",
            BoundKind::PoLpUpper => "(2(k+1)B+kL(L+1))/(2(B-2L+1)) -> k+3",
            BoundKind::PoLpLower => "k",
        }
    }

    pub fn regime(self) -> &'static str {
        match self {
            BoundKind::NpoSrptUpper => "B > L",
            BoundKind::NpoSrptLower => "B ≥ L",
            BoundKind::PoSrptUpper | BoundKind::PoSrptRefined => "B > 2L",
            BoundKind::PoSrptLargeBuffer => "B > 4L²-2L",
            BoundKind::PoSrptLower | BoundKind::PoLpLower => "B ≥ 2L",
            BoundKind::PoLpUpper => "B ≥ 10·kL(L+1)",
        }
    }

    pub fn regime_holds(self, buffer: u64, max_size: u32, max_cycles: u32) -> bool {
        let (b, l, k) = (buffer, u64::from(max_size), u64::from(max_cycles));
        match self {
            BoundKind::NpoSrptUpper => b > l,
            BoundKind::NpoSrptLower => b >= l,
            BoundKind::PoSrptUpper | BoundKind::PoSrptRefined => b > 2 * l,
            BoundKind::PoSrptLargeBuffer => b + 2 * l > 4 * l * l,
            BoundKind::PoSrptLower | BoundKind::PoLpLower => b >= 2 * l,
            BoundKind::PoLpUpper => b >= 10 * k * l * (l + 1),
        }
    }

    /// Large-buffer value the bound is quoted as. For PO/LP this is `k + 3`;
    /// the closed form itself tends to `k + 1`, so the quoted value is looser.
    pub fn stated_asymptote(self, max_cycles: u32) -> Option<Rational> {
        match self {
            BoundKind::PoLpUpper => Some(Rational::from_integer(i64::from(max_cycles) + 3)),
            _ => None,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (adm, disc) = self.policy();
        let side = if self.is_upper() { "upper" } else { "lower" };
        let tag = match self {
            BoundKind::PoSrptRefined => " (refined)",
            BoundKind::PoSrptLargeBuffer => " (large buffer)",
            _ => "",
        };
        write!(f, "{adm}/{disc} {side}{tag}")
    }
}

/// Bounds stated for a policy/discipline pair.
pub fn bounds_for(admission: Admission, discipline: Discipline) -> Vec<BoundKind> {
    BoundKind::ALL
        .into_iter()
        .filter(|k| k.policy() == (admission, discipline))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundQuery {
    pub kind: BoundKind,
    pub buffer: u64,
    pub max_size: u32,
    pub max_cycles: u32,
    /// Average transmitted packet size of the online algorithm.
    pub avg_len: Option<Rational>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

/// Exact value of the selected closed form.
pub fn bound_value(q: &BoundQuery) -> Result<Rational> {
    if q.max_size == 0 || q.max_cycles == 0 {
        return Err(Error::Regime("L and k must be positive".into()));
    }
    if !q.kind.regime_holds(q.buffer, q.max_size, q.max_cycles) {
        return Err(Error::Regime(format!(
            "{} needs {} (B={}, L={}, k={})",
            q.kind,
            q.kind.regime(),
            q.buffer,
            q.max_size,
            q.max_cycles
        )));
    }
    let (b, l, k) = (q.buffer as i64, i64::from(q.max_size), i64::from(q.max_cycles));
    let la = if q.kind.needs_avg_len() {
        let la = q
            .avg_len
            .ok_or_else(|| Error::Regime(format!("{} needs L_a", q.kind)))?;
        if la <= Rational::from_integer(0) {
            return Err(Error::Regime("L_a must be positive".into()));
        }
        la
    } else {
        Rational::from_integer(1)
    };
    let v = match q.kind {
        BoundKind::NpoSrptUpper => Rational::new(k * l * b, b - l),
        BoundKind::NpoSrptLower => Rational::from_integer(k * l),
        BoundKind::PoSrptUpper => Rational::from_integer(4 * l - 2) / la,
        BoundKind::PoSrptRefined => {
            let n = ceil_div(b - 2 * l + 1, 2 * l - 1);
            Rational::new((2 * l - 1) * (n + 1), n) / la
        }
        BoundKind::PoSrptLargeBuffer => Rational::from_integer(2 * l) / la,
        BoundKind::PoSrptLower => Rational::from_integer(l),
        BoundKind::PoLpUpper => {
            Rational::new(2 * (k + 1) * b + k * l * (l + 1), 2 * (b - 2 * l + 1))
        }
        BoundKind::PoLpLower => Rational::from_integer(k),
    };
    Ok(v)
}
