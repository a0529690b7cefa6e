//! Upper and lower bounds on the maximum length of Armstrong codes.
//!
//! Everything is exact: binomials and φ in big integers, the closed-form
//! bound on `f(q, k)` in rationals with a bracketed square root, and the
//! local-lemma condition with rational bounds on `e`.

mod closed;
mod phi;
mod prob;
mod report;
mod universal;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use closed::{f_q2, ub_eq1, ub_f_q3, ub_improved, Eq1Bound};
pub use phi::{
    count_low_support, phi_bruteforce, phi_bruteforce_with, phi_lower_s1, varphi, PhiProfile,
    PHI_MAX_COMPOSITIONS,
};
pub use prob::{
    chernoff_b, lll_feasible, lll_lower_bound, ChernoffB, LllFeasibility, LllLowerBound,
};
pub use report::bound_report;
pub use universal::{universal_upper_bound, PhiSource, ScanStep, UniversalBound};

pub(crate) mod big_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An upper bound together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracedBound {
    #[serde(with = "big_str")]
    pub value: BigUint,
    pub trace: String,
}

/// A lower bound together with the construction witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessedBound {
    #[serde(with = "big_str")]
    pub value: BigUint,
    pub construction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// E.g. `f(5,3)` or `f_{2,2}(5,4)`.
    pub quantity: String,
    pub upper: Option<TracedBound>,
    pub lower: Option<WitnessedBound>,
    pub m_star: Option<u64>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub(crate) fn named(q: u64, k: u64, s: u64, t: u64) -> Self {
        let quantity = if (s, t) == (1, 1) {
            format!("f({q},{k})")
        } else {
            format!("f_{{{s},{t}}}({q},{k})")
        };
        BoundReport {
            quantity,
            upper: None,
            lower: None,
            m_star: None,
            notes: Vec::new(),
        }
    }

    /// Keeps the smaller of the current and the offered upper bound.
    pub(crate) fn offer_upper(&mut self, value: BigUint, trace: impl Into<String>) {
        if self.upper.as_ref().is_none_or(|u| value < u.value) {
            self.upper = Some(TracedBound {
                value,
                trace: trace.into(),
            });
        }
    }

    pub(crate) fn offer_lower(&mut self, value: BigUint, construction: impl Into<String>) {
        if self.lower.as_ref().is_none_or(|l| value > l.value) {
            self.lower = Some(WitnessedBound {
                value,
                construction: construction.into(),
            });
        }
    }

    /// Whether lower ≤ upper (vacuously true when either is absent).
    pub fn consistent(&self) -> bool {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => l.value <= u.value,
            _ => true,
        }
    }

    /// `f(q,k)=v` when the bounds meet, else the interval.
    pub fn summary(&self) -> String {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l.value == u.value => format!("{}={}", self.quantity, u.value),
            (Some(l), Some(u)) => format!("{} <= {} <= {}", l.value, self.quantity, u.value),
            (None, Some(u)) => format!("{} <= {}", self.quantity, u.value),
            (Some(l), None) => format!("{} >= {}", self.quantity, l.value),
            (None, None) => format!("{}: no bound available", self.quantity),
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        if let Some(u) = &self.upper {
            writeln!(f, "  upper: {} ({})", u.value, u.trace)?;
        }
        if let Some(l) = &self.lower {
            writeln!(f, "  lower: {} ({})", l.value, l.construction)?;
        }
        if let Some(m) = self.m_star {
            writeln!(f, "  m_star: {m}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
