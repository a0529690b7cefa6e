use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::big_str;
use crate::bounds::phi::{phi_bruteforce, phi_s1_unchecked, varphi_unchecked};
use crate::combin::binomial;
use crate::error::{invalid, Error, Result};

/// Where `φ(m)` comes from in the scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiSource {
    /// Closed forms: `s = 1` (any `t`) or `s = t = 2`.
    #[default]
    Formula,
    /// Exhaustive minimum over multisets.
    Oracle,
}

impl std::str::FromStr for PhiSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(PhiSource::Formula),
            "oracle" => Ok(PhiSource::Oracle),
            _ => Err(invalid(format!(
                "unknown phi source '{s}' (formula|oracle)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStep {
    pub m: u64,
    #[serde(with = "big_str")]
    pub phi: BigUint,
    /// Largest `n` with `C(n, k-1) <= C(m, t+1)`.
    #[serde(with = "big_str")]
    pub ub1: BigUint,
    /// `⌊(k-1) C(m, t+1) / φ(m)⌋`; absent (infinite) when `φ(m) = 0`.
    pub ub2: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalBound {
    #[serde(with = "big_str")]
    pub value: BigUint,
    /// Smallest `m` attaining the maximum of `min(ub1, ub2)`.
    pub m_star: u64,
    pub steps: Vec<ScanStep>,
    pub ub1_nondecreasing: bool,
    pub ub2_nonincreasing: bool,
    pub stop_reason: String,
}

/// Hard cap on the scanned code size.
pub const MAX_SCAN_M: u64 = 1_000_000;

fn largest_n_with_binomial_at_most(r: u64, cap: &BigUint) -> BigUint {
    if r == 1 {
        return cap.clone();
    }
    // C(n, r) is increasing in n >= r; search n in [r-1, hi]
    let mut hi = (r as u128).max(2);
    while binomial(hi as u64, r) <= *cap {
        hi *= 2;
    }
    let mut lo = r as u128 - 1;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if binomial(mid as u64, r) <= *cap {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    BigUint::from(lo)
}

/// Maximizes `min(ub1(m), ub2(m))` over code sizes `m`, which bounds
/// `f_{s,t}(q, k)` from above.
///
/// The scan starts at `m = t+1` and stops once `m > q` and `ub2(m)` is at
/// most the running best: `ub2` is nonincreasing beyond `q`, so no later
/// `m` can do better. Both monotonicity claims are checked along the way.
pub fn universal_upper_bound(
    q: u64,
    k: u64,
    s: u64,
    t: u64,
    source: PhiSource,
) -> Result<UniversalBound> {
    if q < 2 || k < 2 || s < 1 || t < s {
        return Err(invalid(format!(
            "need q > 1, k > 1, 1 <= s <= t; got q={q}, k={k}, s={s}, t={t}"
        )));
    }
    if source == PhiSource::Formula && s != 1 && (s, t) != (2, 2) {
        return Err(invalid(format!(
            "no closed form for phi with (s,t)=({s},{t}); use the oracle"
        )));
    }
    let phi = |m: u64| -> Result<BigUint> {
        match source {
            PhiSource::Formula if s == 1 => Ok(phi_s1_unchecked(m, q, t)),
            PhiSource::Formula => Ok(varphi_unchecked(m, q)),
            PhiSource::Oracle => Ok(phi_bruteforce(m, q, s, t)?.value),
        }
    };

    let mut steps = Vec::new();
    let mut best: Option<(BigUint, u64)> = None;
    let mut ub1_ok = true;
    let mut ub2_ok = true;
    let mut prev_ub1: Option<BigUint> = None;
    let mut prev_ub2: Option<BigUint> = None;
    let mut stop_reason = format!("reached the scan cap m = {MAX_SCAN_M}");
    for m in t + 1..=MAX_SCAN_M {
        let total = binomial(m, t + 1);
        let p = phi(m)?;
        let ub1 = largest_n_with_binomial_at_most(k - 1, &total);
        let ub2 = (!p.is_zero()).then(|| &total * (k - 1) / &p);
        let val = match &ub2 {
            Some(u) => u.min(&ub1).clone(),
            None => ub1.clone(),
        };
        if prev_ub1.as_ref().is_some_and(|p| ub1 < *p) {
            ub1_ok = false;
        }
        if m > q {
            if let (Some(prev), Some(cur)) = (&prev_ub2, &ub2) {
                if cur > prev {
                    ub2_ok = false;
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, m));
        }
        steps.push(ScanStep {
            m,
            phi: p,
            ub1: ub1.clone(),
            ub2: ub2.as_ref().map(BigUint::to_string),
        });
        prev_ub1 = Some(ub1);
        let bestv = &best.as_ref().expect("set above").0;
        if m > q {
            if let Some(u) = &ub2 {
                if u <= bestv {
                    stop_reason = format!(
                        "stopped at m = {m}: ub2(m) = {u} is at most the running best {bestv}"
                    );
                    break;
                }
            }
            prev_ub2 = ub2;
        }
    }
    let (value, m_star) = best.expect("the scan visits at least one m");
    Ok(UniversalBound {
        value,
        m_star,
        steps,
        ub1_nondecreasing: ub1_ok,
        ub2_nonincreasing: ub2_ok,
        stop_reason,
    })
}
