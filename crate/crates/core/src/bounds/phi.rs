use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::big_str;
use crate::combin::{binomial, binomial_u128};
use crate::error::{invalid, Error, Result};

/// Default ceiling on the number of count vectors `C(m+q-1, q-1)` the
/// brute-force minimum may enumerate.
pub const PHI_MAX_COMPOSITIONS: u128 = 20_000_000;

/// The minimum number of `(t+1)`-submultisets with at most `s` distinct
/// elements, over multisets of size `m` on `q` symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiProfile {
    pub m: u64,
    pub q: u64,
    pub s: u64,
    pub t: u64,
    pub h: u64,
    pub r: u64,
    #[serde(with = "big_str")]
    pub value: BigUint,
}

impl PhiProfile {
    fn new(m: u64, q: u64, s: u64, t: u64, value: BigUint) -> Self {
        PhiProfile {
            m,
            q,
            s,
            t,
            h: m / q,
            r: m % q,
            value,
        }
    }
}

/// Closed form for `s = 1`, `q < m`: `q C(h, t+1) + r C(h, t)`.
pub fn phi_lower_s1(m: u64, q: u64, t: u64) -> Result<PhiProfile> {
    if q == 0 || q >= m {
        return Err(invalid(format!("need 0 < q < m, got m={m}, q={q}")));
    }
    Ok(PhiProfile::new(m, q, 1, t, phi_s1_unchecked(m, q, t)))
}

pub(crate) fn phi_s1_unchecked(m: u64, q: u64, t: u64) -> BigUint {
    let (h, r) = (m / q, m % q);
    binomial(h, t + 1) * q + binomial(h, t) * r
}

/// Closed form for `s = t = 2`, `q < m`.
pub fn varphi(m: u64, q: u64) -> Result<PhiProfile> {
    if q == 0 || q >= m {
        return Err(invalid(format!("need 0 < q < m, got m={m}, q={q}")));
    }
    Ok(PhiProfile::new(m, q, 2, 2, varphi_unchecked(m, q)))
}

pub(crate) fn varphi_unchecked(m: u64, q: u64) -> BigUint {
    let (h, r) = (m / q, m % q);
    let big_parts = binomial(h + 1, 3) * r + binomial(h, 3) * (q - r);
    let pair_heavy = if m > h {
        binomial(h + 1, 2) * r * (m - h - 1)
    } else {
        BigUint::zero()
    };
    let pair_light = binomial(h, 2) * (q - r) * (m - h);
    big_parts + pair_heavy + pair_light
}

/// Number of `(t+1)`-subsets of positions of a multiset with symbol counts
/// `counts` showing at most `s` distinct symbols, by inclusion-exclusion
/// over symbol supports.
pub fn count_low_support(counts: &[u64], s: u64, t: u64) -> BigUint {
    let present: Vec<u64> = counts.iter().copied().filter(|&c| c > 0).collect();
    let k = present.len();
    let mut total = BigInt::zero();
    // exact(S) = Σ_{U ⊆ S} (-1)^{|S|-|U|} C(c(U), t+1), summed over 1 ≤ |S| ≤ s
    for mask in 1u64..(1u64 << k) {
        let size = mask.count_ones() as u64;
        if size > s {
            continue;
        }
        let mut sub = mask;
        loop {
            let weight: u64 = (0..k)
                .filter(|&i| sub >> i & 1 == 1)
                .map(|i| present[i])
                .sum();
            let term = BigInt::from(binomial(weight, t + 1));
            if (size - sub.count_ones() as u64).is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    total.to_biguint().expect("a count is nonnegative")
}

/// Exact minimum over all multisets, by enumerating nonincreasing count
/// vectors.
pub fn phi_bruteforce(m: u64, q: u64, s: u64, t: u64) -> Result<PhiProfile> {
    phi_bruteforce_with(m, q, s, t, PHI_MAX_COMPOSITIONS)
}

pub fn phi_bruteforce_with(m: u64, q: u64, s: u64, t: u64, ceiling: u128) -> Result<PhiProfile> {
    if q == 0 || s == 0 {
        return Err(invalid("q and s must be positive"));
    }
    if q > 62 {
        return Err(invalid(format!("q={q} too large for support enumeration")));
    }
    let size = binomial_u128(m + q - 1, q - 1);
    if size > ceiling {
        return Err(Error::TooLarge {
            what: "count-vector enumeration C(m+q-1, q-1)",
            size,
            ceiling,
            hint: "use the closed form or smaller m, q",
        });
    }
    let mut best: Option<BigUint> = None;
    let mut counts = Vec::with_capacity(q as usize);
    nonincreasing(m, q as usize, m, &mut counts, &mut |c| {
        let v = count_low_support(c, s, t);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    });
    Ok(PhiProfile::new(
        m,
        q,
        s,
        t,
        best.expect("at least one count vector"),
    ))
}

fn nonincreasing(
    rest: u64,
    slots: usize,
    cap: u64,
    acc: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if slots == 0 {
        if rest == 0 {
            f(acc);
        }
        return;
    }
    // remaining slots can hold at most slots * cap
    if rest > cap.saturating_mul(slots as u64) {
        return;
    }
    for c in (0..=cap.min(rest)).rev() {
        acc.push(c);
        nonincreasing(rest - c, slots - 1, c, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::Combinations;

    /// Direct count over position subsets of the sorted word with these counts.
    fn direct(counts: &[u64], s: u64, t: u64) -> u64 {
        let word: Vec<usize> = counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
            .collect();
        Combinations::new(word.len(), (t + 1) as usize)
            .filter(|sub| {
                let mut syms: Vec<usize> = sub.iter().map(|&p| word[p]).collect();
                syms.sort_unstable();
                syms.dedup();
                syms.len() as u64 <= s
            })
            .count() as u64
    }

    fn direct_min(m: u64, q: u64, s: u64, t: u64) -> u64 {
        // every multiset of size m over q symbols, as a count vector
        let mut best = u64::MAX;
        let total = (m + 1).pow(q as u32);
        for code in 0..total {
            let mut c = Vec::new();
            let mut x = code;
            for _ in 0..q {
                c.push(x % (m + 1));
                x /= m + 1;
            }
            if c.iter().sum::<u64>() == m {
                best = best.min(direct(&c, s, t));
            }
        }
        best
    }

    #[test]
    fn examples() {
        assert_eq!(phi_lower_s1(3, 2, 1).unwrap().value, BigUint::from(1u32));
        assert_eq!(
            phi_bruteforce(3, 2, 1, 1).unwrap().value,
            BigUint::from(1u32)
        );
        for q in 2..6u64 {
            assert_eq!(phi_lower_s1(2 * q, q, 1).unwrap().value, BigUint::from(q));
            for t in 1..4u64 {
                assert_eq!(
                    phi_lower_s1(q * t + 1, q, t).unwrap().value,
                    BigUint::from(1u32)
                );
            }
            let m = 2 * q - 1;
            if q >= 2 && m > q {
                assert_eq!(
                    varphi(m, q).unwrap().value,
                    BigUint::from((q - 1) * (m - 2))
                );
            }
            assert_eq!(
                varphi(2 * q, q).unwrap().value,
                BigUint::from(q * (2 * q - 2))
            );
        }
        assert_eq!(phi_bruteforce(7, 3, 3, 2).unwrap().value, binomial(7, 3));
        assert_eq!(phi_bruteforce(5, 2, 2, 2).unwrap().value, binomial(5, 3));
        assert!(phi_lower_s1(3, 3, 1).is_err());
        assert!(varphi(2, 3).is_err());
    }

    #[test]
    fn inclusion_exclusion_matches_direct_count() {
        for counts in [vec![3, 2, 1], vec![4, 0, 2, 1], vec![2, 2, 2, 2], vec![5]] {
            for s in 1..4 {
                for t in 1..4 {
                    assert_eq!(
                        count_low_support(&counts, s, t),
                        BigUint::from(direct(&counts, s, t)),
                        "{counts:?} s={s} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruteforce_matches_direct_minimum() {
        for m in 2..=8u64 {
            for q in 1..=3u64 {
                for (s, t) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
                    let got = phi_bruteforce(m, q, s, t).unwrap().value;
                    assert_eq!(
                        got,
                        BigUint::from(direct_min(m, q, s, t)),
                        "m={m} q={q} s={s} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn ceiling() {
        assert!(matches!(
            phi_bruteforce_with(40, 10, 1, 1, 1000),
            Err(Error::TooLarge { .. })
        ));
    }
}
