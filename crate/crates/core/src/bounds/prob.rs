use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combin::binomial;
use crate::error::{invalid, Result};

/// Decimal expansion of `e`, truncated; the last digit bounds it from below.
const E_DIGITS: &str = "271828182845904523536028747135266249775724709369995";

/// `(lo, hi)` with `lo < e < hi`.
fn e_bracket() -> (BigRational, BigRational) {
    let num: BigInt = E_DIGITS.parse().expect("digits");
    let den = BigInt::from(10u32).pow((E_DIGITS.len() - 1) as u32);
    (
        BigRational::new(num.clone(), den.clone()),
        BigRational::new(num + 1, den),
    )
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial upper tail `P[Bin(n, 1/q) >= k]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernoffB {
    pub k: u64,
    pub n: u64,
    pub q: u64,
    /// Exact tail as `num/den`.
    pub exact: String,
    pub exact_f64: f64,
    /// `(n/(qk))^k e^{k - n/q}`, given when `k > n/q`.
    pub estimate: Option<f64>,
}

pub(crate) fn tail_exact(k: u64, n: u64, q: u64) -> BigRational {
    // 1 - Σ_{l<k} C(n,l) (q-1)^{n-l} / q^n
    let qn = BigUint::from(q).pow(n as u32);
    let mut head = BigUint::zero();
    for l in 0..k.min(n + 1) {
        head += binomial(n, l) * BigUint::from(q - 1).pow((n - l) as u32);
    }
    let num = BigInt::from(qn.clone()) - BigInt::from(head);
    BigRational::new(num, BigInt::from(qn))
}

pub fn chernoff_b(k: u64, n: u64, q: u64) -> Result<ChernoffB> {
    if k > n {
        return Err(invalid(format!("need k <= n, got k={k}, n={n}")));
    }
    if q < 1 {
        return Err(invalid("q must be positive"));
    }
    let exact = tail_exact(k, n, q);
    let mean = n as f64 / q as f64;
    let estimate =
        (k as f64 > mean).then(|| (mean / k as f64).powi(k as i32) * (k as f64 - mean).exp());
    Ok(ChernoffB {
        k,
        n,
        q,
        exact_f64: to_f64(&exact),
        exact: exact.to_string(),
        estimate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllFeasibility {
    pub feasible: bool,
    /// `2(t+1)^2 C(n,k-1) B(k,n,1/q)`, compared against `1/e`.
    pub lhs_f64: f64,
    /// Number of blocks each bad event depends on.
    pub dependency_degree: String,
    pub trace: String,
}

/// Whether `2(t+1)^2 C(n,k-1) B(k,n,1/q) < 1/e`, decided exactly.
pub fn lll_feasible(q: u64, k: u64, t: u64, n: u64) -> Result<LllFeasibility> {
    if n <= k {
        return Err(invalid(format!("need n > k, got n={n}, k={k}")));
    }
    if q < 2 || k < 1 {
        return Err(invalid("need q > 1 and k > 0"));
    }
    let tt = BigUint::from((t + 1) * (t + 1));
    let blocks = binomial(n, k - 1);
    let coeff = BigRational::from_integer(BigInt::from(BigUint::from(2u32) * &tt * &blocks));
    let lhs = coeff * tail_exact(k, n, q);
    let (e_lo, e_hi) = e_bracket();
    let one = BigRational::one();
    let (feasible, how) = if &lhs * &e_hi < one {
        (true, "lhs * e < 1")
    } else if &lhs * &e_lo >= one {
        (false, "lhs * e >= 1")
    } else {
        (false, "lhs * e within 1e-50 of 1; treated as infeasible")
    };
    let degree = BigInt::from(BigUint::from(2u32) * &tt * &blocks)
        - BigInt::from(3u32) * BigInt::from(tt)
        - BigInt::one();
    let lhs_f64 = to_f64(&lhs);
    Ok(LllFeasibility {
        feasible,
        lhs_f64,
        dependency_degree: degree.to_string(),
        trace: format!(
            "2(t+1)^2 C({n},{}) B({k},{n},1/{q}) = {lhs_f64:.6e}; {how}",
            k - 1
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllLowerBound {
    pub q: u64,
    pub k: u64,
    pub t: u64,
    /// `4e^2 (2e(t+1)^2)^{1/k}`; the bound needs `q` above it.
    pub threshold: f64,
    pub applicable: bool,
    /// `⌊(2e(t+1)^2)^{-1/(2k)} √q k / e⌋`.
    pub n: Option<u64>,
    pub feasible_at_n: Option<bool>,
}

pub fn lll_lower_bound(q: u64, k: u64, t: u64) -> Result<LllLowerBound> {
    if q < 2 || k < 2 || t < 1 {
        return Err(invalid("need q > 1, k > 1, t > 0"));
    }
    let e = std::f64::consts::E;
    let base = 2.0 * e * ((t + 1) * (t + 1)) as f64;
    let threshold = 4.0 * e * e * base.powf(1.0 / k as f64);
    let mut out = LllLowerBound {
        q,
        k,
        t,
        threshold,
        applicable: q as f64 > threshold,
        n: None,
        feasible_at_n: None,
    };
    if out.applicable {
        let n =
            (base.powf(-1.0 / (2 * k) as f64) * (q as f64).sqrt() * k as f64 / e).floor() as u64;
        out.n = Some(n);
        if n > k {
            out.feasible_at_n = Some(lll_feasible(q, k, t, n)?.feasible);
        }
    }
    Ok(out)
}
