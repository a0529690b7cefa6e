use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `C(q+1, 2)`, the exact value for `k = 2`.
pub fn f_q2(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(invalid(format!("need q > 1, got {q}")));
    }
    Ok(q * (q + 1) / 2)
}

/// `3q - 1`.
pub fn ub_f_q3(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(invalid(format!("need q > 1, got {q}")));
    }
    Ok(3 * q - 1)
}

const IMPROVED_EXCEPTIONS: [(u64, u64); 5] = [(5, 2), (5, 3), (5, 4), (5, 5), (6, 2)];

/// `q(k-1)` for `q >= 2`, `k >= 5`, except `(k, q)` in
/// `{(5,2), (5,3), (5,4), (5,5), (6,2)}`.
pub fn ub_improved(q: u64, k: u64) -> Option<u64> {
    (q >= 2 && k >= 5 && !IMPROVED_EXCEPTIONS.contains(&(k, q))).then(|| q * (k - 1))
}

/// Evaluation of `q(k-1)(1 + (q-1)/(√D - q))`, `D = 2(qk-q-k+2)^{k-1}/(k-1)!`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eq1Bound {
    pub q: u64,
    pub k: u64,
    /// False when `√D <= q`.
    pub applicable: bool,
    /// Exact when `D` is the square of a rational.
    pub exact: bool,
    /// Rational bracket `lower <= value <= upper`, as `num/den` strings.
    pub lower: Option<String>,
    pub upper: Option<String>,
    /// `⌊upper⌋`, a valid integer upper bound on `f(q, k)`.
    pub floor: Option<u64>,
    pub approx: Option<f64>,
}

pub fn ub_eq1(q: u64, k: u64) -> Result<Eq1Bound> {
    if q < 2 || k < 3 {
        return Err(invalid(format!("need q > 1 and k > 2, got q={q}, k={k}")));
    }
    let x = BigInt::from(q * k - q - k + 2);
    let fact: BigInt = (1..k).map(BigInt::from).product();
    let d = BigRational::new(BigInt::from(2) * Pow::pow(&x, (k - 1) as u32), fact);
    let qr = BigRational::from_integer(BigInt::from(q));
    let mut out = Eq1Bound {
        q,
        k,
        applicable: false,
        exact: false,
        lower: None,
        upper: None,
        floor: None,
        approx: None,
    };
    if d <= &qr * &qr {
        return Ok(out);
    }
    out.applicable = true;
    let (num, den) = (d.numer().clone(), d.denom().clone());
    let prod = (&num * &den).to_biguint().expect("positive");
    let value = |root: &BigRational| -> BigRational {
        let qm1 = BigRational::from_integer(BigInt::from(q - 1));
        BigRational::from_integer(BigInt::from(q * (k - 1)))
            * (BigRational::one() + qm1 / (root - &qr))
    };
    let s = prod.sqrt();
    let (lo, hi) = if &s * &s == prod {
        out.exact = true;
        let v = value(&BigRational::new(BigInt::from(s), den));
        (v.clone(), v)
    } else {
        let mut digits = 8u32;
        loop {
            let scale = BigUint::from(10u32).pow(digits);
            let sd = (&prod * &scale * &scale).sqrt();
            let bden = den.clone() * BigInt::from(scale);
            let root_lo = BigRational::new(BigInt::from(sd.clone()), bden.clone());
            let root_hi = BigRational::new(BigInt::from(sd + 1u32), bden);
            if root_lo > qr {
                let (vlo, vhi) = (value(&root_hi), value(&root_lo));
                if vlo.floor() == vhi.floor() || digits >= 64 {
                    break (vlo, vhi);
                }
            }
            digits *= 2;
        }
    };
    out.floor = hi.floor().to_integer().to_u64();
    out.approx = Some(
        (lo.numer().to_f64().unwrap_or(f64::NAN) / lo.denom().to_f64().unwrap_or(f64::NAN))
            .max(0.0),
    );
    out.lower = Some(lo.to_string());
    out.upper = Some(hi.to_string());
    Ok(out)
}
