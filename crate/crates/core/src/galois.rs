//! Arithmetic in GF(p^e).
//!
//! An element is identified with its coefficient vector `(c_0, ..., c_{e-1})`
//! over GF(p) and indexed by `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Index order
//! is therefore lexicographic in `(c_{e-1}, ..., c_0)`, and element `i` is used
//! as code symbol `i + 1`.

use std::fmt;

use crate::error::{Error, Result};

/// A field element, as its index in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low-order coefficient first, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// GF(q) with the lexicographically least monic irreducible modulus.
pub fn field_make(q: u64) -> Result<FieldSpec> {
    let Some((p, e)) = prime_power(q) else {
        let f = factorize(q);
        let shown = if f.is_empty() {
            format!("{q} has no prime factors")
        } else {
            let terms: Vec<String> = f
                .iter()
                .map(|&(p, e)| {
                    if e == 1 {
                        p.to_string()
                    } else {
                        format!("{p}^{e}")
                    }
                })
                .collect();
            format!("{q} = {}", terms.join(" · "))
        };
        return Err(Error::NotPrimePower(q, shown));
    };
    if q > MAX_FIELD_SIZE {
        return Err(Error::TooLarge {
            what: "field size",
            size: q as u128,
            ceiling: MAX_FIELD_SIZE as u128,
            hint: "only small fields are supported",
        });
    }
    let (p, e) = (p as u32, e);
    let modulus = least_irreducible(p, e);
    let mut spec = FieldSpec {
        p,
        e,
        q: q as u32,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
    };
    spec.build_log_tables();
    Ok(spec)
}

/// Polynomials over GF(p) as coefficient vectors, low order first.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        trim(out)
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        while a.len() > dm {
            let lead = *a.last().expect("nonempty");
            let shift = a.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
            a = trim(a);
        }
        a
    }

    /// The monic polynomial of degree `deg` whose lower coefficients are the
    /// base-`p` digits of `index` (least significant digit = constant term).
    pub fn monic_from_index(mut index: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            out.push((index % p as u64) as u32);
            index /= p as u64;
        }
        out.push(1);
        out
    }
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d) {
            let g = poly::monic_from_index(idx, d, p);
            if poly::rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..(p as u64).pow(e))
        .map(|idx| poly::monic_from_index(idx, e, p))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q).map(Gf)
    }

    pub fn coefficients(&self, a: Gf) -> Vec<u32> {
        let mut x = a.0;
        (0..self.e)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Gf {
        Gf(coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    /// Multiplication by polynomial arithmetic, used to build the tables.
    pub fn mul_slow(&self, a: Gf, b: Gf) -> Gf {
        let prod = poly::mul(
            &poly::trim(self.coefficients(a)),
            &poly::trim(self.coefficients(b)),
            self.p,
        );
        self.from_coefficients(&poly::rem(&prod, &self.modulus, self.p))
    }

    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        let divisors: Vec<u32> = factorize(order as u64)
            .iter()
            .map(|&(f, _)| order / f as u32)
            .collect();
        let pow = |g: Gf, mut n: u32| {
            let (mut acc, mut base) = (Gf::ONE, g);
            while n > 0 {
                if n & 1 == 1 {
                    acc = self.mul_slow(acc, base);
                }
                base = self.mul_slow(base, base);
                n >>= 1;
            }
            acc
        };
        let generator = (1..self.q)
            .map(Gf)
            .find(|&g| divisors.iter().all(|&d| pow(g, d) != Gf::ONE))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = Gf::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = self.mul_slow(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        if self.e == 1 {
            return Gf((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.e {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Gf(out)
    }

    pub fn neg(&self, a: Gf) -> Gf {
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.e {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Gf(out)
    }

    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a == Gf::ZERO || b == Gf::ZERO {
            return Gf::ZERO;
        }
        let order = self.q - 1;
        let l = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        Gf(self.exp[l as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a == Gf::ZERO {
            return Err(Error::ZeroInverse(self.q as u64));
        }
        let order = self.q - 1;
        Ok(Gf(
            self.exp[((order - self.log[a.0 as usize]) % order) as usize]
        ))
    }

    pub fn apply(&self, op: FieldOp, a: Gf, b: Option<Gf>) -> Result<Gf> {
        let need_b =
            || b.ok_or_else(|| Error::InvalidParams("binary operation needs two operands".into()));
        match op {
            FieldOp::Add => Ok(self.add(a, need_b()?)),
            FieldOp::Mul => Ok(self.mul(a, need_b()?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
        }
    }

    /// Horner evaluation of `Σ coeffs[i] x^i`.
    pub fn poly_eval(&self, coeffs: &[Gf], x: Gf) -> Gf {
        coeffs
            .iter()
            .rev()
            .fold(Gf::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Human-readable modulus, e.g. `X^2 + X + 1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}X"),
                _ => format!("{coef}X^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}) = GF({})[X]/({})",
            self.q,
            self.p,
            self.modulus_string()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field() {
        let f = field_make(5).unwrap();
        assert_eq!((f.p(), f.e()), (5, 1));
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.inv(Gf(2)).unwrap(), Gf(3));
        assert_eq!(f.modulus_string(), "X");
    }

    #[test]
    fn gf4() {
        let f = field_make(4).unwrap();
        assert_eq!((f.p(), f.e()), (2, 2));
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.modulus_string(), "X^2 + X + 1");
        let x = f.from_coefficients(&[0, 1]);
        assert_eq!(f.mul(x, x), f.from_coefficients(&[1, 1]));
        assert_eq!(
            f.poly_eval(&[Gf::ZERO, Gf::ZERO, Gf::ONE], x),
            f.from_coefficients(&[1, 1])
        );
    }

    #[test]
    fn non_prime_powers_rejected() {
        match field_make(6) {
            Err(Error::NotPrimePower(6, s)) => assert_eq!(s, "6 = 2 · 3"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(field_make(12).is_err());
        assert!(field_make(1).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = field_make(9).unwrap();
        assert_eq!(f.inv(Gf::ZERO), Err(Error::ZeroInverse(9)));
        assert!(f.apply(FieldOp::Inv, Gf::ZERO, None).is_err());
        assert!(f.apply(FieldOp::Add, Gf(1), None).is_err());
    }

    #[test]
    fn evaluation() {
        let f = field_make(5).unwrap();
        assert_eq!(f.poly_eval(&[Gf(1), Gf(2)], Gf(2)), Gf::ZERO);
        for x in f.elements() {
            assert_eq!(f.poly_eval(&[Gf(3)], x), Gf(3));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = field_make(q).unwrap();
            let all: Vec<Gf> = f.elements().collect();
            assert_eq!(all.len(), q as usize);
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), Gf::ZERO);
                if a != Gf::ZERO {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b), "q={q}");
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn least_moduli() {
        // GF(8): X^3 + X + 1 precedes X^3 + X^2 + 1 in the index order.
        assert_eq!(field_make(8).unwrap().modulus(), &[1, 1, 0, 1]);
        // GF(9): X^2 + 1 is irreducible over GF(3) and has the smallest index.
        assert_eq!(field_make(9).unwrap().modulus(), &[1, 0, 1]);
    }
}
