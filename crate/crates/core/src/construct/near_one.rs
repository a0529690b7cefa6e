use crate::code::{ArmstrongCode, Symbol};
use crate::error::{invalid, Result};

/// The near-one-factorization of `K_n`, `n` odd: factor `i` consists of the
/// edges `{i+t, i-t}`, `t = 1..(n-1)/2`, and misses exactly vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearOneFactorization {
    n: u32,
}

impl NearOneFactorization {
    pub fn order(&self) -> u32 {
        self.n
    }

    /// Edge `t` (1-based) of factor `i`.
    pub fn edge(&self, i: u32, t: u32) -> (u32, u32) {
        let n = self.n;
        ((i + t) % n, (i + n - t % n) % n)
    }

    pub fn factor(&self, i: u32) -> Vec<(u32, u32)> {
        (1..=(self.n - 1) / 2).map(|t| self.edge(i, t)).collect()
    }

    /// Index `t` of the edge of factor `i` containing `x`, or `None` when
    /// `x == i`.
    pub fn edge_index(&self, i: u32, x: u32) -> Option<u32> {
        let n = self.n;
        let d = (x + n - i) % n;
        match d {
            0 => None,
            d if d <= (n - 1) / 2 => Some(d),
            d => Some(n - d),
        }
    }

    /// The factor containing edge `{x, y}`: `x + y ≡ 2i (mod n)`.
    pub fn factor_of(&self, x: u32, y: u32) -> u32 {
        let n = self.n as u64;
        let inv2 = n.div_ceil(2);
        (((x as u64 + y as u64) % n) * inv2 % n) as u32
    }
}

pub fn near_one_factorization(n: u32) -> Result<NearOneFactorization> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid(format!(
            "near-one-factorization needs an odd n >= 3, got {n}"
        )));
    }
    Ok(NearOneFactorization { n })
}

/// Three pairwise distinct vertices `x, y, z` with `{x,y} ∈ T_i`,
/// `{x,z} ∈ T_j`, `{y,z} ∈ T_k`, for pairwise distinct `i, j, k`.
pub fn triangle_witness(n: u32, i: u32, j: u32, k: u32) -> Result<(u32, u32, u32)> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid(format!(
            "triangle witness needs an odd n >= 3, got {n}"
        )));
    }
    if i >= n || j >= n || k >= n || i == j || j == k || i == k {
        return Err(invalid(format!(
            "factor indices {i},{j},{k} must be distinct residues mod {n}"
        )));
    }
    let n64 = n as u64;
    let r = |v: u64| (v % n64) as u32;
    let (i, j, k) = (i as u64, j as u64, k as u64);
    let x = r(i + j + n64 - k);
    let y = r(i + k + n64 - j);
    let z = r(j + k + n64 - i);
    Ok((x, y, z))
}

/// A `(q, 4, n)`-Armstrong code with `s = t = 2`, `n = 2q - 1`: the cell in
/// row `s`, column `i` is the index of the edge of factor `i` containing
/// vertex `s`, and `q` on the diagonal.
pub fn st22_code(q: usize) -> Result<ArmstrongCode> {
    if q < 3 {
        return Err(invalid(format!("q must be at least 3, got {q}")));
    }
    if q > Symbol::MAX as usize {
        return Err(invalid(format!("q={q} exceeds the symbol range")));
    }
    let n = (2 * q - 1) as u32;
    let f = near_one_factorization(n)?;
    let rows = (0..n)
        .map(|s| {
            (0..n)
                .map(|i| match f.edge_index(i, s) {
                    Some(t) => (t - 1) as Symbol,
                    None => (q - 1) as Symbol,
                })
                .collect()
        })
        .collect();
    ArmstrongCode::with_dependency(q, 4, 2, 2, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::verify_st_armstrong;

    #[test]
    fn factors_are_near_one_factors() {
        for n in [3u32, 5, 7, 9, 11] {
            let f = near_one_factorization(n).unwrap();
            let mut edge_owner = std::collections::HashMap::new();
            for i in 0..n {
                let mut hit = vec![0; n as usize];
                for (x, y) in f.factor(i) {
                    hit[x as usize] += 1;
                    hit[y as usize] += 1;
                    assert_eq!(f.factor_of(x, y), i);
                    assert!(edge_owner.insert((x.min(y), x.max(y)), i).is_none());
                }
                for (v, &h) in hit.iter().enumerate() {
                    assert_eq!(h, usize::from(v as u32 != i));
                }
            }
            assert_eq!(edge_owner.len(), (n * (n - 1) / 2) as usize);
        }
        assert!(near_one_factorization(4).is_err());
    }

    #[test]
    fn triangle_witness_all_triples() {
        for n in [3u32, 5, 7, 9] {
            let f = near_one_factorization(n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if i == j || j == k || i == k {
                            assert!(triangle_witness(n, i, j, k).is_err());
                            continue;
                        }
                        let (x, y, z) = triangle_witness(n, i, j, k).unwrap();
                        assert!(x != y && y != z && x != z);
                        assert_eq!(f.factor_of(x, y), i);
                        assert_eq!(f.factor_of(x, z), j);
                        assert_eq!(f.factor_of(y, z), k);
                    }
                }
            }
        }
    }

    #[test]
    fn st22_code_verifies() {
        for q in 3..=7 {
            let c = st22_code(q).unwrap();
            assert_eq!((c.m(), c.n(), c.q()), (2 * q - 1, 2 * q - 1, q));
            let r = verify_st_armstrong(&c, None).unwrap();
            assert!(r.passed, "q={q}: {r}");
        }
        assert!(st22_code(2).is_err());
    }

    #[test]
    fn st22_diagonal_and_edges() {
        let c = st22_code(4).unwrap();
        for s in 0..7 {
            assert_eq!(c.get(s, s), 3);
        }
        // Row 0, column 1: vertex 0 lies on edge {1+t, 1-t} with t = 1.
        assert_eq!(c.get(0, 1), 0);
    }
}
