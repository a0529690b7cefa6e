//! Small combinatorial helpers: binomials, k-subset iteration and ranking.

use num_bigint::BigUint;
use num_traits::One;

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i + 1) as u128,
            None => return u128::MAX,
        }
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lexicographic iterator over the `k`-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Colexicographic ranking of `k`-subsets of `0..n` into `0..C(n,k)`.
#[derive(Clone, Debug)]
pub struct SubsetIndexer {
    n: usize,
    k: usize,
    table: Vec<Vec<usize>>,
}

impl SubsetIndexer {
    pub fn new(n: usize, k: usize) -> Self {
        let table = (0..=n)
            .map(|x| {
                (0..=k)
                    .map(|j| binomial_u128(x as u64, j as u64) as usize)
                    .collect()
            })
            .collect();
        SubsetIndexer { n, k, table }
    }

    pub fn len(&self) -> usize {
        self.table[self.n][self.k]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `subset` must be sorted ascending.
    pub fn rank(&self, subset: &[usize]) -> usize {
        subset
            .iter()
            .enumerate()
            .map(|(i, &c)| self.table[c][i + 1])
            .sum()
    }

    pub fn unrank(&self, mut r: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        let mut hi = self.n;
        for i in (0..self.k).rev() {
            let mut c = hi - 1;
            while self.table[c][i + 1] > r {
                c -= 1;
            }
            out[i] = c;
            r -= self.table[c][i + 1];
            hi = c;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(5, 3), 10);
        assert_eq!(binomial_u128(3, 5), 0);
        assert_eq!(binomial_u128(0, 0), 1);
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
        assert_eq!(binomial_u128(60, 30), 118264581564861424);
    }

    #[test]
    fn combinations_count_and_order() {
        let all: Vec<_> = Combinations::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn rank_unrank_bijection() {
        for (n, k) in [(6, 2), (7, 3), (5, 0), (5, 5)] {
            let ix = SubsetIndexer::new(n, k);
            let mut seen = vec![false; ix.len()];
            for s in Combinations::new(n, k) {
                let r = ix.rank(&s);
                assert!(!seen[r]);
                seen[r] = true;
                assert_eq!(ix.unrank(r), s);
            }
            assert!(seen.iter().all(|&b| b));
        }
    }
}
