//! Armstrong codes and their verifiers.
//!
//! Symbols are stored 0-based (`0..q`); the text formats and fixtures use
//! `1..=q`. A code with no declared `(s, t)` is a classical Armstrong code
//! and behaves as `s = t = 1`.

use std::collections::HashMap;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial_u128, Combinations, SubsetIndexer};
use crate::error::{invalid, structural, Error, Result};

pub type Symbol = u16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArmstrongCode {
    q: usize,
    k: usize,
    n: usize,
    m: usize,
    st: Option<(usize, usize)>,
    cells: Vec<Symbol>,
}

impl ArmstrongCode {
    /// Builds a code from 0-based rows.
    pub fn new(q: usize, k: usize, rows: Vec<Vec<Symbol>>) -> Result<Self> {
        Self::build(q, k, None, rows)
    }

    /// Builds a code with declared `(s, t)` dependency parameters.
    pub fn with_dependency(
        q: usize,
        k: usize,
        s: usize,
        t: usize,
        rows: Vec<Vec<Symbol>>,
    ) -> Result<Self> {
        Self::build(q, k, Some((s, t)), rows)
    }

    /// Builds a code from 1-based rows, as printed.
    pub fn from_one_based(
        q: usize,
        k: usize,
        st: Option<(usize, usize)>,
        rows: &[Vec<u32>],
    ) -> Result<Self> {
        let mut zero = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for &v in row {
                if v == 0 || v as usize > q {
                    return Err(structural(format!("row {i}: symbol {v} outside 1..={q}")));
                }
                r.push((v - 1) as Symbol);
            }
            zero.push(r);
        }
        Self::build(q, k, st, zero)
    }

    fn build(
        q: usize,
        k: usize,
        st: Option<(usize, usize)>,
        rows: Vec<Vec<Symbol>>,
    ) -> Result<Self> {
        if q < 2 || q > Symbol::MAX as usize + 1 {
            return Err(invalid(format!("alphabet size q={q} out of range")));
        }
        if k < 2 {
            return Err(invalid(format!("k must exceed 1, got {k}")));
        }
        if let Some((s, t)) = st {
            if s == 0 || t == 0 {
                return Err(invalid("s and t must be positive"));
            }
            if q <= s || q <= t {
                return Err(invalid(format!("q={q} must exceed both s={s} and t={t}")));
            }
        }
        let m = rows.len();
        if m == 0 {
            return Err(structural("a code needs at least one row"));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(structural("a code needs at least one column"));
        }
        let mut cells = Vec::with_capacity(m * n);
        let mut seen = HashMap::with_capacity(m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(structural(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v as usize >= q) {
                return Err(structural(format!(
                    "row {i}: symbol {} outside 1..={q}",
                    v as usize + 1
                )));
            }
            if let Some(j) = seen.insert(row.as_slice(), i) {
                return Err(structural(format!("rows {j} and {i} are identical")));
            }
            cells.extend_from_slice(row);
        }
        Ok(ArmstrongCode {
            q,
            k,
            n,
            m,
            st,
            cells,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dependency(&self) -> Option<(usize, usize)> {
        self.st
    }

    /// `s`, defaulting to 1.
    pub fn s(&self) -> usize {
        self.st.map_or(1, |(s, _)| s)
    }

    /// `t`, defaulting to 1.
    pub fn t(&self) -> usize {
        self.st.map_or(1, |(_, t)| t)
    }

    pub fn row(&self, i: usize) -> &[Symbol] {
        &self.cells[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        self.cells.chunks(self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.cells[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Symbol>> {
        self.rows().map(<[Symbol]>::to_vec).collect()
    }

    /// Same rows with different declared parameters.
    pub fn reparameterize(&self, k: usize, st: Option<(usize, usize)>) -> Result<Self> {
        Self::build(self.q, k, st, self.to_rows())
    }
}

impl fmt::Display for ArmstrongCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CodeDoc {
    q: usize,
    k: usize,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    t: Option<usize>,
    rows: Vec<Vec<u32>>,
}

impl Serialize for ArmstrongCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeDoc {
            q: self.q,
            k: self.k,
            n: self.n,
            m: self.m,
            s: self.st.map(|(s, _)| s),
            t: self.st.map(|(_, t)| t),
            rows: self
                .rows()
                .map(|r| r.iter().map(|&v| v as u32 + 1).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArmstrongCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = CodeDoc::deserialize(d)?;
        let st = match (doc.s, doc.t) {
            (Some(s), Some(t)) => Some((s, t)),
            (None, None) => None,
            _ => return Err(D::Error::custom("s and t must be given together")),
        };
        let code =
            ArmstrongCode::from_one_based(doc.q, doc.k, st, &doc.rows).map_err(D::Error::custom)?;
        if code.n != doc.n || code.m != doc.m {
            return Err(D::Error::custom("declared n/m disagree with the rows"));
        }
        Ok(code)
    }
}

/// Counterexample attached to a failed verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// Rows violating condition (i).
    Rows(Vec<usize>),
    /// A column set with no witnessing rows for condition (ii).
    Columns(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub witness: Option<Witness>,
    pub checked_exhaustively: bool,
}

impl VerificationReport {
    fn new(condition_i: Option<Witness>, condition_ii: Option<Witness>, exhaustive: bool) -> Self {
        let (ci, cii) = (condition_i.is_none(), condition_ii.is_none());
        VerificationReport {
            passed: ci && cii,
            condition_i: ci,
            condition_ii: cii,
            witness: condition_i.or(condition_ii),
            checked_exhaustively: exhaustive,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        writeln!(f, "verdict: {}", if self.passed { "PASS" } else { "FAIL" })?;
        writeln!(f, "  condition (i): {}", ok(self.condition_i))?;
        writeln!(f, "  condition (ii): {}", ok(self.condition_ii))?;
        match &self.witness {
            Some(Witness::Rows(r)) => writeln!(f, "  witness rows (0-based): {r:?}")?,
            Some(Witness::Columns(c)) => writeln!(f, "  unwitnessed columns (0-based): {c:?}")?,
            None => {}
        }
        if !self.checked_exhaustively {
            writeln!(f, "  condition (i) checked on a sample of row subsets only")?;
        }
        Ok(())
    }
}

/// Ceilings for the combinatorial enumerations done by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of `(t+1)`-row subsets enumerated exhaustively.
    pub max_row_subsets: u128,
    /// Maximum number of `(k-1)`-column subsets tracked for condition (ii).
    pub max_column_subsets: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_row_subsets: 50_000_000,
            max_column_subsets: 20_000_000,
        }
    }
}

/// Sampling budget for condition (i) of the generalized verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub samples: u64,
    pub seed: u64,
}

/// Columns where rows `a` and `b` hold equal symbols.
pub fn agreement_set(c: &ArmstrongCode, a: usize, b: usize) -> Result<Vec<usize>> {
    if a >= c.m || b >= c.m {
        return Err(invalid(format!("row index out of range (m={})", c.m)));
    }
    if a == b {
        return Err(invalid("agreement set needs two distinct rows"));
    }
    let (ra, rb) = (c.row(a), c.row(b));
    Ok((0..c.n).filter(|&j| ra[j] == rb[j]).collect())
}

/// Minimum pairwise Hamming distance.
pub fn min_distance(c: &ArmstrongCode) -> Result<usize> {
    if c.m < 2 {
        return Err(Error::Precondition(
            "minimum distance needs at least two rows".into(),
        ));
    }
    let mut best = c.n;
    for a in 0..c.m {
        for b in a + 1..c.m {
            let d = c
                .row(a)
                .iter()
                .zip(c.row(b))
                .filter(|(x, y)| x != y)
                .count();
            best = best.min(d);
        }
    }
    Ok(best)
}

/// Classical check: (i) every two rows agree in at most `k-1` columns, and
/// (ii) every `(k-1)`-set of columns is the exact agreement set of some pair.
pub fn verify_armstrong(c: &ArmstrongCode) -> Result<VerificationReport> {
    verify_armstrong_with(c, &Limits::default())
}

pub fn verify_armstrong_with(c: &ArmstrongCode, limits: &Limits) -> Result<VerificationReport> {
    if c.st.is_some_and(|st| st != (1, 1)) {
        return Err(Error::Precondition(
            "classical verification needs s = t = 1".into(),
        ));
    }
    let width = c.k - 1;
    let indexer = column_indexer(c.n, width, limits)?;
    let mut witnessed = vec![false; indexer.len()];
    let mut bad_pair = None;
    let mut agree = Vec::with_capacity(c.n);
    for a in 0..c.m {
        let ra = c.row(a);
        for b in a + 1..c.m {
            let rb = c.row(b);
            agree.clear();
            agree.extend((0..c.n).filter(|&j| ra[j] == rb[j]));
            if agree.len() > width {
                bad_pair.get_or_insert_with(|| vec![a, b]);
            } else if agree.len() == width {
                witnessed[indexer.rank(&agree)] = true;
            }
        }
    }
    let missing = witnessed
        .iter()
        .position(|w| !w)
        .map(|r| Witness::Columns(indexer.unrank(r)));
    Ok(VerificationReport::new(
        bad_pair.map(Witness::Rows),
        missing,
        true,
    ))
}

fn column_indexer(n: usize, width: usize, limits: &Limits) -> Result<SubsetIndexer> {
    let count = binomial_u128(n as u64, width as u64);
    if count > limits.max_column_subsets {
        return Err(Error::TooLarge {
            what: "number of column subsets",
            size: count,
            ceiling: limits.max_column_subsets,
            hint: "raise the column-subset ceiling",
        });
    }
    Ok(SubsetIndexer::new(n, width))
}

/// Generalized `(s, t)` check.
///
/// (i) every `t+1` rows have at most `k-1` columns showing at most `s`
/// distinct values; (ii) every `k-1` columns admit `t+1` rows on which each
/// of them shows at most `s` values while some column shows `t+1` values.
///
/// With a `budget`, condition (i) is checked on random row subsets only and
/// the report is marked non-exhaustive.
pub fn verify_st_armstrong(
    c: &ArmstrongCode,
    budget: Option<Budget>,
) -> Result<VerificationReport> {
    verify_st_armstrong_with(c, budget, &Limits::default())
}

pub fn verify_st_armstrong_with(
    c: &ArmstrongCode,
    budget: Option<Budget>,
    limits: &Limits,
) -> Result<VerificationReport> {
    let (s, t) = (c.s(), c.t());
    let size = t + 1;
    let width = c.k - 1;

    let too_many = |what, size, ceiling, hint| Error::TooLarge {
        what,
        size,
        ceiling,
        hint,
    };

    let cond_i = match budget {
        None => {
            let count = binomial_u128(c.m as u64, size as u64);
            if count > limits.max_row_subsets {
                return Err(too_many(
                    "number of (t+1)-row subsets",
                    count,
                    limits.max_row_subsets,
                    "use budget (sampling) mode",
                ));
            }
            Combinations::new(c.m, size).find(|rows| low_columns(c, rows, s) > width)
        }
        Some(b) => {
            let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
            if c.m < size {
                None
            } else {
                (0..b.samples).find_map(|_| {
                    let mut rows = sample(&mut rng, c.m, size).into_vec();
                    rows.sort_unstable();
                    (low_columns(c, &rows, s) > width).then_some(rows)
                })
            }
        }
    };

    let indexer = column_indexer(c.n, width, limits)?;
    let cond_ii = (0..indexer.len())
        .map(|r| indexer.unrank(r))
        .find(|cols| !has_witness_rows(c, cols, s, size));

    Ok(VerificationReport::new(
        cond_i.map(Witness::Rows),
        cond_ii.map(Witness::Columns),
        budget.is_none(),
    ))
}

fn distinct_on(c: &ArmstrongCode, rows: &[usize], col: usize) -> usize {
    let mut vals: Vec<Symbol> = rows.iter().map(|&r| c.get(r, col)).collect();
    vals.sort_unstable();
    vals.dedup();
    vals.len()
}

/// Number of columns showing at most `s` distinct values on `rows`.
fn low_columns(c: &ArmstrongCode, rows: &[usize], s: usize) -> usize {
    (0..c.n).filter(|&j| distinct_on(c, rows, j) <= s).count()
}

fn has_full_column(c: &ArmstrongCode, rows: &[usize]) -> bool {
    (0..c.n).any(|j| distinct_on(c, rows, j) == rows.len())
}

/// Searches `size` rows that show at most `s` values on every column of
/// `cols` and `size` values on some column.
fn has_witness_rows(c: &ArmstrongCode, cols: &[usize], s: usize, size: usize) -> bool {
    if c.m < size {
        return false;
    }
    if s == 1 {
        // Rows must agree on `cols`: only rows sharing a value pattern qualify.
        let mut groups: HashMap<Vec<Symbol>, Vec<usize>> = HashMap::new();
        for r in 0..c.m {
            groups
                .entry(cols.iter().map(|&j| c.get(r, j)).collect())
                .or_default()
                .push(r);
        }
        return groups.values().filter(|g| g.len() >= size).any(|g| {
            Combinations::new(g.len(), size).any(|pick| {
                let rows: Vec<usize> = pick.iter().map(|&i| g[i]).collect();
                has_full_column(c, &rows)
            })
        });
    }
    let mut chosen = Vec::with_capacity(size);
    let mut seen: Vec<Vec<Symbol>> = vec![Vec::with_capacity(s); cols.len()];
    extend_witness(c, cols, s, size, 0, &mut chosen, &mut seen)
}

fn extend_witness(
    c: &ArmstrongCode,
    cols: &[usize],
    s: usize,
    size: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    seen: &mut [Vec<Symbol>],
) -> bool {
    if chosen.len() == size {
        return has_full_column(c, chosen);
    }
    for r in from..=(c.m - (size - chosen.len())) {
        let mut pushed = Vec::with_capacity(cols.len());
        let mut ok = true;
        for (ci, &j) in cols.iter().enumerate() {
            let v = c.get(r, j);
            if !seen[ci].contains(&v) {
                if seen[ci].len() == s {
                    ok = false;
                    break;
                }
                seen[ci].push(v);
                pushed.push(ci);
            }
        }
        if ok {
            chosen.push(r);
            if extend_witness(c, cols, s, size, r + 1, chosen, seen) {
                return true;
            }
            chosen.pop();
        }
        for ci in pushed {
            seen[ci].pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn toy() -> ArmstrongCode {
        ArmstrongCode::from_one_based(2, 2, None, &[vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]])
            .unwrap()
    }

    #[test]
    fn agreement_sets() {
        let ex1 = fixtures::k7_odc_code();
        // "3 2 2 1 2 1 1" vs "1 3 2 2 1 2 1": equal in columns 2 and 6.
        assert_eq!(agreement_set(&ex1, 0, 1).unwrap(), vec![2, 6]);
        let toy = toy();
        assert_eq!(agreement_set(&toy, 0, 1).unwrap(), vec![0]);
        let ex3 = fixtures::st22_q4_code();
        assert!(agreement_set(&ex3, 0, 1).unwrap().len() <= 3);
        assert!(agreement_set(&toy, 0, 3).is_err());
        assert!(agreement_set(&toy, 1, 1).is_err());
    }

    #[test]
    fn k7_fixture_verifies() {
        let c = fixtures::k7_odc_code();
        let r = verify_armstrong(&c).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(min_distance(&c).unwrap(), 5);
    }

    #[test]
    fn mutated_k7_fixture_fails() {
        let mut rows: Vec<Vec<u32>> = fixtures::k7_odc_code()
            .rows()
            .map(|r| r.iter().map(|&v| v as u32 + 1).collect())
            .collect();
        rows[0][0] = 1;
        let c = ArmstrongCode::from_one_based(3, 3, None, &rows).unwrap();
        let r = verify_armstrong(&c).unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn single_row_fails_condition_ii() {
        let c = ArmstrongCode::new(3, 3, vec![vec![0, 1, 2, 0]]).unwrap();
        let r = verify_armstrong(&c).unwrap();
        assert!(r.condition_i);
        assert!(!r.condition_ii);
        assert!(matches!(r.witness, Some(Witness::Columns(_))));
    }

    #[test]
    fn st22_fixture_verifies() {
        let c = fixtures::st22_q4_code();
        let r = verify_st_armstrong(&c, None).unwrap();
        assert!(r.passed, "{r}");
        assert!(r.checked_exhaustively);
    }

    #[test]
    fn toy_code_passes_st() {
        let c = toy().reparameterize(2, Some((1, 1))).unwrap();
        assert!(verify_st_armstrong(&c, None).unwrap().passed);
        assert!(verify_armstrong(&c).unwrap().passed);
    }

    #[test]
    fn constant_column_fails_condition_i() {
        let rows = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 2]];
        let c = ArmstrongCode::with_dependency(3, 2, 1, 1, rows).unwrap();
        let r = verify_st_armstrong(&c, None).unwrap();
        assert!(!r.condition_i);
        assert!(matches!(r.witness, Some(Witness::Rows(_))));
    }

    #[test]
    fn differing_everywhere_distance() {
        let c = ArmstrongCode::new(3, 2, vec![vec![0, 1, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(min_distance(&c).unwrap(), 3);
    }

    #[test]
    fn invariants_enforced() {
        assert!(ArmstrongCode::new(2, 2, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(ArmstrongCode::new(2, 2, vec![vec![0, 2]]).is_err());
        assert!(ArmstrongCode::new(2, 1, vec![vec![0, 1]]).is_err());
        assert!(ArmstrongCode::with_dependency(2, 2, 1, 2, vec![vec![0, 1]]).is_err());
        assert!(ArmstrongCode::new(2, 2, vec![vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn exhaustive_ceiling_points_to_budget_mode() {
        let rows: Vec<Vec<Symbol>> = (0..40u16).map(|i| vec![i % 5, i / 5]).collect();
        let c = ArmstrongCode::with_dependency(8, 2, 1, 3, rows).unwrap();
        let tight = Limits {
            max_row_subsets: 100,
            ..Limits::default()
        };
        assert!(matches!(
            verify_st_armstrong_with(&c, None, &tight),
            Err(Error::TooLarge { .. })
        ));
        let r = verify_st_armstrong_with(
            &c,
            Some(Budget {
                samples: 50,
                seed: 1,
            }),
            &tight,
        )
        .unwrap();
        assert!(!r.checked_exhaustively);
    }

    #[test]
    fn classical_verifier_rejects_generalized_parameters() {
        assert!(verify_armstrong(&fixtures::st22_q4_code()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = fixtures::st22_q4_code();
        let json = serde_json::to_string(&c).unwrap();
        let back: ArmstrongCode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
