//! Partitions, double covers, group divisible designs and base partitions.
//!
//! Every type here is validated structurally on construction (parts are
//! disjoint and cover the ambient point set, blocks live on the point set,
//! and so on). Whether an object has the *combinatorial* property a
//! construction needs is a separate question answered by the `verify_*`
//! functions, which return a [`DesignReport`] instead of an error.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, structural, Error, Result};

/// A point of a design: either a residue/integer label or the fixed point ∞.
///
/// `Inf` sorts after every finite point and is never an alias for an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Fin(u32),
    Inf,
}

impl Point {
    /// Translate by `j` modulo `modulus`; ∞ is fixed.
    pub fn shift(self, j: u32, modulus: u32) -> Point {
        match self {
            Point::Fin(a) => Point::Fin(((a as u64 + j as u64) % modulus as u64) as u32),
            Point::Inf => Point::Inf,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Point::Fin(a) => Some(a),
            Point::Inf => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Fin(a) => write!(f, "{a}"),
            Point::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Point::Inf);
        }
        s.parse::<u32>()
            .map(Point::Fin)
            .map_err(|_| invalid(format!("bad point token {s:?}")))
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Point::Fin(a) => s.serialize_u32(*a),
            Point::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(a) => Ok(Point::Fin(a)),
            Raw::Str(s) if s == "inf" => Ok(Point::Inf),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad point {s:?}"))),
        }
    }
}

/// The ambient point set: `{0..m-1}`, or `{0..m-2} ∪ {∞}` when `has_infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointSet {
    pub size: usize,
    pub has_infinity: bool,
}

impl PointSet {
    pub fn new(size: usize, has_infinity: bool) -> Result<Self> {
        if size < 2 {
            return Err(structural(format!(
                "point set needs at least 2 points, got {size}"
            )));
        }
        Ok(PointSet { size, has_infinity })
    }

    /// Number of finite points.
    pub fn finite(&self) -> usize {
        self.size - usize::from(self.has_infinity)
    }

    /// Dense index in `0..size`; ∞ maps to the last index.
    pub fn index_of(&self, p: Point) -> Option<usize> {
        match p {
            Point::Fin(a) if (a as usize) < self.finite() => Some(a as usize),
            Point::Inf if self.has_infinity => Some(self.size - 1),
            _ => None,
        }
    }

    pub fn point_at(&self, idx: usize) -> Point {
        if self.has_infinity && idx == self.size - 1 {
            Point::Inf
        } else {
            Point::Fin(idx as u32)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size).map(|i| self.point_at(i))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index_of(p).is_some()
    }
}

/// A set of pairwise disjoint nonempty parts.
///
/// Parts are stored in canonical order: points ascending inside a part,
/// parts by size descending then minimum element ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<Vec<Point>>,
}

impl Partition {
    pub fn new(parts: Vec<Vec<Point>>) -> Result<Self> {
        let mut parts = parts;
        let mut seen = std::collections::HashSet::new();
        for part in &mut parts {
            if part.is_empty() {
                return Err(structural("empty part"));
            }
            part.sort_unstable();
            for &p in part.iter() {
                if !seen.insert(p) {
                    return Err(structural(format!(
                        "point {p} occurs in more than one part"
                    )));
                }
            }
        }
        parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[Vec<Point>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn num_points(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Index of the part holding `p`, in canonical order.
    pub fn part_of(&self, p: Point) -> Option<usize> {
        self.parts
            .iter()
            .position(|part| part.binary_search(&p).is_ok())
    }

    pub fn covers(&self, a: Point, b: Point) -> bool {
        matches!((self.part_of(a), self.part_of(b)), (Some(x), Some(y)) if x == y)
    }

    pub fn translate(&self, j: u32, modulus: u32) -> Partition {
        let parts = self
            .parts
            .iter()
            .map(|part| part.iter().map(|p| p.shift(j, modulus)).collect())
            .collect();
        Partition::new(parts).expect("translation preserves disjointness")
    }

    /// Whether the parts cover exactly the points of `set`.
    fn spans(&self, set: &PointSet) -> bool {
        self.num_points() == set.size && self.parts.iter().flatten().all(|&p| set.contains(p))
    }

    /// Per-point part labels, indexed by [`PointSet::index_of`].
    pub(crate) fn labels(&self, set: &PointSet) -> Vec<usize> {
        let mut label = vec![usize::MAX; set.size];
        for (j, part) in self.parts.iter().enumerate() {
            for &p in part {
                label[set.index_of(p).expect("partition spans the set")] = j;
            }
        }
        label
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Vec<Point>>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A family of partitions of a common point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSystem {
    points: PointSet,
    partitions: Vec<Partition>,
}

impl PartitionSystem {
    pub fn new(points: PointSet, partitions: Vec<Partition>) -> Result<Self> {
        for (i, p) in partitions.iter().enumerate() {
            if !p.spans(&points) {
                return Err(structural(format!(
                    "partition {i} does not partition the {}-point set",
                    points.size
                )));
            }
        }
        Ok(PartitionSystem { points, partitions })
    }

    pub fn points(&self) -> PointSet {
        self.points
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }
}

impl<'de> Deserialize<'de> for PartitionSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: PointSet,
            partitions: Vec<Partition>,
        }
        let raw = Raw::deserialize(d)?;
        PartitionSystem::new(raw.points, raw.partitions).map_err(serde::de::Error::custom)
    }
}

/// Multiset of part sizes, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphType(pub Vec<usize>);

impl GraphType {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(invalid("graph type needs positive component sizes"));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(GraphType(sizes))
    }

    /// `q` disjoint triangles.
    pub fn triangles(q: usize) -> Self {
        GraphType(vec![3; q])
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of edges of the disjoint union of cliques.
    pub fn edges(&self) -> usize {
        self.0.iter().map(|&s| s * (s - 1) / 2).sum()
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Accepts `3,3,2`, `3 3 2`, or clique notation such as `2K3+K2` / `3K3`.
impl FromStr for GraphType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sizes = Vec::new();
        for tok in s.split(|c: char| c == ',' || c == '+' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let bad = || invalid(format!("bad graph type token {tok:?}"));
            match tok.split_once(['K', 'k']) {
                Some((count, size)) => {
                    let count = if count.is_empty() {
                        1
                    } else {
                        count.parse().map_err(|_| bad())?
                    };
                    let size: usize = size.trim_start_matches('_').parse().map_err(|_| bad())?;
                    sizes.extend(std::iter::repeat_n(size, count));
                }
                None => sizes.push(tok.parse().map_err(|_| bad())?),
            }
        }
        GraphType::new(sizes)
    }
}

pub fn graph_type_of(p: &Partition) -> GraphType {
    GraphType(p.parts().iter().map(Vec::len).collect())
}

/// How strongly two partitions of a double cover must overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    /// Every two partitions share exactly one covered 2-subset (ODC).
    Exact,
    /// At least one (extODC).
    AtLeast,
    /// At most one (subODC).
    AtMost,
}

impl CoverMode {
    fn accepts(self, common: usize) -> bool {
        match self {
            CoverMode::Exact => common == 1,
            CoverMode::AtLeast => common >= 1,
            CoverMode::AtMost => common <= 1,
        }
    }
}

impl FromStr for CoverMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(CoverMode::Exact),
            "at-least" | "at_least" => Ok(CoverMode::AtLeast),
            "at-most" | "at_most" => Ok(CoverMode::AtMost),
            _ => Err(invalid(format!("unknown cover mode {s:?}"))),
        }
    }
}

impl fmt::Display for CoverMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverMode::Exact => "exact",
            CoverMode::AtLeast => "at-least",
            CoverMode::AtMost => "at-most",
        })
    }
}

/// One named property check: its verdict, how many violations were seen,
/// and a description of the first one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            passed: true,
            violations: 0,
            first_violation: None,
        }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        if self.first_violation.is_none() {
            self.first_violation = Some(msg());
        }
        self.violations += 1;
        self.passed = false;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub details: Vec<String>,
}

impl DesignReport {
    fn from_checks(checks: Vec<Check>, details: Vec<String>) -> Self {
        DesignReport {
            passed: checks.iter().all(|c| c.passed),
            checks,
            details,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for DesignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", if self.passed { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            write!(
                f,
                "  {}: {}",
                c.name,
                if c.passed { "ok" } else { "FAILED" }
            )?;
            if let Some(v) = &c.first_violation {
                write!(f, " ({} violations; first: {v})", c.violations)?;
            }
            writeln!(f)?;
        }
        for d in &self.details {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

pub const PAIR_COVERAGE: &str = "pair-coverage";
pub const PAIRWISE_OVERLAP: &str = "pairwise-overlap";

/// Checks that every 2-subset is covered by exactly two partitions and that
/// every two partitions share a number of covered 2-subsets allowed by `mode`.
pub fn verify_double_cover(ps: &PartitionSystem, mode: CoverMode) -> Result<DesignReport> {
    if ps.is_empty() {
        return Err(Error::Precondition("partition system is empty".into()));
    }
    let set = ps.points();
    let m = set.size;
    let n = ps.len();
    let labels: Vec<Vec<usize>> = ps.partitions().iter().map(|p| p.labels(&set)).collect();

    let mut coverage = Check::new(PAIR_COVERAGE);
    let mut common = vec![0usize; n * n];
    let mut covering = Vec::with_capacity(n);
    for x in 0..m {
        for y in x + 1..m {
            covering.clear();
            covering.extend((0..n).filter(|&c| labels[c][x] == labels[c][y]));
            if covering.len() != 2 {
                coverage.fail(|| {
                    format!(
                        "{{{}, {}}} covered by {} partitions",
                        set.point_at(x),
                        set.point_at(y),
                        covering.len()
                    )
                });
            }
            for (i, &a) in covering.iter().enumerate() {
                for &b in &covering[i + 1..] {
                    common[a * n + b] += 1;
                }
            }
        }
    }

    let mut overlap = Check::new(PAIRWISE_OVERLAP);
    for a in 0..n {
        for b in a + 1..n {
            let c = common[a * n + b];
            if !mode.accepts(c) {
                overlap.fail(|| {
                    format!("partitions {a} and {b} share {c} covered 2-subsets ({mode} required)")
                });
            }
        }
    }
    let details = vec![format!("{n} partitions of a {m}-point set, mode {mode}")];
    Ok(DesignReport::from_checks(vec![coverage, overlap], details))
}

/// Group divisible design: points, groups, and blocks of a fixed size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GddDesign {
    points: PointSet,
    groups: Partition,
    blocks: Vec<Vec<Point>>,
    block_size: usize,
}

impl GddDesign {
    /// Blocks are stored sorted, both internally and as a list.
    pub fn new(
        points: PointSet,
        groups: Partition,
        blocks: Vec<Vec<Point>>,
        block_size: usize,
    ) -> Result<Self> {
        if !groups.spans(&points) {
            return Err(structural("groups do not partition the point set"));
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            if let Some(p) = b.iter().find(|p| !points.contains(**p)) {
                return Err(structural(format!(
                    "block point {p} is outside the point set"
                )));
            }
            b.sort_unstable();
        }
        blocks.sort();
        Ok(GddDesign {
            points,
            groups,
            blocks,
            block_size,
        })
    }

    pub fn points(&self) -> PointSet {
        self.points
    }

    pub fn groups(&self) -> &Partition {
        &self.groups
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// `(group size, multiplicity)` in ascending size order.
    pub fn type_vector(&self) -> Vec<(usize, usize)> {
        type_vector_of(self.groups.parts().iter().map(Vec::len))
    }

    pub fn type_string(&self) -> String {
        format_type(&self.type_vector())
    }
}

impl<'de> Deserialize<'de> for GddDesign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: PointSet,
            groups: Partition,
            blocks: Vec<Vec<Point>>,
            block_size: usize,
        }
        let r = Raw::deserialize(d)?;
        GddDesign::new(r.points, r.groups, r.blocks, r.block_size).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn type_vector_of(sizes: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut counts = BTreeMap::new();
    for s in sizes {
        *counts.entry(s).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

/// Exponential notation, e.g. `2^18 17^1`.
pub fn format_type(tv: &[(usize, usize)]) -> String {
    tv.iter()
        .map(|(g, t)| format!("{g}^{t}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses exponential notation `g1^t1 g2^t2 ...`.
pub fn parse_type(s: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (g, t) = tok
            .split_once('^')
            .ok_or_else(|| invalid(format!("type token {tok:?} is not of the form g^t")))?;
        let g: usize = g
            .parse()
            .map_err(|_| invalid(format!("bad group size in {tok:?}")))?;
        let t: usize = t
            .parse()
            .map_err(|_| invalid(format!("bad exponent in {tok:?}")))?;
        if g == 0 || t == 0 {
            return Err(invalid(format!("type token {tok:?} must be positive")));
        }
        out.push((g, t));
    }
    if out.is_empty() {
        return Err(invalid("empty type"));
    }
    Ok(type_vector_of(
        out.iter().flat_map(|&(g, t)| std::iter::repeat_n(g, t)),
    ))
}

pub const BLOCK_SIZE: &str = "block-size";
pub const GROUP_INTERSECTION: &str = "block-group-intersection";
pub const CROSS_PAIR_COVERAGE: &str = "cross-pair-coverage";

pub fn verify_gdd(g: &GddDesign) -> DesignReport {
    let set = g.points();
    let m = set.size;
    let labels = g.groups().labels(&set);
    let idx = |p: Point| set.index_of(p).expect("validated at construction");

    let mut size = Check::new(BLOCK_SIZE);
    let mut meet = Check::new(GROUP_INTERSECTION);
    let mut pair_count = vec![0u32; m * m];
    for (bi, block) in g.blocks().iter().enumerate() {
        if block.len() != g.block_size() {
            size.fail(|| {
                format!(
                    "block {bi} has {} points, expected {}",
                    block.len(),
                    g.block_size()
                )
            });
        }
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                let (x, y) = (idx(a), idx(b));
                if x == y || labels[x] == labels[y] {
                    meet.fail(|| format!("block {bi} meets a group in {a} and {b}"));
                } else {
                    pair_count[x.min(y) * m + x.max(y)] += 1;
                }
            }
        }
    }
    let mut cover = Check::new(CROSS_PAIR_COVERAGE);
    for x in 0..m {
        for y in x + 1..m {
            if labels[x] != labels[y] && pair_count[x * m + y] != 1 {
                let c = pair_count[x * m + y];
                cover.fail(|| {
                    format!(
                        "{{{}, {}}} lies in {c} blocks",
                        set.point_at(x),
                        set.point_at(y)
                    )
                });
            }
        }
    }
    let details = vec![
        format!("type {}", g.type_string()),
        format!("{} blocks of size {}", g.blocks().len(), g.block_size()),
    ];
    DesignReport::from_checks(vec![size, meet, cover], details)
}

/// A partition of `Z_{m-1} ∪ {∞}` into triples, meant to be developed
/// cyclically (∞ fixed) into `m - 1` partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePartition {
    order: usize,
    triples: Partition,
}

impl BasePartition {
    pub fn new(order: usize, triples: Partition) -> Result<Self> {
        if order < 6 || !order.is_multiple_of(6) {
            return Err(structural(format!(
                "base partition order must be an even multiple of 3, got {order}"
            )));
        }
        let set = PointSet::new(order, true)?;
        if !triples.spans(&set) {
            return Err(structural(format!(
                "triples do not partition Z_{} ∪ {{inf}}",
                order - 1
            )));
        }
        if let Some(p) = triples.parts().iter().find(|p| p.len() != 3) {
            return Err(structural(format!(
                "part of size {} in a base partition",
                p.len()
            )));
        }
        Ok(BasePartition { order, triples })
    }

    pub fn from_triples(order: usize, triples: &[[Point; 3]]) -> Result<Self> {
        let parts = triples.iter().map(|t| t.to_vec()).collect();
        BasePartition::new(order, Partition::new(parts)?)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> u32 {
        (self.order - 1) as u32
    }

    pub fn triples(&self) -> &Partition {
        &self.triples
    }

    pub fn point_set(&self) -> PointSet {
        PointSet {
            size: self.order,
            has_infinity: true,
        }
    }

    /// All 2-subsets lying inside some triple.
    pub(crate) fn pairs(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::with_capacity(self.order);
        for t in self.triples.parts() {
            for i in 0..3 {
                for j in i + 1..3 {
                    out.push((t[i], t[j]));
                }
            }
        }
        out
    }
}

impl<'de> Deserialize<'de> for BasePartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            triples: Partition,
        }
        let r = Raw::deserialize(d)?;
        BasePartition::new(r.order, r.triples).map_err(serde::de::Error::custom)
    }
}

pub const DIFFERENCES: &str = "difference-multiset";
pub const TRANSLATE_OVERLAP: &str = "translate-overlap";

/// Checks the two base-partition properties: the finite differences inside
/// triples hit every nonzero residue exactly twice, and every nonzero shift
/// `i` maps some pair inside a triple onto another such pair.
pub fn verify_base_partition(bp: &BasePartition) -> DesignReport {
    let v = bp.modulus();
    let pairs = bp.pairs();

    let mut diff_count = vec![0u32; v as usize];
    for &(a, b) in &pairs {
        if let (Point::Fin(a), Point::Fin(b)) = (a, b) {
            diff_count[((a + v - b) % v) as usize] += 1;
            diff_count[((b + v - a) % v) as usize] += 1;
        }
    }
    let mut diffs = Check::new(DIFFERENCES);
    for (d, &c) in diff_count.iter().enumerate().skip(1) {
        if c != 2 {
            diffs.fail(|| format!("difference {d} occurs {c} times"));
        }
    }
    if diff_count[0] != 0 {
        diffs.fail(|| "difference 0 occurs".to_string());
    }

    let normalized = |a: Point, b: Point| if a <= b { (a, b) } else { (b, a) };
    let pair_set: std::collections::HashSet<(Point, Point)> =
        pairs.iter().map(|&(a, b)| normalized(a, b)).collect();
    let mut shifts = Check::new(TRANSLATE_OVERLAP);
    for i in 1..v {
        let hit = pairs
            .iter()
            .any(|&(a, b)| pair_set.contains(&normalized(a.shift(i, v), b.shift(i, v))));
        if !hit {
            shifts.fail(|| format!("no pair is carried onto a pair by the shift {i}"));
        }
    }
    DesignReport::from_checks(vec![diffs, shifts], vec![format!("order {}", bp.order())])
}

/// The `m - 1` translates `P_j = {j + C : C ∈ P}`, `j ∈ Z_{m-1}`.
pub fn develop_base_partition(bp: &BasePartition) -> Result<PartitionSystem> {
    let report = verify_base_partition(bp);
    if !report.passed {
        return Err(Error::Precondition(format!(
            "base partition fails verification:\n{report}"
        )));
    }
    Ok(develop_unchecked(bp))
}

pub(crate) fn develop_unchecked(bp: &BasePartition) -> PartitionSystem {
    let v = bp.modulus();
    let partitions = (0..v).map(|j| bp.triples().translate(j, v)).collect();
    PartitionSystem::new(bp.point_set(), partitions).expect("translates partition the same set")
}
