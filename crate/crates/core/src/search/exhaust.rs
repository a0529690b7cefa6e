use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::designs::{CoverMode, GraphType, Partition, PartitionSystem, Point, PointSet};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustConfig {
    /// Fix the first partition of the type (every solution is isomorphic
    /// to one containing it).
    pub pruning: bool,
    pub workers: usize,
    pub max_points: usize,
    pub max_partitions: usize,
    /// Largest `m` for which isomorphism classes are computed by trying
    /// all `m!` relabelings.
    pub max_points_for_classes: usize,
}

impl Default for ExhaustConfig {
    fn default() -> Self {
        ExhaustConfig {
            pruning: true,
            workers: 1,
            max_points: 12,
            max_partitions: 100_000,
            max_points_for_classes: 9,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustResult {
    pub m: usize,
    pub graph_type: GraphType,
    pub mode: CoverMode,
    /// Partitions in each solution: `2 C(m,2) / edges`.
    pub per_system: usize,
    /// Number of partitions of `[m]` with the given graph type.
    pub partitions_of_type: usize,
    pub pruned: bool,
    /// All solutions (containing the fixed first partition when pruned),
    /// sorted.
    pub solutions: Vec<PartitionSystem>,
    /// One representative per isomorphism class, when computed.
    pub classes: Option<Vec<PartitionSystem>>,
    pub nodes: u64,
    pub elapsed: Duration,
}

fn edge_index(m: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; m]; m];
    for (next, (a, b)) in (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .enumerate()
    {
        idx[a][b] = next;
        idx[b][a] = next;
    }
    idx
}

/// All partitions of `{0..m-1}` with the given part sizes, each generated
/// once: parts are opened at their smallest point, in increasing order.
pub fn partitions_of_type(m: usize, gt: &GraphType) -> Result<Vec<Partition>> {
    if gt.order() != m {
        return Err(invalid(format!(
            "graph type {gt} has {} vertices, not {m}",
            gt.order()
        )));
    }
    let mut sizes: Vec<usize> = gt.0.clone();
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    gen_parts(m, &mut sizes, &mut used, &mut parts, &mut out);
    out.into_iter()
        .map(|ps| {
            Partition::new(
                ps.into_iter()
                    .map(|p| p.into_iter().map(|x| Point::Fin(x as u32)).collect())
                    .collect(),
            )
        })
        .collect()
}

fn gen_parts(
    m: usize,
    sizes: &mut Vec<usize>,
    used: &mut [bool],
    parts: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(x) = (0..m).find(|&p| !used[p]) else {
        out.push(parts.clone());
        return;
    };
    let mut distinct = sizes.clone();
    distinct.dedup();
    for size in distinct {
        let pos = sizes.iter().position(|&s| s == size).expect("present");
        sizes.remove(pos);
        used[x] = true;
        let free: Vec<usize> = (x + 1..m).filter(|&p| !used[p]).collect();
        for rest in crate::combin::Combinations::new(free.len(), size - 1) {
            let mut part = vec![x];
            part.extend(rest.iter().map(|&i| free[i]));
            for &p in &part[1..] {
                used[p] = true;
            }
            parts.push(part);
            gen_parts(m, sizes, used, parts, out);
            let part = parts.pop().expect("pushed");
            for &p in &part[1..] {
                used[p] = false;
            }
        }
        used[x] = false;
        sizes.insert(pos, size);
    }
}

fn masks(parts: &[Partition], eidx: &[Vec<usize>]) -> Vec<u128> {
    parts
        .iter()
        .map(|p| {
            let mut mask = 0u128;
            for part in p.parts() {
                for (i, a) in part.iter().enumerate() {
                    for b in &part[i + 1..] {
                        let (Point::Fin(a), Point::Fin(b)) = (a, b) else {
                            unreachable!("finite points")
                        };
                        mask |= 1u128 << eidx[*a as usize][*b as usize];
                    }
                }
            }
            mask
        })
        .collect()
}

struct Search<'a> {
    masks: &'a [u128],
    edges: usize,
    per_system: usize,
    mode: CoverMode,
    cover: Vec<u8>,
    chosen: Vec<usize>,
    nodes: u64,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn compatible(&self, c: usize) -> bool {
        if self.chosen.contains(&c) {
            return false;
        }
        self.chosen.iter().all(|&o| {
            let shared = (self.masks[c] & self.masks[o]).count_ones();
            match self.mode {
                CoverMode::Exact => shared == 1,
                CoverMode::AtLeast => shared >= 1,
                CoverMode::AtMost => shared <= 1,
            }
        })
    }

    fn full(&self) -> u128 {
        (0..self.edges)
            .filter(|&e| self.cover[e] >= 2)
            .fold(0, |acc, e| acc | 1u128 << e)
    }

    fn add(&mut self, c: usize, delta: i8) {
        let mut mask = self.masks[c];
        while mask != 0 {
            let e = mask.trailing_zeros() as usize;
            self.cover[e] = (self.cover[e] as i8 + delta) as u8;
            mask &= mask - 1;
        }
        if delta > 0 {
            self.chosen.push(c);
        } else {
            self.chosen.pop();
        }
    }

    /// Branching edge and its candidates, or `None` at a dead end. An
    /// empty candidate list with no deficient edge means complete.
    fn branch(&self) -> Option<(usize, Vec<usize>)> {
        let full = self.full();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for e in 0..self.edges {
            let need = 2 - self.cover[e] as usize;
            if need == 0 {
                continue;
            }
            let cands: Vec<usize> = (0..self.masks.len())
                .filter(|&c| {
                    self.masks[c] >> e & 1 == 1 && self.masks[c] & full == 0 && self.compatible(c)
                })
                .collect();
            if cands.len() < need {
                return None;
            }
            if best.as_ref().is_none_or(|(_, b)| cands.len() < b.len()) {
                best = Some((e, cands));
            }
        }
        Some(best.unwrap_or((usize::MAX, Vec::new())))
    }

    /// `floor`: second pick on edge `pending` must exceed this index.
    fn run(&mut self, pending: Option<(usize, usize)>) {
        self.nodes += 1;
        if self.chosen.len() == self.per_system {
            if self.cover.iter().all(|&c| c == 2) {
                let mut s = self.chosen.clone();
                s.sort_unstable();
                self.found.push(s);
            }
            return;
        }
        let (e, cands, floor) = match pending {
            Some((e, floor)) => {
                let full = self.full();
                let cands: Vec<usize> = (floor + 1..self.masks.len())
                    .filter(|&c| {
                        self.masks[c] >> e & 1 == 1
                            && self.masks[c] & full == 0
                            && self.compatible(c)
                    })
                    .collect();
                (e, cands, floor)
            }
            None => match self.branch() {
                None => return,
                Some((usize::MAX, _)) => return,
                Some((e, cands)) => (e, cands, 0),
            },
        };
        let _ = floor;
        let need = 2 - self.cover[e] as usize;
        for c in cands {
            self.add(c, 1);
            let next = if pending.is_none() && need == 2 {
                Some((e, c))
            } else {
                None
            };
            self.run(next);
            self.add(c, -1);
        }
    }
}

/// Every family of `2C(m,2)/edges` partitions of `[m]` of type `gt` that
/// covers each pair exactly twice and whose members pairwise share exactly
/// one / at least one / at most one edge, by edge-driven backtracking.
pub fn exhaust_double_cover(
    m: usize,
    gt: &GraphType,
    mode: CoverMode,
    cfg: &ExhaustConfig,
) -> Result<ExhaustResult> {
    let start = Instant::now();
    if m > cfg.max_points.min(16) {
        return Err(Error::TooLarge {
            what: "point count",
            size: m as u128,
            ceiling: cfg.max_points.min(16) as u128,
            hint: "raise the ceiling (at most 16)",
        });
    }
    if m < 2 {
        return Err(invalid("need at least two points"));
    }
    let edges_per = gt.edges();
    let pairs = m * (m - 1) / 2;
    if edges_per == 0 || !(2 * pairs).is_multiple_of(edges_per) {
        return Err(invalid(format!(
            "type {gt} cannot double cover K_{m}: 2*{pairs} is not a multiple of {edges_per}"
        )));
    }
    let per_system = 2 * pairs / edges_per;
    let parts = partitions_of_type(m, gt)?;
    if parts.len() > cfg.max_partitions {
        return Err(Error::TooLarge {
            what: "number of partitions of the type",
            size: parts.len() as u128,
            ceiling: cfg.max_partitions as u128,
            hint: "raise the ceiling",
        });
    }
    let eidx = edge_index(m);
    let ms = masks(&parts, &eidx);

    let fresh = || Search {
        masks: &ms,
        edges: pairs,
        per_system,
        mode,
        cover: vec![0; pairs],
        chosen: Vec::new(),
        nodes: 0,
        found: Vec::new(),
    };
    let mut root = fresh();
    if cfg.pruning {
        root.add(0, 1);
    }
    let (found, nodes) = if cfg.workers <= 1 || per_system <= root.chosen.len() {
        root.run(None);
        (root.found, root.nodes)
    } else {
        // split the first branching level round-robin across workers
        root.nodes += 1;
        let first = root.branch();
        let base = root.chosen.clone();
        let results = Mutex::new((Vec::new(), root.nodes));
        if let Some((e, cands)) = first.filter(|(e, _)| *e != usize::MAX) {
            let need = 2 - root.cover[e] as usize;
            std::thread::scope(|s| {
                for w in 0..cfg.workers {
                    let (cands, base, results, fresh) = (&cands, &base, &results, &fresh);
                    s.spawn(move || {
                        let mut st = fresh();
                        for &b in base {
                            st.add(b, 1);
                        }
                        for &c in cands.iter().skip(w).step_by(cfg.workers) {
                            st.add(c, 1);
                            st.run(if need == 2 { Some((e, c)) } else { None });
                            st.add(c, -1);
                        }
                        let mut r = results.lock().expect("lock");
                        r.0.extend(st.found);
                        r.1 += st.nodes;
                    });
                }
            });
        }
        results.into_inner().expect("lock")
    };

    let mut found = found;
    found.sort();
    let point_set = PointSet::new(m, false)?;
    let to_system = |s: &Vec<usize>| {
        PartitionSystem::new(point_set, s.iter().map(|&i| parts[i].clone()).collect())
    };
    let solutions = found.iter().map(to_system).collect::<Result<Vec<_>>>()?;
    let classes = if m <= cfg.max_points_for_classes {
        let mut seen = std::collections::BTreeMap::new();
        for (sol, sys) in found.iter().zip(&solutions) {
            let key = canonical_masks(&sol.iter().map(|&i| ms[i]).collect::<Vec<_>>(), m, &eidx);
            seen.entry(key).or_insert_with(|| sys.clone());
        }
        Some(seen.into_values().collect())
    } else {
        None
    };
    Ok(ExhaustResult {
        m,
        graph_type: gt.clone(),
        mode,
        per_system,
        partitions_of_type: parts.len(),
        pruned: cfg.pruning,
        solutions,
        classes,
        nodes,
        elapsed: start.elapsed(),
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lexicographically least sorted list of edge masks over all relabelings.
fn canonical_masks(sys: &[u128], m: usize, eidx: &[Vec<usize>]) -> Vec<u128> {
    let mut ends = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            ends.push((a, b));
        }
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<Vec<u128>> = None;
    loop {
        let emap: Vec<usize> = ends.iter().map(|&(a, b)| eidx[perm[a]][perm[b]]).collect();
        let mut img: Vec<u128> = sys
            .iter()
            .map(|&mask| {
                let mut out = 0u128;
                let mut x = mask;
                while x != 0 {
                    let e = x.trailing_zeros() as usize;
                    out |= 1u128 << emap[e];
                    x &= x - 1;
                }
                out
            })
            .collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("at least the identity")
}

/// Whether two partition systems on `{0..m-1}` are related by a relabeling
/// of points (brute force; small `m` only).
pub fn isomorphic(a: &PartitionSystem, b: &PartitionSystem) -> Result<bool> {
    let m = a.points().size;
    if a.points() != b.points() || a.points().has_infinity || a.len() != b.len() {
        return Ok(false);
    }
    if m > 10 {
        return Err(invalid("isomorphism test limited to 10 points"));
    }
    let eidx = edge_index(m);
    let (ma, mb) = (masks(a.partitions(), &eidx), masks(b.partitions(), &eidx));
    Ok(canonical_masks(&ma, m, &eidx) == canonical_masks(&mb, m, &eidx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_double_cover;
    use crate::fixtures;

    fn gt(s: &str) -> GraphType {
        s.parse().unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of_type(7, &gt("3,3,1")).unwrap().len(), 70);
        assert_eq!(partitions_of_type(8, &gt("3,3,2")).unwrap().len(), 280);
        assert_eq!(partitions_of_type(9, &gt("3,3,3")).unwrap().len(), 280);
        assert_eq!(partitions_of_type(4, &gt("2,2")).unwrap().len(), 3);
        assert!(partitions_of_type(5, &gt("2,2")).is_err());
    }

    #[test]
    fn k7_solutions_and_symmetry_count() {
        let pruned =
            exhaust_double_cover(7, &gt("3,3,1"), CoverMode::Exact, &ExhaustConfig::default())
                .unwrap();
        assert!(!pruned.solutions.is_empty());
        for s in &pruned.solutions {
            assert!(verify_double_cover(s, CoverMode::Exact).unwrap().passed);
        }
        let k7 = fixtures::k7_odc_system();
        assert!(pruned.solutions.iter().any(|s| isomorphic(s, &k7).unwrap()));

        let full = exhaust_double_cover(
            7,
            &gt("3,3,1"),
            CoverMode::Exact,
            &ExhaustConfig {
                pruning: false,
                ..ExhaustConfig::default()
            },
        )
        .unwrap();
        // each solution has 7 members and the 70 partitions of the type form one orbit
        assert_eq!(pruned.solutions.len() * 70, full.solutions.len() * 7);
        assert_eq!(
            pruned.classes.as_ref().unwrap().len(),
            full.classes.as_ref().unwrap().len()
        );
    }

    #[test]
    fn workers_agree_with_single_thread() {
        let one =
            exhaust_double_cover(7, &gt("3,3,1"), CoverMode::Exact, &ExhaustConfig::default())
                .unwrap();
        let many = exhaust_double_cover(
            7,
            &gt("3,3,1"),
            CoverMode::Exact,
            &ExhaustConfig {
                workers: 3,
                ..ExhaustConfig::default()
            },
        )
        .unwrap();
        assert_eq!(one.solutions, many.solutions);
    }

    #[test]
    fn ceilings_and_bad_types() {
        assert!(matches!(
            exhaust_double_cover(
                20,
                &gt("3,3,3,3,3,3,2"),
                CoverMode::Exact,
                &ExhaustConfig::default()
            ),
            Err(Error::TooLarge { .. })
        ));
        assert!(
            exhaust_double_cover(6, &gt("3,3"), CoverMode::Exact, &ExhaustConfig::default())
                .is_ok()
        );
        assert!(
            exhaust_double_cover(5, &gt("3,1,1"), CoverMode::Exact, &ExhaustConfig::default())
                .is_err()
        );
    }
}
