use crate::designs::{verify_base_partition, BasePartition, Point};
use crate::error::{invalid, Error, Result};
use crate::search::driver::{drive, Walker};
use crate::search::{SearchConfig, SearchOutcome};

/// Incremental state: points are `0..v` plus `∞ = v`.
struct State<'a, 'm> {
    v: usize,
    used: Vec<bool>,
    triples: Vec<[usize; 3]>,
    /// Pairs seen per difference class `{d, -d}`, indexed by `min(d, v-d)`.
    class_pairs: Vec<Vec<(usize, usize)>>,
    /// How often each nonzero shift carries a pair onto another pair.
    shift_hits: Vec<u32>,
    /// Shift contributions beyond the first, summed over residues.
    excess: u32,
    walk: &'a mut Walker<'m>,
}

/// Two contributions more than there are nonzero residues.
const MAX_EXCESS: u32 = 2;

impl State<'_, '_> {
    fn inf(&self) -> usize {
        self.v
    }

    fn class(&self, a: usize, b: usize) -> usize {
        let d = (b + self.v - a) % self.v;
        d.min(self.v - d)
    }

    /// The shift `s` with `{a+s, b+s} = {c, d}`.
    fn carry(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> usize {
        let v = self.v;
        if (b + v - a) % v == (d + v - c) % v {
            (c + v - a) % v
        } else {
            (d + v - a) % v
        }
    }

    fn hit(&mut self, s: usize, delta: i32) {
        for r in [s, self.v - s] {
            if delta > 0 {
                if self.shift_hits[r] > 0 {
                    self.excess += 1;
                }
                self.shift_hits[r] += 1;
            } else {
                self.shift_hits[r] -= 1;
                if self.shift_hits[r] > 0 {
                    self.excess -= 1;
                }
            }
        }
    }

    fn finite_pairs(t: &[usize; 3], inf: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(3);
        for i in 0..3 {
            for j in i + 1..3 {
                if t[i] != inf && t[j] != inf {
                    out.push((t[i], t[j]));
                }
            }
        }
        out
    }

    /// Adds a triple if the class and shift budgets allow it.
    fn push(&mut self, t: [usize; 3]) -> bool {
        let inf = self.inf();
        let pairs = Self::finite_pairs(&t, inf);
        let mut added = 0;
        let mut ok = true;
        for &(a, b) in &pairs {
            let c = self.class(a, b);
            if self.class_pairs[c].len() >= 2 {
                ok = false;
                break;
            }
            if let Some(&first) = self.class_pairs[c].first() {
                let s = self.carry(first, (a, b));
                self.hit(s, 1);
            }
            self.class_pairs[c].push((a, b));
            added += 1;
        }
        if ok && t[2] == inf {
            let s = (t[1] + self.v - t[0]) % self.v;
            self.hit(s, 1);
        }
        if !ok || self.excess > MAX_EXCESS {
            if ok && t[2] == inf {
                let s = (t[1] + self.v - t[0]) % self.v;
                self.hit(s, -1);
            }
            for &(a, b) in pairs[..added].iter().rev() {
                self.unpair(a, b);
            }
            return false;
        }
        for &p in &t {
            self.used[p] = true;
        }
        self.triples.push(t);
        true
    }

    fn unpair(&mut self, a: usize, b: usize) {
        let c = self.class(a, b);
        self.class_pairs[c].pop();
        if let Some(&first) = self.class_pairs[c].first() {
            let s = self.carry(first, (a, b));
            self.hit(s, -1);
        }
    }

    fn pop(&mut self) {
        let t = self.triples.pop().expect("nonempty");
        let inf = self.inf();
        if t[2] == inf {
            let s = (t[1] + self.v - t[0]) % self.v;
            self.hit(s, -1);
        }
        for &(a, b) in Self::finite_pairs(&t, inf).iter().rev() {
            self.unpair(a, b);
        }
        for &p in &t {
            self.used[p] = false;
        }
    }

    fn run(&mut self, depth: usize) -> bool {
        let x = match (0..self.v).find(|&p| !self.used[p]) {
            None => return true,
            Some(x) => x,
        };
        if !self.walk.enter(depth) {
            return false;
        }
        let inf = self.inf();
        let free: Vec<usize> = (x + 1..self.v).filter(|&p| !self.used[p]).collect();
        let mut cands: Vec<[usize; 3]> = Vec::new();
        for (i, &y) in free.iter().enumerate() {
            if !self.used[inf] {
                cands.push([x, y, inf]);
            }
            for &z in &free[i + 1..] {
                cands.push([x, y, z]);
            }
        }
        self.walk.order(depth, &mut cands);
        let start = self.walk.start(depth);
        for (idx, &t) in cands.iter().enumerate().skip(start) {
            if !self.push(t) {
                continue;
            }
            self.walk.path.push(idx);
            if self.run(depth + 1) {
                return true;
            }
            if self.walk.aborted {
                return false;
            }
            self.walk.path.pop();
            self.pop();
        }
        false
    }
}

/// Randomized restarts of a backtracking search for a base partition of
/// `Z_{3q-1} ∪ {∞}`, for even `q`.
///
/// The smallest unused point chooses its two partners. Pruning keeps every
/// difference class at no more than two pairs and allows at most two shift
/// coincidences, which is exactly the slack the count of pairs leaves.
pub fn search_base_partition(q: usize, cfg: &SearchConfig) -> Result<SearchOutcome<BasePartition>> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(invalid(format!(
            "base partitions need an even q >= 2, got {q}"
        )));
    }
    let v = 3 * q - 1;
    let key = format!("q={q}");
    let out = drive("base-partition", &key, cfg, |walk| {
        let mut st = State {
            v,
            used: vec![false; v + 1],
            triples: Vec::new(),
            class_pairs: vec![Vec::new(); v / 2 + 1],
            shift_hits: vec![0; v],
            excess: 0,
            walk,
        };
        st.run(0).then_some(st.triples)
    })?;
    let found = match out.found {
        Some(triples) => {
            let pt = |p: usize| {
                if p == v {
                    Point::Inf
                } else {
                    Point::Fin(p as u32)
                }
            };
            let triples: Vec<[Point; 3]> = triples
                .iter()
                .map(|t| [pt(t[0]), pt(t[1]), pt(t[2])])
                .collect();
            let bp = BasePartition::from_triples(3 * q, &triples)?;
            let report = verify_base_partition(&bp);
            if !report.passed {
                return Err(Error::Internal(format!(
                    "search produced a base partition failing verification:\n{report}"
                )));
            }
            Some(bp)
        }
        None => None,
    };
    Ok(SearchOutcome {
        found,
        stop: out.stop,
        nodes: out.nodes,
        restarts: out.restarts,
        elapsed: out.elapsed,
        checkpoint: out.checkpoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::develop_base_partition;
    use crate::fixtures;
    use crate::search::{ResumeState, StopReason};

    fn cfg(seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            time_budget: Some(std::time::Duration::from_secs(120)),
            ..SearchConfig::default()
        }
    }

    #[test]
    fn finds_q6_and_q8() {
        for q in [6, 8] {
            let out = search_base_partition(q, &cfg(1)).unwrap();
            let bp = out
                .found
                .unwrap_or_else(|| panic!("q={q}: {:?} after {} nodes", out.stop, out.nodes));
            assert!(verify_base_partition(&bp).passed);
            assert_eq!(develop_base_partition(&bp).unwrap().len(), 3 * q - 1);
        }
        assert!(verify_base_partition(&fixtures::tabulated_base(8).unwrap()).passed);
    }

    #[test]
    fn q2_has_none() {
        // Z_5 ∪ {∞}: the search tree is tiny and finishes
        let out = search_base_partition(2, &cfg(0)).unwrap();
        if out.found.is_none() {
            assert_eq!(out.stop, StopReason::Exhausted);
        }
    }

    #[test]
    fn odd_q_rejected() {
        assert!(search_base_partition(7, &cfg(0)).is_err());
    }

    #[test]
    fn resume_reaches_the_same_answer() {
        let full = search_base_partition(6, &cfg(3)).unwrap();
        let cut = search_base_partition(
            6,
            &SearchConfig {
                node_budget: Some(3),
                ..cfg(3)
            },
        )
        .unwrap();
        if let Some(cp) = cut.checkpoint {
            let again = SearchConfig {
                resume: Some(ResumeState::parse(&cp.to_text()).unwrap()),
                ..cfg(3)
            };
            assert_eq!(search_base_partition(6, &again).unwrap().found, full.found);
        }
    }
}
