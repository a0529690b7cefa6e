use crate::designs::{verify_gdd, GddDesign, Partition, Point, PointSet};
use crate::error::{invalid, Error, Result};
use crate::search::driver::{drive, Walker};
use crate::search::{SearchConfig, SearchOutcome};

/// Base parallel class on `Z_p × {0,1} ∪ {∞0, ∞1}`: level-0 point `x` is
/// `x`, level-1 point `x` is `p + x`, `∞0 = 2p`, `∞1 = 2p + 1`.
struct State<'a, 'm> {
    p: usize,
    used: Vec<bool>,
    /// Pure differences `min(d, p-d)` on level 0 and level 1.
    pure: [Vec<bool>; 2],
    /// Mixed differences `(level-1 column) - (level-0 column)`.
    mixed: Vec<bool>,
    triples: Vec<[usize; 3]>,
    walk: &'a mut Walker<'m>,
}

enum Diff {
    Pure(usize, usize),
    Mixed(usize),
}

impl State<'_, '_> {
    fn diff(&self, a: usize, b: usize) -> Option<Diff> {
        let p = self.p;
        let (la, lb) = (a / p, b / p);
        let (ca, cb) = (a % p, b % p);
        if la == lb {
            let d = (cb + p - ca) % p;
            Some(Diff::Pure(la, d.min(p - d)))
        } else {
            let (c0, c1) = if la == 0 { (ca, cb) } else { (cb, ca) };
            let d = (c1 + p - c0) % p;
            (d != 0).then_some(Diff::Mixed(d))
        }
    }

    fn slot(&mut self, d: &Diff) -> &mut bool {
        match *d {
            Diff::Pure(l, d) => &mut self.pure[l][d],
            Diff::Mixed(d) => &mut self.mixed[d],
        }
    }

    /// Marks the finite pairs of a triple; false (and unchanged) on a clash.
    fn place(&mut self, t: [usize; 3]) -> bool {
        let fin: Vec<usize> = t.iter().copied().filter(|&x| x < 2 * self.p).collect();
        let mut diffs = Vec::new();
        for (i, &a) in fin.iter().enumerate() {
            for &b in &fin[i + 1..] {
                match self.diff(a, b) {
                    Some(d) if !*self.slot(&d) => {
                        *self.slot(&d) = true;
                        diffs.push(d);
                    }
                    _ => {
                        for d in &diffs {
                            *self.slot(d) = false;
                        }
                        return false;
                    }
                }
            }
        }
        for &x in &t {
            self.used[x] = true;
        }
        self.triples.push(t);
        true
    }

    fn unplace(&mut self) {
        let t = self.triples.pop().expect("placed");
        let fin: Vec<usize> = t.iter().copied().filter(|&x| x < 2 * self.p).collect();
        for (i, &a) in fin.iter().enumerate() {
            for &b in &fin[i + 1..] {
                let d = self.diff(a, b).expect("placed pairs have differences");
                *self.slot(&d) = false;
            }
        }
        for &x in &t {
            self.used[x] = false;
        }
    }

    fn run(&mut self, depth: usize) -> bool {
        let p = self.p;
        let Some(x) = (0..2 * p).find(|&x| !self.used[x]) else {
            return true;
        };
        if !self.walk.enter(depth) {
            return false;
        }
        let free: Vec<usize> = (x + 1..2 * p).filter(|&y| !self.used[y]).collect();
        let mut cands: Vec<[usize; 3]> = Vec::new();
        for inf in [2 * p, 2 * p + 1] {
            if !self.used[inf] {
                // an infinite point meets one point of each level
                cands.extend(
                    free.iter()
                        .filter(|&&y| y / p != x / p)
                        .map(|&y| [x, y, inf]),
                );
            }
        }
        for (i, &y) in free.iter().enumerate() {
            for &z in &free[i + 1..] {
                cands.push([x, y, z]);
            }
        }
        self.walk.order(depth, &mut cands);
        let start = self.walk.start(depth);
        for (idx, &t) in cands.iter().enumerate().skip(start) {
            if !self.place(t) {
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
            self.unplace();
        }
        false
    }
}

/// 4-GDD of type `2^{p+1} p^1` from a resolvable 3-GDD of type `2^{p+1}`.
///
/// The resolvable design is cyclic: one base parallel class on
/// `Z_p × {0,1} ∪ {∞0, ∞1}` whose `p` translates are the classes. Each class
/// is completed by its own new point, and the new points form the size-`p`
/// group. Points are numbered level 0, level 1, `∞0`, `∞1`, new points.
pub fn search_resolvable_completion(
    p: usize,
    cfg: &SearchConfig,
) -> Result<SearchOutcome<GddDesign>> {
    if p < 3 || p.is_multiple_of(2) || !(2 * p + 2).is_multiple_of(3) {
        return Err(invalid(format!(
            "need an odd p >= 3 with 3 | 2p+2, got p={p}"
        )));
    }
    let key = format!("p={p}");
    let out = drive("resolvable-completion", &key, cfg, |walk| {
        let mut st = State {
            p,
            used: vec![false; 2 * p + 2],
            pure: [vec![false; p / 2 + 1], vec![false; p / 2 + 1]],
            mixed: vec![false; p],
            triples: Vec::new(),
            walk,
        };
        st.run(0).then_some(st.triples)
    })?;
    let found = match out.found {
        Some(base) => {
            let g = complete(p, &base)?;
            let report = verify_gdd(&g);
            if !report.passed {
                return Err(Error::Internal(format!(
                    "search produced a design failing verification:\n{report}"
                )));
            }
            Some(g)
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

fn complete(p: usize, base: &[[usize; 3]]) -> Result<GddDesign> {
    let pt = |x: usize| Point::Fin(x as u32);
    let shift = |x: usize, s: usize| {
        if x >= 2 * p {
            x
        } else {
            (x / p) * p + (x % p + s) % p
        }
    };
    let mut groups: Vec<Vec<Point>> = (0..p).map(|x| vec![pt(x), pt(p + x)]).collect();
    groups.push(vec![pt(2 * p), pt(2 * p + 1)]);
    groups.push((0..p).map(|i| pt(2 * p + 2 + i)).collect());
    let mut blocks = Vec::with_capacity(p * base.len());
    for s in 0..p {
        for t in base {
            let mut b: Vec<Point> = t.iter().map(|&x| pt(shift(x, s))).collect();
            b.push(pt(2 * p + 2 + s));
            blocks.push(b);
        }
    }
    GddDesign::new(
        PointSet::new(3 * p + 2, false)?,
        Partition::new(groups)?,
        blocks,
        4,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::StopReason;

    fn cfg(seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            time_budget: Some(std::time::Duration::from_secs(60)),
            ..SearchConfig::default()
        }
    }

    #[test]
    fn type_2_18_17_1() {
        let out = search_resolvable_completion(17, &cfg(0)).unwrap();
        let g = out.found.expect("cyclic base class for p=17");
        assert_eq!(g.type_string(), "2^18 17^1");
        assert_eq!(g.blocks().len(), 204);
        assert!(verify_gdd(&g).passed);
    }

    #[test]
    fn small_cases() {
        // type 2^12 11^1
        let out = search_resolvable_completion(11, &cfg(0)).unwrap();
        assert!(verify_gdd(&out.found.unwrap()).passed);
        // no resolvable 3-GDD of type 2^6 exists
        let out = search_resolvable_completion(5, &cfg(0)).unwrap();
        assert!(out.found.is_none());
        assert_eq!(out.stop, StopReason::Exhausted);
        assert!(search_resolvable_completion(7, &cfg(0)).is_err());
    }
}
