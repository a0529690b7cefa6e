use crate::designs::{format_type, verify_gdd, GddDesign, Partition, Point, PointSet};
use crate::error::{invalid, Error, Result};
use crate::search::driver::{drive, Walker};
use crate::search::{SearchConfig, SearchOutcome};

const MAX_POINTS: usize = 128;

/// Necessary divisibility conditions for a `k`-GDD of the given type:
/// every point's cross degree is a multiple of `k-1` and the number of
/// cross pairs is a multiple of `C(k,2)`.
pub fn gdd_admissible(tv: &[(usize, usize)], k: usize) -> Result<()> {
    if k < 2 {
        return Err(invalid(format!("block size must be at least 2, got {k}")));
    }
    if tv.iter().any(|&(g, c)| g == 0 || c == 0) {
        return Err(invalid("group sizes and multiplicities must be positive"));
    }
    let v: usize = tv.iter().map(|&(g, c)| g * c).sum();
    for &(g, _) in tv {
        if !(v - g).is_multiple_of(k - 1) {
            return Err(invalid(format!(
                "type {}: a point in a group of size {g} has {} cross pairs, not a multiple of {}",
                format_type(tv),
                v - g,
                k - 1
            )));
        }
    }
    let within: usize = tv.iter().map(|&(g, c)| c * g * (g - 1) / 2).sum();
    let cross = v * (v - 1) / 2 - within;
    if !cross.is_multiple_of(k * (k - 1) / 2) {
        return Err(invalid(format!(
            "type {}: {cross} cross pairs is not a multiple of {}",
            format_type(tv),
            k * (k - 1) / 2
        )));
    }
    Ok(())
}

fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

/// `need`-cliques of the uncovered graph inside `pool`, lexicographic.
fn cliques(
    adj: &[u128],
    pool: u128,
    need: usize,
    acc: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if need == 0 {
        out.push(acc.clone());
        return;
    }
    for z in bits(pool) {
        // only larger points keep the clique sorted
        let rest = pool & adj[z] & !((2u128 << z) - 1);
        if (rest.count_ones() as usize) + 1 < need {
            continue;
        }
        acc.push(z);
        cliques(adj, rest, need - 1, acc, out, limit);
        acc.pop();
        if out.len() >= limit {
            return;
        }
    }
}

struct Dfs<'a, 'm> {
    k: usize,
    adj: Vec<u128>,
    blocks: Vec<Vec<usize>>,
    walk: &'a mut Walker<'m>,
}

impl Dfs<'_, '_> {
    fn toggle(&mut self, block: &[usize]) {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                self.adj[a] ^= 1u128 << b;
                self.adj[b] ^= 1u128 << a;
            }
        }
    }

    fn run(&mut self, depth: usize) -> bool {
        let x = match (0..self.adj.len())
            .filter(|&p| self.adj[p] != 0)
            .min_by_key(|&p| self.adj[p].count_ones())
        {
            None => return true,
            Some(x) => x,
        };
        if !self.walk.enter(depth) {
            return false;
        }

        // fail-first: the partner of x with the fewest completions
        let need = self.k - 2;
        let mut best: Option<(usize, usize)> = None;
        for y in bits(self.adj[x]) {
            let mut tmp = Vec::new();
            let cap = best.map_or(usize::MAX, |(_, c)| c);
            cliques(
                &self.adj,
                self.adj[x] & self.adj[y],
                need,
                &mut Vec::new(),
                &mut tmp,
                cap,
            );
            if best.is_none_or(|(_, c)| tmp.len() < c) {
                best = Some((y, tmp.len()));
                if tmp.is_empty() {
                    break;
                }
            }
        }
        let (y, count) = best.expect("x has an uncovered pair");
        if count == 0 {
            return false;
        }
        let mut cands = Vec::new();
        cliques(
            &self.adj,
            self.adj[x] & self.adj[y],
            need,
            &mut Vec::new(),
            &mut cands,
            usize::MAX,
        );
        self.walk.order(depth, &mut cands);

        let start = self.walk.start(depth);
        for (idx, rest) in cands.iter().enumerate().skip(start) {
            let mut block = vec![x, y];
            block.extend_from_slice(rest);
            block.sort_unstable();
            self.toggle(&block);
            self.blocks.push(block.clone());
            self.walk.path.push(idx);
            if self.run(depth + 1) {
                return true;
            }
            if self.walk.aborted {
                return false;
            }
            self.walk.path.pop();
            self.blocks.pop();
            self.toggle(&block);
        }
        false
    }
}

struct Layout {
    groups: Vec<Vec<usize>>,
    v: usize,
}

fn layout(tv: &[(usize, usize)]) -> Layout {
    let mut groups = Vec::new();
    let mut next = 0;
    for &(g, c) in tv {
        for _ in 0..c {
            groups.push((next..next + g).collect());
            next += g;
        }
    }
    Layout { groups, v: next }
}

fn initial_adj(lay: &Layout) -> Vec<u128> {
    let all = if lay.v == 128 {
        u128::MAX
    } else {
        (1u128 << lay.v) - 1
    };
    let mut adj = vec![all; lay.v];
    for g in &lay.groups {
        let mask: u128 = g.iter().map(|&p| 1u128 << p).sum();
        for &p in g {
            adj[p] &= !mask;
        }
    }
    adj
}

fn to_design(lay: &Layout, k: usize, blocks: &[Vec<usize>]) -> Result<GddDesign> {
    let pt = |p: usize| Point::Fin(p as u32);
    let groups = Partition::new(
        lay.groups
            .iter()
            .map(|g| g.iter().map(|&p| pt(p)).collect())
            .collect(),
    )?;
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|&p| pt(p)).collect())
        .collect();
    GddDesign::new(PointSet::new(lay.v, false)?, groups, blocks, k)
}

fn params_key(tv: &[(usize, usize)], k: usize) -> String {
    format!("k={k} type={}", format_type(tv))
}

/// Backtracking search for a `k`-GDD of type `tv` (`(size, count)` pairs).
///
/// Restart 0 explores candidates lexicographically; later restarts shuffle
/// them (seeded). Restart `r` may visit `restart_nodes * (r+1)` nodes, and a
/// restart that finishes its tree proves that no design exists. Points are
/// numbered group by group in the order of `tv`.
pub fn search_gdd(
    tv: &[(usize, usize)],
    k: usize,
    cfg: &SearchConfig,
) -> Result<SearchOutcome<GddDesign>> {
    gdd_admissible(tv, k)?;
    let lay = layout(tv);
    if lay.v > MAX_POINTS {
        return Err(invalid(format!(
            "{} points exceeds the search limit of {MAX_POINTS}",
            lay.v
        )));
    }
    if lay.v < 2 {
        return Err(invalid("a GDD needs at least two points"));
    }
    if k < 3 {
        return Err(invalid("block size 2 is trivial; use k >= 3"));
    }
    let key = params_key(tv, k);
    let start_adj = initial_adj(&lay);
    let out = drive("gdd", &key, cfg, |walk| {
        let mut dfs = Dfs {
            k,
            adj: start_adj.clone(),
            blocks: Vec::new(),
            walk,
        };
        dfs.run(0).then_some(dfs.blocks)
    })?;
    let found = match out.found {
        Some(blocks) => {
            let g = to_design(&lay, k, &blocks)?;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{ResumeState, StopReason};

    fn cfg(seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            time_budget: Some(std::time::Duration::from_secs(60)),
            ..SearchConfig::default()
        }
    }

    #[test]
    fn admissibility() {
        assert!(gdd_admissible(&[(2, 6)], 4).is_err());
        assert!(gdd_admissible(&[(2, 7)], 4).is_ok());
        assert!(gdd_admissible(&[(2, 18), (17, 1)], 4).is_ok());
        assert!(gdd_admissible(&[(1, 9)], 3).is_ok());
        assert!(search_gdd(&[(2, 6)], 4, &cfg(0)).is_err());
    }

    #[test]
    fn finds_small_designs() {
        let out = search_gdd(&[(2, 7)], 4, &cfg(1)).unwrap();
        let g = out.found.expect("type 2^7 exists");
        assert_eq!(g.blocks().len(), 14);
        assert!(verify_gdd(&g).passed);
        // Steiner triple system of order 9 as a 3-GDD of type 1^9
        let out = search_gdd(&[(1, 9)], 3, &cfg(1)).unwrap();
        assert_eq!(out.found.unwrap().blocks().len(), 12);
    }

    #[test]
    fn proves_nonexistence_when_tree_is_finished() {
        // TD(4,2) does not exist: type 2^4 with k = 4 passes the divisibility tests
        let out = search_gdd(&[(2, 4)], 4, &cfg(0)).unwrap();
        assert!(out.found.is_none());
        assert_eq!(out.stop, StopReason::Exhausted);
    }

    #[test]
    fn deterministic_and_resumable() {
        let a = search_gdd(&[(2, 10)], 4, &cfg(5)).unwrap();
        let b = search_gdd(&[(2, 10)], 4, &cfg(5)).unwrap();
        assert_eq!(a.found, b.found);
        assert!(a.found.is_some());

        let tight = SearchConfig {
            node_budget: Some(5),
            ..cfg(5)
        };
        let cut = search_gdd(&[(2, 10)], 4, &tight).unwrap();
        if cut.found.is_none() {
            assert_eq!(cut.stop, StopReason::NodeBudget);
            let cp = cut.checkpoint.expect("checkpoint on budget stop");
            let text = cp.to_text();
            let resumed = SearchConfig {
                resume: Some(ResumeState::parse(&text).unwrap()),
                ..cfg(5)
            };
            let done = search_gdd(&[(2, 10)], 4, &resumed).unwrap();
            assert_eq!(done.found, a.found);
        }
    }

    #[test]
    fn parallel_workers_find_verified_designs() {
        let c = SearchConfig {
            workers: 3,
            ..cfg(2)
        };
        let out = search_gdd(&[(2, 7)], 4, &c).unwrap();
        assert!(verify_gdd(&out.found.unwrap()).passed);
    }
}
