use std::collections::VecDeque;

use crate::error::{Error, Result};

const FREE: usize = usize::MAX;

/// Perfect matching of a regular bipartite graph given by left adjacency
/// lists over right vertices `0..right`. Returns the right partner of every
/// left vertex.
///
/// Regularity (equal positive degree on both sides, equal side sizes) is
/// checked up front; by Hall's theorem it guarantees a perfect matching.
pub fn bipartite_matching(adj: &[Vec<usize>], right: usize) -> Result<Vec<usize>> {
    let left = adj.len();
    if left != right {
        return Err(Error::Precondition(format!(
            "sides have {left} and {right} vertices"
        )));
    }
    let degree = adj.first().map_or(0, Vec::len);
    let mut right_deg = vec![0usize; right];
    for (u, nb) in adj.iter().enumerate() {
        if nb.len() != degree {
            return Err(Error::Precondition(format!(
                "left vertex {u} has degree {}, expected {degree}",
                nb.len()
            )));
        }
        for &v in nb {
            if v >= right {
                return Err(Error::Precondition(format!(
                    "edge to missing right vertex {v}"
                )));
            }
            right_deg[v] += 1;
        }
    }
    if left > 0 && degree == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    if let Some(v) = right_deg.iter().position(|&d| d != degree) {
        return Err(Error::Precondition(format!(
            "right vertex {v} has degree {}, expected {degree}",
            right_deg[v]
        )));
    }

    let mut mate_l = vec![FREE; left];
    let mut mate_r = vec![FREE; right];
    let mut dist = vec![0usize; left];
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left {
            if mate_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        // Iterative DFS along the layers.
        let mut next = vec![0usize; left];
        for root in 0..left {
            if mate_l[root] != FREE {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if next[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next[u]];
                let w = mate_r[v];
                if w == FREE {
                    // Augment along the stack.
                    for &x in stack.iter().rev() {
                        let y = adj[x][next[x]];
                        mate_l[x] = y;
                        mate_r[y] = x;
                    }
                    break;
                }
                if dist[w] == dist[u] + 1 {
                    stack.push(w);
                } else {
                    next[u] += 1;
                }
            }
        }
    }
    if mate_l.contains(&FREE) {
        return Err(Error::Internal(
            "regular bipartite graph without a perfect matching".into(),
        ));
    }
    Ok(mate_l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(adj: &[Vec<usize>], m: &[usize]) {
        let mut used = vec![false; adj.len()];
        for (u, &v) in m.iter().enumerate() {
            assert!(adj[u].contains(&v));
            assert!(!std::mem::replace(&mut used[v], true));
        }
    }

    #[test]
    fn cycle_and_complete() {
        let n = 9;
        let cyc: Vec<Vec<usize>> = (0..n).map(|u| vec![u, (u + 1) % n]).collect();
        check(&cyc, &bipartite_matching(&cyc, n).unwrap());
        let full: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
        check(&full, &bipartite_matching(&full, n).unwrap());
    }

    #[test]
    fn rejects_irregular() {
        let adj = vec![vec![0, 1], vec![0]];
        assert!(matches!(
            bipartite_matching(&adj, 2),
            Err(Error::Precondition(_))
        ));
        assert!(bipartite_matching(&[vec![0]], 2).is_err());
    }

    #[test]
    fn random_regular_graphs() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [5usize, 20, 60] {
            for d in [1usize, 3] {
                // union of d permutations that disagree everywhere
                let mut adj = vec![Vec::new(); n];
                let mut perms = Vec::new();
                while perms.len() < d {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.shuffle(&mut rng);
                    if perms
                        .iter()
                        .all(|q: &Vec<usize>| (0..n).all(|i| q[i] != p[i]))
                    {
                        perms.push(p);
                    }
                }
                for p in &perms {
                    for u in 0..n {
                        adj[u].push(p[u]);
                    }
                }
                check(&adj, &bipartite_matching(&adj, n).unwrap());
            }
        }
    }
}
