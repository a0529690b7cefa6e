use crate::code::{ArmstrongCode, Symbol};
use crate::combin::{binomial_u128, Combinations};
use crate::construct::bipartite_matching;
use crate::error::{invalid, Error, Result};

/// Ceiling on the number of columns `C(qt+1, t+1)`.
pub const K2_MAX_COLUMNS: u128 = 20_000;

fn common(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn subset_graph(subsets: &[Vec<usize>], min_common: usize, max_common: usize) -> Vec<Vec<usize>> {
    subsets
        .iter()
        .map(|v| {
            subsets
                .iter()
                .enumerate()
                .filter(|(_, w)| (min_common..=max_common).contains(&common(v, w)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

fn column_subsets(q: usize, t: usize) -> Result<Vec<Vec<usize>>> {
    let rows = q * t + 1;
    let cols = binomial_u128(rows as u64, (t + 1) as u64);
    if cols > K2_MAX_COLUMNS {
        return Err(Error::TooLarge {
            what: "column count C(qt+1, t+1)",
            size: cols,
            ceiling: K2_MAX_COLUMNS,
            hint: "choose smaller q or t",
        });
    }
    Ok(Combinations::new(rows, t + 1).collect())
}

/// Adjacency lists of the graph on `(t+1)`-subsets of `qt+1` rows in which
/// two subsets are adjacent when they share at most one row. Subsets are in
/// lexicographic order.
pub fn k2_intersection_graph(q: usize, t: usize) -> Result<Vec<Vec<usize>>> {
    if q < 2 || t < 1 {
        return Err(invalid(format!("need q >= 2 and t >= 1, got q={q}, t={t}")));
    }
    Ok(subset_graph(&column_subsets(q, t)?, 0, 1))
}

/// A `(q, 2, C(qt+1, t+1))`-Armstrong code with `s = 1`.
///
/// Column `v` (a `(t+1)`-set of rows) holds symbol 0 exactly on `v`; the
/// other `q-1` symbols appear `t` times each. Columns are matched to
/// subsets meeting them in at most one row (exactly one when `q = t+1`, since
/// otherwise the `t+1` rows cannot receive distinct symbols), and each column
/// is filled so that its matched subset sees pairwise distinct symbols.
pub fn k2_code(q: usize, t: usize) -> Result<ArmstrongCode> {
    if t < 1 || q <= t {
        return Err(invalid(format!("need q > t >= 1, got q={q}, t={t}")));
    }
    if q > Symbol::MAX as usize {
        return Err(invalid(format!("q={q} exceeds the symbol range")));
    }
    let rows = q * t + 1;
    let subsets = column_subsets(q, t)?;
    let min_common = (t + 2).saturating_sub(q);
    let adj = subset_graph(&subsets, min_common, 1);
    let mate = bipartite_matching(&adj, subsets.len())?;
    let mut partner = vec![usize::MAX; subsets.len()];
    for (v, &w) in mate.iter().enumerate() {
        partner[w] = v;
    }

    let mut cells = vec![vec![0 as Symbol; subsets.len()]; rows];
    for (col, own) in subsets.iter().enumerate() {
        let target = &subsets[partner[col]];
        // slots[s-1] = remaining uses of symbol s
        let mut slots = vec![t; q - 1];
        for (i, &r) in target
            .iter()
            .filter(|r| own.binary_search(r).is_err())
            .enumerate()
        {
            cells[r][col] = (i + 1) as Symbol;
            slots[i] -= 1;
        }
        let mut sym = 0usize;
        for (r, row) in cells.iter_mut().enumerate() {
            if own.binary_search(&r).is_ok() || target.binary_search(&r).is_ok() {
                continue;
            }
            while slots[sym] == 0 {
                sym += 1;
            }
            row[col] = (sym + 1) as Symbol;
            slots[sym] -= 1;
        }
    }
    ArmstrongCode::with_dependency(q, 2, 1, t, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::verify_st_armstrong;

    fn column_counts(c: &ArmstrongCode, j: usize) -> Vec<usize> {
        let mut counts = vec![0; c.q()];
        for i in 0..c.m() {
            counts[c.get(i, j) as usize] += 1;
        }
        counts.sort_unstable();
        counts
    }

    #[test]
    fn small_cases_verify() {
        for (q, t) in [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (4, 3)] {
            let c = k2_code(q, t).unwrap();
            assert_eq!(c.m(), q * t + 1);
            assert_eq!(
                c.n() as u128,
                binomial_u128((q * t + 1) as u64, (t + 1) as u64)
            );
            let r = verify_st_armstrong(&c, None).unwrap();
            assert!(r.passed, "(q,t)=({q},{t}): {r}");
            for j in 0..c.n() {
                let mut want = vec![t; q - 1];
                want.push(t + 1);
                assert_eq!(column_counts(&c, j), want);
            }
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(k2_code(2, 1).unwrap().n(), 3);
        assert_eq!(k2_code(3, 1).unwrap().n(), 6);
        assert!(k2_code(2, 2).is_err());
        assert!(matches!(k2_code(40, 6), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn graph_for_five_rows_is_3_regular() {
        let adj = k2_intersection_graph(2, 2).unwrap();
        assert_eq!(adj.len(), 10);
        assert!(adj.iter().all(|nb| nb.len() == 3));
        let tri = k2_intersection_graph(2, 1).unwrap();
        // complete bipartite minus the identity
        for (i, nb) in tri.iter().enumerate() {
            assert_eq!(nb.len(), 2);
            assert!(!nb.contains(&i));
        }
    }
}
