use serde::{Deserialize, Serialize};

use crate::code::{ArmstrongCode, Symbol};
use crate::designs::{
    graph_type_of, verify_double_cover, verify_gdd, CoverMode, GddDesign, GraphType, Partition,
    PartitionSystem, Point, PointSet,
};
use crate::error::{invalid, Error, Result};

/// For each partition, the symbol assigned to each of its parts.
///
/// `symbols()[c][j]` is the 0-based symbol of part `j` (canonical order) of
/// partition `c`. Each row is a permutation of `0..num_parts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartOrdering {
    symbols: Vec<Vec<Symbol>>,
}

impl PartOrdering {
    pub fn new(symbols: Vec<Vec<Symbol>>) -> Result<Self> {
        for (c, row) in symbols.iter().enumerate() {
            let mut seen = vec![false; row.len()];
            for &s in row {
                let s = s as usize;
                if s >= row.len() || std::mem::replace(&mut seen[s], true) {
                    return Err(invalid(format!(
                        "ordering of partition {c} is not a permutation"
                    )));
                }
            }
        }
        Ok(PartOrdering { symbols })
    }

    /// Symbol `j` for the `j`-th part in canonical order.
    pub fn canonical(ps: &PartitionSystem) -> Self {
        let symbols = ps
            .partitions()
            .iter()
            .map(|p| (0..p.num_parts() as Symbol).collect())
            .collect();
        PartOrdering { symbols }
    }

    /// Symbol `j` for the `j`-th listed part of each partition.
    pub fn from_part_lists(ps: &PartitionSystem, lists: &[Vec<Vec<Point>>]) -> Result<Self> {
        if lists.len() != ps.len() {
            return Err(invalid(format!(
                "{} part lists for {} partitions",
                lists.len(),
                ps.len()
            )));
        }
        let mut symbols = Vec::with_capacity(ps.len());
        for (c, (p, list)) in ps.partitions().iter().zip(lists).enumerate() {
            if list.len() != p.num_parts() {
                return Err(invalid(format!(
                    "partition {c}: {} parts listed, {} present",
                    list.len(),
                    p.num_parts()
                )));
            }
            let mut row = vec![Symbol::MAX; p.num_parts()];
            for (sym, part) in list.iter().enumerate() {
                let mut sorted = part.clone();
                sorted.sort_unstable();
                let j = p
                    .parts()
                    .iter()
                    .position(|x| *x == sorted)
                    .ok_or_else(|| invalid(format!("partition {c} has no part {sorted:?}")))?;
                row[j] = sym as Symbol;
            }
            symbols.push(row);
        }
        PartOrdering::new(symbols)
    }

    pub fn symbols(&self) -> &[Vec<Symbol>] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    fn check_against(&self, ps: &PartitionSystem) -> Result<()> {
        if self.symbols.len() != ps.len() {
            return Err(invalid(format!(
                "ordering covers {} partitions, system has {}",
                self.symbols.len(),
                ps.len()
            )));
        }
        for (c, (p, row)) in ps.partitions().iter().zip(&self.symbols).enumerate() {
            if p.num_parts() != row.len() {
                return Err(invalid(format!(
                    "ordering of partition {c} has {} symbols for {} parts",
                    row.len(),
                    p.num_parts()
                )));
            }
        }
        Ok(())
    }
}

/// Row `x` of the code is point `x` (dense index); column `c` records the
/// symbol of the part of partition `c` containing `x`.
fn system_to_code(ps: &PartitionSystem, order: &PartOrdering, q: usize) -> Result<ArmstrongCode> {
    order.check_against(ps)?;
    let set = ps.points();
    let mut rows = vec![vec![0 as Symbol; ps.len()]; set.size];
    for (c, p) in ps.partitions().iter().enumerate() {
        for (x, label) in p.labels(&set).into_iter().enumerate() {
            rows[x][c] = order.symbols[c][label];
        }
    }
    ArmstrongCode::new(q, 3, rows)
}

fn uniform_parts(ps: &PartitionSystem) -> Result<usize> {
    let first = ps
        .partitions()
        .first()
        .ok_or_else(|| Error::Precondition("empty partition system".into()))?
        .num_parts();
    if let Some(c) = ps.partitions().iter().position(|p| p.num_parts() != first) {
        return Err(Error::Precondition(format!(
            "partition {c} has a different number of parts than partition 0"
        )));
    }
    Ok(first)
}

/// `(q, 3, n)`-Armstrong code from an ODC of `K_m` whose partitions all have
/// `q` parts.
pub fn odc_to_code(ps: &PartitionSystem, order: Option<&PartOrdering>) -> Result<ArmstrongCode> {
    let q = uniform_parts(ps)?;
    let report = verify_double_cover(ps, CoverMode::Exact)?;
    if !report.passed {
        return Err(Error::Precondition(format!(
            "not an orthogonal double cover:\n{report}"
        )));
    }
    let canon;
    let order = match order {
        Some(o) => o,
        None => {
            canon = PartOrdering::canonical(ps);
            &canon
        }
    };
    system_to_code(ps, order, q)
}

/// `(q, 3, n)`-Armstrong code from an extODC of `K_{3q}` by `qK_3`.
pub fn extodc_to_code(ps: &PartitionSystem, order: Option<&PartOrdering>) -> Result<ArmstrongCode> {
    let q = ps.points().size / 3;
    if !ps.points().size.is_multiple_of(3) {
        return Err(Error::Precondition(format!(
            "{} points is not a multiple of 3",
            ps.points().size
        )));
    }
    let want = GraphType::triangles(q);
    if let Some(c) = ps
        .partitions()
        .iter()
        .position(|p| graph_type_of(p) != want)
    {
        return Err(Error::Precondition(format!(
            "partition {c} is not {q} disjoint triangles"
        )));
    }
    let report = verify_double_cover(ps, CoverMode::AtLeast)?;
    if !report.passed {
        return Err(Error::Precondition(format!(
            "not an extended orthogonal double cover:\n{report}"
        )));
    }
    let canon;
    let order = match order {
        Some(o) => o,
        None => {
            canon = PartOrdering::canonical(ps);
            &canon
        }
    };
    system_to_code(ps, order, q)
}

fn require_verified_4gdd(g: &GddDesign) -> Result<()> {
    if g.block_size() != 4 {
        return Err(Error::Precondition(format!(
            "block size {} instead of 4",
            g.block_size()
        )));
    }
    if g.points().has_infinity {
        return Err(Error::Precondition(
            "GDD point set must not contain inf".into(),
        ));
    }
    let report = verify_gdd(g);
    if !report.passed {
        return Err(Error::Precondition(format!(
            "GDD fails verification:\n{report}"
        )));
    }
    Ok(())
}

/// The partition attached to point `x`: blocks through `x` minus `x`,
/// plus `extra`.
fn partition_at(g: &GddDesign, x: Point, extra: Vec<Vec<Point>>) -> Result<Partition> {
    let mut parts: Vec<Vec<Point>> = g
        .blocks()
        .iter()
        .filter(|b| b.contains(&x))
        .map(|b| b.iter().copied().filter(|&p| p != x).collect())
        .collect();
    parts.extend(extra);
    Partition::new(parts)
}

fn with_infinity(group: &[Point]) -> Vec<Point> {
    let mut g = group.to_vec();
    g.push(Point::Inf);
    g
}

/// extODC of `K_{3q}` by `qK_3` from a 4-GDD of type `2^u`, `q = (2u+1)/3` odd.
pub fn gdd_to_extodc_odd(g: &GddDesign) -> Result<PartitionSystem> {
    require_verified_4gdd(g)?;
    let tv = g.type_vector();
    let u = match tv.as_slice() {
        [(2, u)] => *u,
        _ => {
            return Err(Error::Precondition(format!(
                "GDD type {} is not 2^u",
                g.type_string()
            )))
        }
    };
    if (2 * u + 1) % 3 != 0 || ((2 * u + 1) / 3) % 2 == 0 {
        return Err(Error::Precondition(format!(
            "type 2^{u} does not give an odd q"
        )));
    }
    let groups = g.groups();
    let mut partitions = Vec::with_capacity(2 * u);
    for x in g.points().iter() {
        let grp = &groups.parts()[groups.part_of(x).expect("groups span the points")];
        partitions.push(partition_at(g, x, vec![with_infinity(grp)])?);
    }
    let ps = PartitionSystem::new(PointSet::new(2 * u + 1, true)?, partitions)?;
    Ok(ps)
}

/// extODC of `K_{3q}` by `qK_3` for even `q` from a 4-GDD of type `2^u 17^1`
/// and an extODC of `K_18` by `6K_3` on the points `Z_17 ∪ {∞}`.
///
/// Seed point `j` is identified with the `j`-th smallest point of the
/// size-17 group, and seed partition `j` is used at that point.
pub fn gdd_to_extodc_even(g: &GddDesign, seed: &PartitionSystem) -> Result<PartitionSystem> {
    require_verified_4gdd(g)?;
    let tv = g.type_vector();
    let u = match tv.as_slice() {
        [(2, u), (17, 1)] => *u,
        _ => {
            return Err(Error::Precondition(format!(
                "GDD type {} is not 2^u 17^1",
                g.type_string()
            )))
        }
    };
    if u % 3 != 0 {
        return Err(Error::Precondition(format!(
            "type 2^{u} 17^1 does not give an integral q"
        )));
    }
    let seed_points = seed.points();
    if seed_points.size != 18 || !seed_points.has_infinity || seed.len() != 17 {
        return Err(Error::Precondition(
            "seed must be 17 partitions of Z_17 ∪ {inf}".into(),
        ));
    }
    let six = GraphType::triangles(6);
    if seed.partitions().iter().any(|p| graph_type_of(p) != six) {
        return Err(Error::Precondition(
            "seed partitions must be 6 disjoint triangles".into(),
        ));
    }
    let report = verify_double_cover(seed, CoverMode::AtLeast)?;
    if !report.passed {
        return Err(Error::Precondition(format!(
            "seed is not an extended double cover:\n{report}"
        )));
    }
    let groups = g.groups();
    let big = groups
        .parts()
        .iter()
        .find(|p| p.len() == 17)
        .expect("type has a 17-group")
        .clone();
    let relabel = |p: Point| match p {
        Point::Fin(j) => big[j as usize],
        Point::Inf => Point::Inf,
    };

    let mut partitions = Vec::with_capacity(g.points().size);
    for x in g.points().iter() {
        let grp = &groups.parts()[groups.part_of(x).expect("groups span the points")];
        let extra = match big.binary_search(&x) {
            Ok(j) => seed.partitions()[j]
                .parts()
                .iter()
                .map(|part| part.iter().map(|&p| relabel(p)).collect())
                .collect(),
            Err(_) => vec![with_infinity(grp)],
        };
        partitions.push(partition_at(g, x, extra)?);
    }
    let ps = PartitionSystem::new(PointSet::new(g.points().size + 1, true)?, partitions)?;
    Ok(ps)
}
