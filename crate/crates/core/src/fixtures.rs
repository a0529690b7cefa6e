//! Reference objects shipped with the crate.

use crate::code::ArmstrongCode;
use crate::construct::PartOrdering;
use crate::designs::{BasePartition, PartitionSystem};
use crate::format;

/// The ODC of `K_7` by `2K_3 ∪ K_1` developed from `{1,2,4}, {3,5,6}, {0}`.
pub fn k7_odc_system() -> PartitionSystem {
    format::parse_system(include_str!("../fixtures/k7-odc.design")).expect("bundled fixture parses")
}

/// Symbols 1, 2, 3 for `i+{1,2,4}`, `i+{3,5,6}`, `{i}` in partition `i`.
pub fn k7_odc_ordering() -> PartOrdering {
    format::parse_ordering(include_str!("../fixtures/k7-odc.order"))
        .expect("bundled fixture parses")
}

/// The `(3,3,7)`-Armstrong code built from [`k7_odc_system`].
pub fn k7_odc_code() -> ArmstrongCode {
    format::parse_code(include_str!("../fixtures/k7-odc.code")).expect("bundled fixture parses")
}

/// A `(4,4,7)`-Armstrong code with `s = t = 2`.
pub fn st22_q4_code() -> ArmstrongCode {
    format::parse_code(include_str!("../fixtures/st22-q4.code")).expect("bundled fixture parses")
}

/// Published base partitions of `Z_{3q-1} ∪ {∞}` for `q ∈ {6, 8, 10, 12}`.
pub fn tabulated_base(q: usize) -> Option<BasePartition> {
    let text = match q {
        6 => include_str!("../fixtures/base-q6.base"),
        8 => include_str!("../fixtures/base-q8.base"),
        10 => include_str!("../fixtures/base-q10.base"),
        12 => include_str!("../fixtures/base-q12.base"),
        _ => return None,
    };
    Some(format::parse_base_partition(text).expect("bundled fixture parses"))
}
