//! Armstrong codes: constructions from orthogonal double covers and related
//! designs, exhaustive verifiers, and upper and lower bounds on their length.
//!
//! A `(q, k, n)`-Armstrong code is a set of length-`n` words over `q`
//! symbols in which any two words agree in at most `k-1` positions, and
//! every set of `k-1` positions is exactly the agreement set of some pair of
//! words. The `(s, t)` generalization replaces pairs by `t+1` words and
//! agreement by "at most `s` distinct symbols".

pub mod bounds;
pub mod code;
pub mod combin;
pub mod construct;
pub mod designs;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod galois;
pub mod search;

pub use code::{
    agreement_set, min_distance, verify_armstrong, verify_armstrong_with, verify_st_armstrong,
    verify_st_armstrong_with, ArmstrongCode, Budget, Limits, Symbol, VerificationReport, Witness,
};
pub use designs::{
    develop_base_partition, verify_base_partition, verify_double_cover, verify_gdd, BasePartition,
    CoverMode, DesignReport, GddDesign, GraphType, Partition, PartitionSystem, Point, PointSet,
};
pub use error::{Error, Result};
