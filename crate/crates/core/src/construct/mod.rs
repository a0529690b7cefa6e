//! Constructions of Armstrong codes and of the designs they come from.

mod k2;
mod lll;
mod matching;
mod near_one;
mod odc;
mod rs;

pub use k2::{k2_code, k2_intersection_graph};
pub use lll::{random_lll_code, random_lll_code_with, LllBlock, LllOutcome, LllSampler};
pub use matching::bipartite_matching;
pub use near_one::{near_one_factorization, st22_code, triangle_witness, NearOneFactorization};
pub use odc::{extodc_to_code, gdd_to_extodc_even, gdd_to_extodc_odd, odc_to_code, PartOrdering};
pub use rs::{rs_code, InfinityCoordinate};

/// Default ceiling on `rows * columns` for the explicit constructions.
pub const DEFAULT_MAX_CELLS: u128 = 50_000_000;
