//! Short descriptions of the results behind each command, for `--explain`.

use crate::{Family, Kind};

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Extodc => "extodc",
        Family::OdcCode => "odc-code",
        Family::ExtodcCode => "extodc-code",
        Family::St22 => "st22",
        Family::K2 => "k2",
        Family::Rs => "rs",
        Family::RandomLll => "random-lll",
        Family::GddOdd => "gdd-odd",
        Family::GddEven => "gdd-even",
    }
}

pub fn construction(f: Family) -> &'static str {
    match f {
        Family::Extodc => {
            "explain: extODC of K_{3q} by qK_3 factors, from a developed base partition (even q) or from a 4-GDD \
             (type 2^u for odd q, 2^u 17^1 plus an 18-point seed for even q)"
        }
        Family::OdcCode | Family::ExtodcCode => {
            "explain: ODC/extODC to code: one row per point, one column per partition, the cell is the index of \
             the part holding the point; double coverage bounds agreements by two and overlapping partitions \
             witness every column pair, so f(q,3) >= number of partitions"
        }
        Family::St22 => {
            "explain: (2,2)-code from the near one-factorization of K_{2q-1}; it meets the upper bound \
             f_{2,2}(q,4) <= 2q-1"
        }
        Family::K2 => {
            "explain: one column per (t+1)-subset of qt+1 rows, rearranged along a perfect matching of the \
             subset intersection graph; meets f_{1,t}(q,2) <= C(qt+1,t+1)"
        }
        Family::Rs => "explain: extended Reed-Solomon code over GF(q); it is MDS, so f(q,k) >= q+1 for k < q",
        Family::RandomLll => {
            "explain: one random block of t+1 rows per (k-1)-set of columns; the local lemma shows a good \
             sample exists once the dependency condition holds"
        }
        Family::GddOdd => {
            "explain: 4-GDD of type 2^u to an extODC of K_{2u+1} by triangle factors, then to a \
             (q,3,3q-1)-code with 3q = 2u+1"
        }
        Family::GddEven => {
            "explain: 4-GDD of type 2^u 17^1 plus an 18-point extODC seed to an extODC of K_{2u+18}, then to a \
             (q,3,3q-1)-code"
        }
    }
}

pub fn verifier(k: Kind) -> &'static str {
    match k {
        Kind::Code => {
            "explain: condition (i) bounds the columns on which any t+1 rows show at most s symbols by k-1; \
             condition (ii) asks every (k-1)-set of columns to be exactly such a set"
        }
        Kind::Design => "explain: every 2-subset covered twice, and every two partitions share the required number of covered pairs",
        Kind::Gdd => "explain: every cross-group pair in exactly one block, no block meets a group twice",
        Kind::BasePartition => "explain: cyclic development of the triples must give an extODC by triangle factors",
    }
}

pub fn bounds() -> &'static str {
    "explain: the universal upper bound is the crossing of the pair-counting bound (increasing in m) and \
     the phi-based bound (decreasing in m); each lower bound names the construction that attains it"
}
