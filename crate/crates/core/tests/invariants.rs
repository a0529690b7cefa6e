use proptest::prelude::*;

use armstrong::construct::{extodc_to_code, odc_to_code, rs_code, InfinityCoordinate};
use armstrong::format::{self, Artifact};
use armstrong::{
    combin::binomial_u128, develop_base_partition, fixtures, verify_armstrong, verify_double_cover,
    verify_st_armstrong, ArmstrongCode, CoverMode, Partition, PartitionSystem, Point, Symbol,
};

fn small_code() -> impl Strategy<Value = ArmstrongCode> {
    (2usize..=4, 2usize..=7)
        .prop_flat_map(|(q, n)| {
            let row = proptest::collection::vec(0..q as Symbol, n);
            (Just(q), 2..=n, proptest::collection::btree_set(row, 2..=10))
        })
        .prop_map(|(q, k, rows)| ArmstrongCode::new(q, k, rows.into_iter().collect()).unwrap())
}

fn permute_code(
    c: &ArmstrongCode,
    rows: &[usize],
    cols: &[usize],
    syms: &[usize],
) -> ArmstrongCode {
    let src = c.to_rows();
    let out = rows
        .iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| syms[src[i][j] as usize] as Symbol)
                .collect()
        })
        .collect();
    ArmstrongCode::new(c.q(), c.k(), out).unwrap()
}

fn relabel(ps: &PartitionSystem, perm: &[usize]) -> PartitionSystem {
    let map = |p: &Point| match p {
        Point::Fin(x) => Point::Fin(perm[*x as usize] as u32),
        Point::Inf => Point::Inf,
    };
    let parts = ps
        .partitions()
        .iter()
        .map(|p| {
            Partition::new(
                p.parts()
                    .iter()
                    .map(|b| b.iter().map(map).collect())
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    PartitionSystem::new(ps.points(), parts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classical_and_generalized_verifiers_agree(c in small_code()) {
        let classic = verify_armstrong(&c).unwrap();
        let general = verify_st_armstrong(&c.reparameterize(c.k(), Some((1, 1))).unwrap(), None).unwrap();
        prop_assert_eq!(classic.passed, general.passed);
        prop_assert_eq!(classic.condition_i, general.condition_i);
    }

    #[test]
    fn passing_codes_have_enough_pairs(c in small_code()) {
        if verify_armstrong(&c).unwrap().passed {
            let pairs = (c.m() * (c.m() - 1) / 2) as u128;
            prop_assert!(pairs >= binomial_u128(c.n() as u64, c.k() as u64 - 1));
        }
    }

    #[test]
    fn verdict_invariant_under_symmetries(
        c in small_code(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..c.m()).collect();
        let mut cols: Vec<usize> = (0..c.n()).collect();
        let mut syms: Vec<usize> = (0..c.q()).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        syms.shuffle(&mut rng);
        let p = permute_code(&c, &rows, &cols, &syms);
        prop_assert_eq!(verify_armstrong(&c).unwrap().passed, verify_armstrong(&p).unwrap().passed);
    }

    #[test]
    fn code_text_and_json_round_trip(c in small_code()) {
        let text = format::write_code(&c);
        prop_assert_eq!(&format::parse_code(&text).unwrap(), &c);
        let art = Artifact::Code { code: c.clone() };
        prop_assert_eq!(format::parse_any(&art.to_json()).unwrap(), format::parse_any(&art.to_text()).unwrap());
        prop_assert_eq!(format::write_code(&format::parse_code(&text).unwrap()), text);
    }

    #[test]
    fn double_cover_verdict_invariant_under_relabeling(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let ex1 = fixtures::k7_odc_system();
        let moved = relabel(&ex1, &perm);
        prop_assert!(verify_double_cover(&moved, CoverMode::Exact).unwrap().passed);
        let code = odc_to_code(&moved, None).unwrap();
        prop_assert!(verify_armstrong(&code).unwrap().passed);
    }

    #[test]
    fn developed_base_partitions_relabel_cleanly(q in prop::sample::select(vec![6usize, 8]), shift in 0u32..24) {
        let ps = develop_base_partition(&fixtures::tabulated_base(q).unwrap()).unwrap();
        let v = 3 * q - 1;
        let perm: Vec<usize> = (0..v).map(|x| (x + shift as usize) % v).collect();
        let moved = relabel(&ps, &perm);
        prop_assert!(verify_double_cover(&moved, CoverMode::AtLeast).unwrap().passed);
        prop_assert!(verify_armstrong(&extodc_to_code(&moved, None).unwrap()).unwrap().passed);
    }
}

#[test]
fn reed_solomon_codes_survive_symmetries() {
    let c = rs_code(4, 3, InfinityCoordinate::LeadingCoefficient).unwrap();
    let rows: Vec<usize> = (0..c.m()).rev().collect();
    let cols: Vec<usize> = (0..c.n()).rev().collect();
    let syms = vec![2, 0, 3, 1];
    assert!(
        verify_armstrong(&permute_code(&c, &rows, &cols, &syms))
            .unwrap()
            .passed
    );
}
