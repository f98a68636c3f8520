use std::collections::BTreeSet;

use proptest::prelude::*;

use toric_syzygy::asymptotics::{average_hit, binomial, wedge_sum_set, wedge_sum_set_sampled};
use toric_syzygy::geometry::{builtin, LatticePointSet, Point};

fn point_set() -> impl Strategy<Value = LatticePointSet> {
    prop::collection::btree_set((-3i64..=3, -3i64..=3), 1..=12).prop_map(|pts| LatticePointSet {
        points: pts.into_iter().map(|(a, b)| vec![a, b]).collect(),
        dilation: 1,
    })
}

fn brute_force(base: &LatticePointSet, p: usize) -> BTreeSet<Vec<i64>> {
    let n = base.len();
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == p)
        .map(|mask| {
            (0..n).filter(|i| mask >> i & 1 == 1).fold(vec![0; 2], |acc, i| {
                acc.iter().zip(&base.points[i]).map(|(a, b)| a + b).collect()
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_sums_match_brute_force(base in point_set(), p in 0usize..=12) {
        let set = wedge_sum_set(&base, p, 1 << 16).unwrap();
        prop_assert!(set.exact);
        prop_assert_eq!(set.sums, brute_force(&base, p));
    }

    #[test]
    fn sampled_sums_are_genuine(base in point_set(), p in 1usize..=6, seed in 0u64..1000) {
        prop_assume!(p <= base.len());
        let sampled = wedge_sum_set_sampled(&base, p, 20, seed);
        let all = brute_force(&base, p);
        prop_assert!(sampled.sums.is_subset(&all));
    }
}

#[test]
fn binomials() {
    assert_eq!(binomial(12, 6), 924);
    assert_eq!(binomial(5, 7), 0);
    assert_eq!(binomial(1000, 500), u128::MAX);
}

#[test]
fn average_witnesses_verify() {
    let square = builtin("square").unwrap();
    for x in [[0.5, 0.5], [0.3, 0.7], [0.1, 0.1], [0.9, 0.45]] {
        let x = Point::from_f64(&x);
        if let Some(w) = average_hit(&square, &x, 0.05, |d| d as usize, 8).unwrap() {
            assert!(w.verify(&square));
            assert!(w.distance <= 0.05);
        }
    }
}
