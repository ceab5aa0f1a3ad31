use harary_tds::{
    build_harary, coverage, evaluate_instance, is_ktds, CirculantGraph, Graph, HararyParams,
    InstanceReport, Method, ParityClass, SolveOptions, VertexSet,
};
use proptest::prelude::*;

/// `(d, n)` with `2 <= d < n <= 24`.
fn params() -> impl Strategy<Value = HararyParams> {
    (3usize..=24)
        .prop_flat_map(|n| (2..n, Just(n)))
        .prop_map(|(d, n)| HararyParams::new(d, n).unwrap())
}

fn params_and_set() -> impl Strategy<Value = (HararyParams, VertexSet)> {
    params().prop_flat_map(|p| {
        let n = p.n();
        (Just(p), prop::collection::btree_set(0..n, 0..=n))
            .prop_map(move |(p, s)| (p, VertexSet::new(n, s).unwrap()))
    })
}

proptest! {
    #[test]
    fn coverage_sum_equals_degree_sum((p, s) in params_and_set()) {
        let g = build_harary(&p);
        let cov = coverage(&g, &s).unwrap();
        let degree_sum: usize = s.iter().map(|v| g.degree(v)).sum();
        prop_assert_eq!(cov.total(), degree_sum);
    }

    #[test]
    fn adding_a_vertex_never_lowers_coverage((p, s) in params_and_set(), extra in 0usize..24) {
        let g = build_harary(&p);
        let v = extra % p.n();
        let before = coverage(&g, &s).unwrap();
        let after = coverage(&g, &s.with(v)).unwrap();
        prop_assert!(before.as_slice().iter().zip(after.as_slice()).all(|(a, b)| a <= b));
        for k in 1..=2 {
            if is_ktds(&g, &s, k).unwrap() {
                prop_assert!(is_ktds(&g, &s.with(v), k).unwrap());
            }
        }
    }

    #[test]
    fn odd_degree_contains_previous_even_degree((p, s) in params_and_set()) {
        prop_assume!(p.d() % 2 == 1 && p.d() >= 3);
        let g = build_harary(&p);
        let base = build_harary(&HararyParams::new(p.d() - 1, p.n()).unwrap());
        for (u, v) in base.edges() {
            prop_assert!(g.adjacent(u).contains(&v));
        }
        if is_ktds(&base, &s, 2).unwrap() {
            prop_assert!(is_ktds(&g, &s, 2).unwrap());
        }
    }

    #[test]
    fn circulant_classes_are_rotation_invariant((p, s) in params_and_set(), shift in -30i64..30) {
        prop_assume!(p.parity_class() != ParityClass::OddDOddN);
        let g = build_harary(&p);
        let rotated = s.rotated(p.n(), shift);
        let mut expected: Vec<usize> = coverage(&g, &s).unwrap().as_slice().to_vec();
        expected.rotate_right(shift.rem_euclid(p.n() as i64) as usize);
        let actual = coverage(&g, &rotated).unwrap();
        prop_assert_eq!(actual.as_slice(), &expected[..]);
    }

    #[test]
    fn vertex_set_json_round_trip((p, s) in params_and_set()) {
        let json = serde_json::to_string(&s).unwrap();
        let back: VertexSet = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(VertexSet::from_labels(p.n(), &s.labels().iter().map(|&l| l as i64).collect::<Vec<_>>()).unwrap(), s);
    }

    #[test]
    fn mask_round_trip(mask in any::<u64>()) {
        prop_assert_eq!(VertexSet::from_mask(mask).to_mask(), mask);
    }

    #[test]
    fn circulant_edges_are_symmetric(order in 3usize..30, raw in prop::collection::btree_set(1usize..15, 1..4)) {
        let offsets: Vec<usize> = raw.into_iter().filter(|&o| 2 * o < order).collect();
        prop_assume!(!offsets.is_empty());
        let g = CirculantGraph::new(order, offsets.clone(), vec![]).unwrap();
        for v in 0..order {
            prop_assert_eq!(g.degree(v), 2 * offsets.len());
            for u in g.adjacent(v) {
                prop_assert!(g.adjacent(u).contains(&v));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn report_json_round_trip(p in params().prop_filter("small", |p| p.n() <= 14)) {
        let report = evaluate_instance(&p, 2, &SolveOptions::new(Method::Bnb)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: InstanceReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, report);
    }
}
