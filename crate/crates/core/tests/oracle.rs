mod common;

use std::collections::BTreeSet;

use common::{naive_gamma, naive_harary, naive_is_ktds};
use harary_tds::{
    build_harary, construct_2tds, cross_check, is_ktds, lower_bounds, solve_exact, Graph,
    HararyParams, Method, SolveOptions,
};

fn solve(g: &impl Graph, k: usize, method: Method) -> harary_tds::SolveResult {
    solve_exact(g, k, &SolveOptions::new(method))
        .unwrap()
        .solved()
        .unwrap()
}

#[test]
fn library_graph_matches_naive_construction() {
    for n in 3..=20 {
        for d in 2..n {
            let g = build_harary(&HararyParams::new(d, n).unwrap());
            let naive = naive_harary(d, n);
            for (v, expected) in naive.iter().enumerate() {
                let ours: BTreeSet<usize> = g.adjacent(v).into_iter().collect();
                assert_eq!(&ours, expected, "H_{d},{n} vertex {v}");
            }
        }
    }
}

#[test]
fn both_methods_match_exhaustive_oracle() {
    for n in 3..=12 {
        for d in 2..n {
            let g = build_harary(&HararyParams::new(d, n).unwrap());
            let naive = naive_harary(d, n);
            for k in 1..=d.min(4) {
                let Some((gamma, witness)) = naive_gamma(&naive, k) else {
                    continue;
                };
                for method in [Method::Brute, Method::Bnb] {
                    let r = solve(&g, k, method);
                    assert_eq!(r.gamma, gamma, "H_{d},{n} k={k} {method}");
                    assert_eq!(
                        r.witness.positions(),
                        &witness[..],
                        "H_{d},{n} k={k} {method}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_spot_values() {
    let cases = [((3, 4), 3), ((3, 5), 3), ((4, 8), 4), ((3, 6), 4)];
    for ((d, n), expected) in cases {
        assert_eq!(naive_gamma(&naive_harary(d, n), 2).unwrap().0, expected);
        let g = build_harary(&HararyParams::new(d, n).unwrap());
        assert_eq!(solve(&g, 2, Method::Bnb).gamma, expected);
    }
    for n in 3..=12 {
        assert_eq!(naive_gamma(&naive_harary(2, n), 2).unwrap().0, n);
    }
}

#[test]
fn bounds_never_exceed_gamma() {
    for n in 3..=16 {
        for d in 2..n {
            let g = build_harary(&HararyParams::new(d, n).unwrap());
            for k in 2..=d.min(3) {
                let b = lower_bounds(&g, k).unwrap();
                let gamma = solve(&g, k, Method::Bnb).gamma;
                assert!(
                    b.trivial <= gamma && b.degree <= gamma && b.degree_sum <= gamma,
                    "H_{d},{n} k={k}"
                );
                assert!(b.degree_sum >= b.degree);
                assert!(gamma <= b.upper);
            }
        }
    }
}

#[test]
fn odd_odd_degree_sum_bound_matches_closed_form() {
    // ceil((4n+1)/(2m+1)) on H_{2m+1,2n+1}.
    for half_n in 2..=15 {
        for m in 1..half_n {
            let (d, order) = (2 * m + 1, 2 * half_n + 1);
            let g = build_harary(&HararyParams::new(d, order).unwrap());
            let b = lower_bounds(&g, 2).unwrap();
            assert_eq!(
                b.degree_sum,
                (4 * half_n + 1).div_ceil(2 * m + 1),
                "H_{d},{order}"
            );
        }
    }
}

#[test]
fn witnesses_are_minimal() {
    for n in 4..=14 {
        for d in 2..n {
            let g = build_harary(&HararyParams::new(d, n).unwrap());
            let r = solve(&g, 2, Method::Bnb);
            assert!(is_ktds(&g, &r.witness, 2).unwrap());
            for v in r.witness.iter() {
                assert!(
                    !is_ktds(&g, &r.witness.without(v), 2).unwrap(),
                    "H_{d},{n} drop {v}"
                );
            }
        }
    }
}

#[test]
fn gamma_monotone_in_k() {
    for n in 4..=12 {
        for d in 3..n {
            let g = build_harary(&HararyParams::new(d, n).unwrap());
            let gammas: Vec<_> = (1..=d).map(|k| solve(&g, k, Method::Bnb).gamma).collect();
            assert!(
                gammas.windows(2).all(|w| w[0] <= w[1]),
                "H_{d},{n}: {gammas:?}"
            );
        }
    }
}

#[test]
fn cross_check_sweep() {
    for n in 3..=12 {
        for d in 2..n {
            let g = build_harary(&HararyParams::new(d, n).unwrap());
            assert!(cross_check(&g, 2).unwrap(), "H_{d},{n}");
        }
    }
}

#[test]
fn validated_flags_agree_with_naive_check() {
    for n in 4..=24 {
        for d in 2..n {
            let p = HararyParams::new(d, n).unwrap();
            let naive = naive_harary(d, n);
            for c in construct_2tds(&p) {
                let set: BTreeSet<usize> = c.set.iter().collect();
                assert_eq!(c.validated, naive_is_ktds(&naive, &set, 2), "{p} {}", c.id);
                assert_eq!(c.cardinality + c.collapsed, c.stated, "{p} {}", c.id);
                assert_eq!(c.cardinality, c.set.len());
            }
        }
    }
}

#[test]
fn published_sets_never_undercut_gamma() {
    for n in 4..=16 {
        for d in 3..n {
            let p = HararyParams::new(d, n).unwrap();
            let gamma = solve(&build_harary(&p), 2, Method::Brute).gamma;
            for c in construct_2tds(&p).into_iter().filter(|c| c.validated) {
                assert!(c.cardinality >= gamma, "{p} {}", c.id);
            }
        }
    }
}
