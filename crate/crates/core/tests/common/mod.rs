//! Test-only oracle, written from the textual graph description and kept
//! independent of the library's graph and search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// `H_{d,n}` as neighbor sets, built edge by edge.
pub fn naive_harary(d: usize, n: usize) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    let mut join = |a: usize, b: usize| {
        let (a, b) = (a % n, b % n);
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    };
    for v in 0..n {
        for step in 1..=d / 2 {
            join(v, v + step);
        }
    }
    if d % 2 == 1 {
        if n.is_multiple_of(2) {
            for v in 0..n / 2 {
                join(v, v + n / 2);
            }
        } else {
            for i in 0..=(n - 1) / 2 {
                join(i, i + (n - 1) / 2);
            }
        }
    }
    adj
}

pub fn naive_is_ktds(adj: &[BTreeSet<usize>], set: &BTreeSet<usize>, k: usize) -> bool {
    adj.iter().all(|nb| nb.intersection(set).count() >= k)
}

/// Exhaustive minimum over all `2^n` subsets; ties go to the
/// lexicographically smallest sorted position list.
pub fn naive_gamma(adj: &[BTreeSet<usize>], k: usize) -> Option<(usize, Vec<usize>)> {
    let n = adj.len();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u64..(1u64 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if !naive_is_ktds(adj, &set, k) {
            continue;
        }
        let candidate = (set.len(), set.into_iter().collect::<Vec<_>>());
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best
}
