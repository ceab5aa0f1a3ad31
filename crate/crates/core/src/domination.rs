//! k-tuple total domination: coverage, verification, forced vertices and lower bounds.
//!
//! Everything here works on any [`Graph`], not only Harary graphs, so the
//! same code validates constructions and backs the exact solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Per-vertex count `|N(v) ∩ S|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageVector(Vec<usize>);

impl CoverageVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// First position whose coverage is below `k`, with its coverage.
    pub fn first_deficient(&self, k: usize) -> Option<(usize, usize)> {
        self.0.iter().copied().enumerate().find(|&(_, c)| c < k)
    }

    /// Sum over vertices of `max(0, k - coverage)`.
    pub fn total_deficit(&self, k: usize) -> usize {
        self.0.iter().map(|&c| k.saturating_sub(c)).sum()
    }
}

pub fn coverage(g: &impl Graph, s: &VertexSet) -> Result<CoverageVector> {
    if let Some(vertex) = s.iter().find(|&v| v >= g.order()) {
        return Err(Error::Index {
            vertex,
            order: g.order(),
        });
    }
    let mut counts = vec![0; g.order()];
    for member in s.iter() {
        for u in g.adjacent(member) {
            counts[u] += 1;
        }
    }
    Ok(CoverageVector(counts))
}

/// True iff every vertex has at least `k` neighbors in `s`.
pub fn is_ktds(g: &impl Graph, s: &VertexSet, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    Ok(coverage(g, s)?.min() >= k)
}

/// Union of `N(v)` over all vertices of degree exactly `k`.
///
/// A degree-`k` vertex can only reach coverage `k` if all of its neighbors
/// are chosen, so the result is contained in every kTDS.
pub fn forced_vertices(g: &impl Graph, k: usize) -> VertexSet {
    let forced = (0..g.order())
        .filter(|&v| g.degree(v) == k)
        .flat_map(|v| g.adjacent(v));
    VertexSet::new(g.order(), forced).expect("adjacency in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    /// `k + 1`.
    pub trivial: usize,
    /// `ceil(k * order / max_degree)`.
    pub degree: usize,
    /// Fewest vertices whose degrees can sum to `k * order`.
    pub degree_sum: usize,
    /// `order`; the whole vertex set is a kTDS whenever `min_degree >= k`.
    pub upper: usize,
}

impl BoundsRecord {
    /// Strongest lower bound in the record.
    pub fn best(&self) -> usize {
        self.trivial.max(self.degree).max(self.degree_sum)
    }

    /// Name of the bound that attains [`best`](Self::best), preferring the simplest.
    pub fn best_name(&self) -> &'static str {
        let best = self.best();
        if self.trivial == best {
            "trivial"
        } else if self.degree == best {
            "degree"
        } else {
            "degree_sum"
        }
    }
}

pub fn check_feasible(g: &impl Graph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let min_degree = g.min_degree();
    if g.order() == 0 || min_degree < k {
        return Err(Error::Infeasible { min_degree, k });
    }
    Ok(())
}

pub fn lower_bounds(g: &impl Graph, k: usize) -> Result<BoundsRecord> {
    check_feasible(g, k)?;
    let order = g.order();
    let need = k * order;
    let degree = need.div_ceil(g.max_degree());

    // Every vertex must be counted k times across the neighborhoods of S,
    // so the degrees of S sum to at least k * order.
    let mut degrees = g.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let mut acc = 0;
    let degree_sum = degrees
        .iter()
        .position(|&d| {
            acc += d;
            acc >= need
        })
        .map_or(order, |i| i + 1);

    Ok(BoundsRecord {
        trivial: k + 1,
        degree,
        degree_sum,
        upper: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_harary, AdjacencyGraph, HararyParams};

    fn h(d: usize, n: usize) -> crate::graph::CirculantGraph {
        build_harary(&HararyParams::new(d, n).unwrap())
    }

    fn labels(order: usize, l: &[i64]) -> VertexSet {
        VertexSet::from_labels(order, l).unwrap()
    }

    #[test]
    fn coverage_of_known_2tds() {
        let g = h(3, 6);
        let c = coverage(&g, &labels(6, &[1, 2, 4, 5])).unwrap();
        assert_eq!(c.as_slice(), &[2; 6]);
    }

    #[test]
    fn empty_set_covers_nothing() {
        let g = h(4, 8);
        assert_eq!(
            coverage(&g, &VertexSet::empty()).unwrap().as_slice(),
            &[0; 8]
        );
    }

    #[test]
    fn partial_coverage() {
        let g = h(4, 8);
        let c = coverage(&g, &labels(8, &[1, 3])).unwrap();
        assert_eq!(c.as_slice()[0], 1);
        assert!(!is_ktds(&g, &labels(8, &[1, 3]), 2).unwrap());
    }

    #[test]
    fn out_of_range_member() {
        let g = h(3, 5);
        let s = VertexSet::new(9, [7]).unwrap();
        assert!(matches!(
            coverage(&g, &s),
            Err(Error::Index {
                vertex: 7,
                order: 5
            })
        ));
    }

    #[test]
    fn ktds_checks() {
        assert!(is_ktds(&h(3, 6), &labels(6, &[1, 2, 4, 5]), 2).unwrap());
        assert!(is_ktds(&h(4, 8), &labels(8, &[1, 3, 5, 7]), 2).unwrap());
        assert!(is_ktds(&h(3, 6), &labels(6, &[1, 2, 4, 5]), 0).is_err());
    }

    #[test]
    fn whole_vertex_set_iff_min_degree() {
        for (d, n) in [(2, 5), (3, 5), (4, 9), (5, 8)] {
            let g = h(d, n);
            for k in 1..=d + 2 {
                let full = VertexSet::full(n);
                assert_eq!(is_ktds(&g, &full, k).unwrap(), g.min_degree() >= k);
            }
        }
    }

    #[test]
    fn forced_examples() {
        assert_eq!(forced_vertices(&h(2, 5), 2), VertexSet::full(5));
        assert!(forced_vertices(&h(3, 6), 2).is_empty());
        assert_eq!(forced_vertices(&h(3, 5), 3), VertexSet::full(5));
    }

    #[test]
    fn bounds_examples() {
        let b = lower_bounds(&h(4, 8), 2).unwrap();
        assert_eq!(b.degree, 4);
        assert_eq!(b.trivial, 3);
        assert_eq!(b.upper, 8);

        let b = lower_bounds(&h(3, 5), 2).unwrap();
        assert_eq!((b.degree, b.degree_sum), (3, 3));

        let b = lower_bounds(&h(3, 6), 2).unwrap();
        assert_eq!(b.degree, 4);
    }

    #[test]
    fn degree_sum_beats_degree_on_odd_odd() {
        // ceil(18/4) = 5, but the degree-4 vertex plus five degree-3 vertices are needed to reach 18.
        let b = lower_bounds(&h(3, 9), 2).unwrap();
        assert_eq!((b.degree, b.degree_sum), (5, 6));
    }

    #[test]
    fn infeasible_when_min_degree_below_k() {
        assert!(matches!(
            lower_bounds(&h(3, 6), 4),
            Err(Error::Infeasible {
                min_degree: 3,
                k: 4
            })
        ));
        let path = AdjacencyGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(lower_bounds(&path, 2).is_err());
        assert!(lower_bounds(&path, 1).is_ok());
    }
}
