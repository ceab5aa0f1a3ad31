//! Harary graphs and the adjacency abstractions the rest of the crate works on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Read-only adjacency over positions `0..order`.
///
/// Implementors guarantee a simple undirected graph: symmetric, irreflexive,
/// no parallel edges.
pub trait Graph: Sync {
    fn order(&self) -> usize;

    /// Sorted neighbor positions of `v`. `v` must be in range.
    fn adjacent(&self, v: usize) -> Vec<usize>;

    fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::new(self.order(), self.adjacent(v)).expect("adjacency in range"))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::Index {
                vertex: v,
                order: self.order(),
            })
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adjacent(v).len()
    }

    fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Edges as position pairs `(u, v)` with `u < v`, sorted.
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            out.extend(
                self.adjacent(u)
                    .into_iter()
                    .filter(|&v| v > u)
                    .map(|v| (u, v)),
            );
        }
        out
    }

    fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }
}

/// Multiset of degrees as `degree -> count`, ascending by degree.
pub fn degree_profile(g: &impl Graph) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    for d in g.degrees() {
        *profile.entry(d).or_insert(0) += 1;
    }
    profile
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ParityClass {
    EvenD,
    OddDEvenN,
    OddDOddN,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityClass::EvenD => "EVEN_D",
            ParityClass::OddDEvenN => "ODD_D_EVEN_N",
            ParityClass::OddDOddN => "ODD_D_ODD_N",
        })
    }
}

/// Degree parameter `d` and order `n` of a Harary graph `H_{d,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HararyParams {
    d: usize,
    n: usize,
}

impl HararyParams {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::UnsupportedMinDegree(d));
        }
        if d >= n {
            return Err(Error::Parameter(format!(
                "H_{{{d},{n}}} needs d < n (got d = {d}, n = {n})"
            )));
        }
        Ok(Self { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `floor(d / 2)`, the number of ring offsets.
    pub fn half_degree(&self) -> usize {
        self.d / 2
    }

    pub fn parity_class(&self) -> ParityClass {
        match (self.d % 2, self.n % 2) {
            (0, _) => ParityClass::EvenD,
            (_, 0) => ParityClass::OddDEvenN,
            _ => ParityClass::OddDOddN,
        }
    }
}

impl fmt::Display for HararyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{{{},{}}}", self.d, self.n)
    }
}

/// Ring offsets plus an explicit chord list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantGraph {
    order: usize,
    offsets: BTreeSet<usize>,
    chords: Vec<(usize, usize)>,
    // Sorted neighbor lists, derived once from offsets and chords.
    adjacency: Vec<Vec<usize>>,
}

impl CirculantGraph {
    /// Builds the graph; fails if any offset or chord is out of range or
    /// if a chord duplicates an edge already present.
    pub fn new(
        order: usize,
        offsets: impl IntoIterator<Item = usize>,
        chords: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let offsets: BTreeSet<usize> = offsets.into_iter().collect();
        if let Some(&bad) = offsets.iter().find(|&&o| o == 0 || o > order / 2) {
            return Err(Error::Parameter(format!(
                "offset {bad} outside 1..={} for order {order}",
                order / 2
            )));
        }
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in 0..order {
            for &o in &offsets {
                let u = (v + o) % order;
                edges.insert((v.min(u), v.max(u)));
            }
        }
        let mut normalized = Vec::new();
        for (a, b) in chords {
            let (a, b) = (a.min(b), a.max(b));
            if b >= order || a == b {
                return Err(Error::Parameter(format!(
                    "chord ({a}, {b}) invalid for order {order}"
                )));
            }
            if !edges.insert((a, b)) {
                return Err(Error::Parameter(format!(
                    "chord ({a}, {b}) duplicates an edge"
                )));
            }
            normalized.push((a, b));
        }
        let mut adjacency = vec![Vec::new(); order];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            order,
            offsets,
            chords: normalized,
            adjacency,
        })
    }

    pub fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.iter().copied()
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// True when the edge set is rotation invariant (no chords).
    pub fn is_offsets_only(&self) -> bool {
        self.chords.is_empty()
    }
}

impl Graph for CirculantGraph {
    fn order(&self) -> usize {
        self.order
    }

    fn adjacent(&self, v: usize) -> Vec<usize> {
        self.adjacency[v].clone()
    }

    fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }
}

/// Builds `H_{d,n}`.
///
/// Odd `d` with odd `n` starts from `H_{d-1,n}` and adds chords
/// `i -- i + (n-1)/2` for `0 <= i <= (n-1)/2`, which puts the single
/// degree `d+1` vertex at position `(n-1)/2`.
pub fn build_harary(p: &HararyParams) -> CirculantGraph {
    let (d, n) = (p.d(), p.n());
    let ring = 1..=d / 2;
    let graph = match p.parity_class() {
        ParityClass::EvenD => CirculantGraph::new(n, ring, []),
        ParityClass::OddDEvenN => CirculantGraph::new(n, ring.chain([n / 2]), []),
        ParityClass::OddDOddN => {
            let half = (n - 1) / 2;
            CirculantGraph::new(n, ring, (0..=half).map(|i| (i, (i + half) % n)))
        }
    };
    graph.expect("Harary construction never produces duplicate edges for d < n")
}

/// General simple graph held as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    adjacency: Vec<Vec<usize>>,
}

impl AdjacencyGraph {
    /// Rejects loops and repeated edges.
    pub fn from_edges(
        order: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); order];
        let mut seen = BTreeSet::new();
        for (a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::Index {
                    vertex: a.max(b),
                    order,
                });
            }
            if a == b {
                return Err(Error::Parameter(format!("self-loop at position {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Parameter(format!("repeated edge ({a}, {b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { adjacency })
    }

    pub fn from_graph(g: &impl Graph) -> Self {
        Self {
            adjacency: (0..g.order()).map(|v| g.adjacent(v)).collect(),
        }
    }
}

impl Graph for AdjacencyGraph {
    fn order(&self) -> usize {
        self.adjacency.len()
    }

    fn adjacent(&self, v: usize) -> Vec<usize> {
        self.adjacency[v].clone()
    }

    fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }
}

/// Dense neighbor masks for graphs of order at most 64.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    masks: Vec<u64>,
}

impl BitGraph {
    pub const MAX_ORDER: usize = 64;

    pub fn from_graph(g: &impl Graph) -> Result<Self> {
        if g.order() > Self::MAX_ORDER {
            return Err(Error::Parameter(format!(
                "order {} exceeds the {}-vertex word limit",
                g.order(),
                Self::MAX_ORDER
            )));
        }
        let masks = (0..g.order())
            .map(|v| g.adjacent(v).into_iter().fold(0u64, |m, u| m | (1 << u)))
            .collect();
        Ok(Self { masks })
    }

    pub fn mask(&self, v: usize) -> u64 {
        self.masks[v]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Mask with every vertex set.
    pub fn all(&self) -> u64 {
        match self.masks.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }
}

impl Graph for BitGraph {
    fn order(&self) -> usize {
        self.masks.len()
    }

    fn adjacent(&self, v: usize) -> Vec<usize> {
        VertexSet::from_mask(self.masks[v]).positions().to_vec()
    }

    fn degree(&self, v: usize) -> usize {
        self.masks[v].count_ones() as usize
    }
}
