//! Exact k-tuple total domination number on small graphs.
//!
//! Two independent searches over 64-bit vertex masks:
//!
//! * [`Method::Brute`] walks cardinalities upward from the best lower bound
//!   and, within one cardinality, combinations in lexicographic order. The
//!   first hit is minimal and lexicographically smallest.
//! * [`Method::Bnb`] seeds the forced vertices, branches include/exclude on
//!   the undecided vertex that helps the most deficient vertices, and prunes
//!   with `size + ceil(deficit / max_degree) >= incumbent`. A second,
//!   position-ordered pass then picks the lexicographically smallest witness
//!   of the optimal size, so the result does not depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::domination::{check_feasible, forced_vertices, is_ktds, lower_bounds};
use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::graph::{BitGraph, Graph};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Brute,
    #[default]
    Bnb,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "BRUTE",
            Method::Bnb => "BNB",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "brute" => Ok(Method::Brute),
            "bnb" => Ok(Method::Bnb),
            other => Err(Error::Parameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Subsets tested (BRUTE) or search nodes visited (BNB).
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub gamma: usize,
    pub witness: VertexSet,
    pub method: Method,
    pub stats: SolveStats,
}

/// Budget ran out: the optimum lies in `lo..=hi` and `best` attains `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub best: VertexSet,
    pub method: Method,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(SolveResult),
    Timeout(Interval),
}

impl SolveOutcome {
    pub fn gamma(&self) -> Option<usize> {
        match self {
            SolveOutcome::Solved(r) => Some(r.gamma),
            SolveOutcome::Timeout(_) => None,
        }
    }

    pub fn bounds(&self) -> (usize, usize) {
        match self {
            SolveOutcome::Solved(r) => (r.gamma, r.gamma),
            SolveOutcome::Timeout(i) => (i.lo, i.hi),
        }
    }

    pub fn method(&self) -> Method {
        match self {
            SolveOutcome::Solved(r) => r.method,
            SolveOutcome::Timeout(i) => i.method,
        }
    }

    pub fn stats(&self) -> SolveStats {
        match self {
            SolveOutcome::Solved(r) => r.stats,
            SolveOutcome::Timeout(i) => i.stats,
        }
    }

    pub fn solved(self) -> Option<SolveResult> {
        match self {
            SolveOutcome::Solved(r) => Some(r),
            SolveOutcome::Timeout(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub method: Method,
    pub budget: Option<Duration>,
    pub execution: Execution,
}

impl SolveOptions {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            budget: None,
            execution: Execution::Sequential,
        }
    }

    pub fn budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

struct Deadline {
    start: Instant,
    limit: Option<Duration>,
    expired: AtomicBool,
}

impl Deadline {
    fn new(limit: Option<Duration>) -> Self {
        Self {
            start: Instant::now(),
            limit,
            expired: AtomicBool::new(false),
        }
    }

    /// Checks the clock only every 1024 ticks.
    fn hit(&self, tick: u64) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(limit) = self.limit {
            if tick & 1023 == 0 && self.start.elapsed() >= limit {
                self.expired.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn expired(&self) -> bool {
        self.expired.load(Ordering::Relaxed)
    }
}

fn covers(masks: &[u64], set: u64, k: u32) -> bool {
    masks.iter().all(|&nb| (nb & set).count_ones() >= k)
}

/// Drops vertices in position order while the set stays a kTDS.
fn greedy_minimal(masks: &[u64], all: u64, k: u32) -> u64 {
    let mut set = all;
    for v in 0..masks.len() {
        let candidate = set & !(1 << v);
        if covers(masks, candidate, k) {
            set = candidate;
        }
    }
    set
}

pub fn solve_exact(g: &impl Graph, k: usize, opts: &SolveOptions) -> Result<SolveOutcome> {
    check_feasible(g, k)?;
    let bits = BitGraph::from_graph(g)?;
    let lower = lower_bounds(g, k)?.best();
    let deadline = Deadline::new(opts.budget);
    let outcome = match opts.method {
        Method::Brute => brute(&bits, k as u32, lower, &deadline, opts.execution),
        Method::Bnb => bnb(
            &bits,
            k as u32,
            lower,
            &forced_vertices(g, k),
            &deadline,
            opts.execution,
        ),
    };
    let elapsed = deadline.start.elapsed();
    Ok(match outcome {
        SolveOutcome::Solved(mut r) => {
            debug_assert!(is_ktds(g, &r.witness, k).unwrap_or(false));
            r.stats.elapsed = elapsed;
            SolveOutcome::Solved(r)
        }
        SolveOutcome::Timeout(mut i) => {
            i.stats.elapsed = elapsed;
            SolveOutcome::Timeout(i)
        }
    })
}

/// Runs both methods without a budget and compares the optimum.
pub fn cross_check(g: &impl Graph, k: usize) -> Result<bool> {
    let brute = solve_exact(g, k, &SolveOptions::new(Method::Brute))?;
    let bnb = solve_exact(g, k, &SolveOptions::new(Method::Bnb))?;
    Ok(brute.gamma() == bnb.gamma())
}

/// Calls `visit` on every `size`-subset of `first+1..order` joined with
/// `first`, in lexicographic order, until `visit` returns true.
fn scan_with_first(
    order: usize,
    first: usize,
    size: usize,
    mut visit: impl FnMut(u64) -> bool,
) -> Option<u64> {
    let rest = size - 1;
    let base = 1u64 << first;
    if rest == 0 {
        return visit(base).then_some(base);
    }
    let lo = first + 1;
    if order - lo < rest {
        return None;
    }
    let mut idx: Vec<usize> = (lo..lo + rest).collect();
    loop {
        let mask = idx.iter().fold(base, |m, &v| m | (1 << v));
        if visit(mask) {
            return Some(mask);
        }
        // Advance to the next combination.
        let mut i = rest;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < order - rest + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..rest {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn brute(
    bits: &BitGraph,
    k: u32,
    start: usize,
    deadline: &Deadline,
    exec: Execution,
) -> SolveOutcome {
    let masks = bits.masks();
    let order = masks.len();
    let nodes = AtomicU64::new(0);
    let stats = |nodes: &AtomicU64| SolveStats {
        nodes: nodes.load(Ordering::Relaxed),
        elapsed: Duration::ZERO,
    };

    for size in start.max(1)..=order {
        let scan = |first: usize| {
            let mut local = 0u64;
            let found = scan_with_first(order, first, size, |set| {
                local += 1;
                if deadline.hit(local) {
                    return true;
                }
                covers(masks, set, k)
            });
            nodes.fetch_add(local, Ordering::Relaxed);
            found.filter(|_| !deadline.expired())
        };
        let firsts = 0..=order - size;
        let hit = if exec.is_parallel() {
            par_find_first(firsts, scan)
        } else {
            firsts.into_iter().find_map(scan)
        };
        if deadline.expired() {
            let best = greedy_minimal(masks, bits.all(), k);
            return SolveOutcome::Timeout(Interval {
                lo: size,
                hi: best.count_ones() as usize,
                best: VertexSet::from_mask(best),
                method: Method::Brute,
                stats: stats(&nodes),
            });
        }
        if let Some(set) = hit {
            return SolveOutcome::Solved(SolveResult {
                gamma: size,
                witness: VertexSet::from_mask(set),
                method: Method::Brute,
                stats: stats(&nodes),
            });
        }
    }
    unreachable!("the whole vertex set is a kTDS once the minimum degree reaches k")
}

#[cfg(feature = "parallel")]
fn par_find_first<F>(range: std::ops::RangeInclusive<usize>, f: F) -> Option<u64>
where
    F: Fn(usize) -> Option<u64> + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
fn par_find_first<F>(range: std::ops::RangeInclusive<usize>, f: F) -> Option<u64>
where
    F: Fn(usize) -> Option<u64>,
{
    range.into_iter().find_map(f)
}

/// Partial assignment in the branch-and-bound tree.
#[derive(Clone, Debug)]
struct Node {
    chosen: u64,
    undecided: u64,
    coverage: Vec<u32>,
}

impl Node {
    fn size(&self) -> usize {
        self.chosen.count_ones() as usize
    }

    fn include(&mut self, masks: &[u64], v: usize) {
        self.chosen |= 1 << v;
        self.undecided &= !(1 << v);
        let mut nb = masks[v];
        while nb != 0 {
            self.coverage[nb.trailing_zeros() as usize] += 1;
            nb &= nb - 1;
        }
    }

    fn uninclude(&mut self, masks: &[u64], v: usize) {
        self.chosen &= !(1 << v);
        self.undecided |= 1 << v;
        let mut nb = masks[v];
        while nb != 0 {
            self.coverage[nb.trailing_zeros() as usize] -= 1;
            nb &= nb - 1;
        }
    }
}

enum Assess {
    Complete,
    Infeasible,
    /// Total coverage still missing.
    Open(usize),
}

fn assess(masks: &[u64], node: &Node, k: u32) -> Assess {
    let mut total = 0usize;
    for (v, &c) in node.coverage.iter().enumerate() {
        if c < k {
            let missing = k - c;
            if (masks[v] & node.undecided).count_ones() < missing {
                return Assess::Infeasible;
            }
            total += missing as usize;
        }
    }
    if total == 0 {
        Assess::Complete
    } else {
        Assess::Open(total)
    }
}

struct Search<'a> {
    masks: &'a [u64],
    k: u32,
    max_degree: usize,
    lower: usize,
    incumbent: &'a AtomicUsize,
    deadline: &'a Deadline,
    nodes: u64,
    best: Option<u64>,
}

impl Search<'_> {
    /// Undecided vertex adjacent to the most deficient vertices; lowest position on ties.
    fn branch_vertex(&self, node: &Node) -> Option<usize> {
        let deficient = node
            .coverage
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c < self.k)
            .fold(0u64, |m, (v, _)| m | (1 << v));
        let mut best: Option<(u32, usize)> = None;
        let mut rest = node.undecided;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let gain = (self.masks[v] & deficient).count_ones();
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn run(&mut self, node: &mut Node) {
        self.nodes += 1;
        if self.deadline.hit(self.nodes) || self.incumbent.load(Ordering::Relaxed) <= self.lower {
            return;
        }
        let missing = match assess(self.masks, node, self.k) {
            Assess::Infeasible => return,
            Assess::Complete => {
                let size = node.size();
                if self.incumbent.fetch_min(size, Ordering::Relaxed) > size {
                    self.best = Some(node.chosen);
                }
                return;
            }
            Assess::Open(missing) => missing,
        };
        if node.size() + missing.div_ceil(self.max_degree) >= self.incumbent.load(Ordering::Relaxed)
        {
            return;
        }
        let Some(v) = self.branch_vertex(node) else {
            return;
        };
        node.include(self.masks, v);
        self.run(node);
        node.uninclude(self.masks, v);

        node.undecided &= !(1 << v);
        self.run(node);
        node.undecided |= 1 << v;
    }

    /// Expands the tree breadth-first into at least `target` open subproblems.
    fn frontier(&mut self, root: Node, target: usize) -> Vec<Node> {
        let mut layer = vec![root];
        while layer.len() < target {
            let mut next = Vec::with_capacity(layer.len() * 2);
            let mut grew = false;
            for node in layer {
                self.nodes += 1;
                match assess(self.masks, &node, self.k) {
                    Assess::Infeasible => {}
                    Assess::Complete => {
                        let size = node.size();
                        if self.incumbent.fetch_min(size, Ordering::Relaxed) > size {
                            self.best = Some(node.chosen);
                        }
                    }
                    Assess::Open(_) => {
                        if let Some(v) = self.branch_vertex(&node) {
                            let mut with = node.clone();
                            with.include(self.masks, v);
                            let mut without = node;
                            without.undecided &= !(1 << v);
                            next.push(with);
                            next.push(without);
                            grew = true;
                        }
                    }
                }
            }
            layer = next;
            if !grew {
                break;
            }
        }
        layer
    }
}

fn root_node(masks: &[u64], all: u64, forced: &VertexSet) -> Node {
    let mut node = Node {
        chosen: 0,
        undecided: all,
        coverage: vec![0; masks.len()],
    };
    for v in forced.iter() {
        node.include(masks, v);
    }
    node
}

fn bnb(
    bits: &BitGraph,
    k: u32,
    lower: usize,
    forced: &VertexSet,
    deadline: &Deadline,
    exec: Execution,
) -> SolveOutcome {
    let masks = bits.masks();
    let greedy = greedy_minimal(masks, bits.all(), k);
    let incumbent = AtomicUsize::new(greedy.count_ones() as usize);
    let max_degree = bits.max_degree();
    let root = root_node(masks, bits.all(), forced);

    let searcher = || Search {
        masks,
        k,
        max_degree,
        lower,
        incumbent: &incumbent,
        deadline,
        nodes: 0,
        best: None,
    };

    let (mut nodes, found) = if exec.is_parallel() {
        let mut head = searcher();
        let frontier = head.frontier(root, 4 * exec.workers());
        let results = map_ordered(exec, frontier, |mut node| {
            let mut s = searcher();
            s.run(&mut node);
            (s.nodes, s.best.map(|b| (b.count_ones(), b)))
        });
        let nodes = head.nodes + results.iter().map(|r| r.0).sum::<u64>();
        let found = results
            .into_iter()
            .filter_map(|r| r.1)
            .chain(head.best.map(|b| (b.count_ones(), b)))
            .min()
            .map(|(_, b)| b);
        (nodes, found)
    } else {
        let mut s = searcher();
        let mut node = root;
        s.run(&mut node);
        (s.nodes, s.best)
    };

    let best = found.unwrap_or(greedy);
    let gamma = incumbent.load(Ordering::Relaxed);
    debug_assert_eq!(best.count_ones() as usize, gamma);
    if deadline.expired() {
        return SolveOutcome::Timeout(Interval {
            lo: lower,
            hi: gamma,
            best: VertexSet::from_mask(best),
            method: Method::Bnb,
            stats: SolveStats {
                nodes,
                elapsed: Duration::ZERO,
            },
        });
    }

    // Canonical witness. If the budget runs out here the optimum is still
    // known, so the search witness is kept instead.
    let mut canon_nodes = 0;
    let witness = lex_min_witness(
        masks,
        k,
        gamma,
        forced.to_mask(),
        deadline,
        &mut canon_nodes,
    )
    .unwrap_or(best);
    nodes += canon_nodes;
    SolveOutcome::Solved(SolveResult {
        gamma,
        witness: VertexSet::from_mask(witness),
        method: Method::Bnb,
        stats: SolveStats {
            nodes,
            elapsed: Duration::ZERO,
        },
    })
}

/// Lexicographically smallest kTDS of exactly `target` vertices, found by
/// include-first branching in position order.
fn lex_min_witness(
    masks: &[u64],
    k: u32,
    target: usize,
    forced: u64,
    deadline: &Deadline,
    nodes: &mut u64,
) -> Option<u64> {
    let order = masks.len();
    let max_degree = masks
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(1);

    fn go(
        pos: usize,
        node: &mut Node,
        ctx: (&[u64], u32, usize, usize, u64, &Deadline),
        nodes: &mut u64,
    ) -> Option<u64> {
        let (masks, k, target, max_degree, forced, deadline) = ctx;
        *nodes += 1;
        if deadline.hit(*nodes) {
            return None;
        }
        let missing = match assess(masks, node, k) {
            Assess::Complete => return Some(node.chosen),
            Assess::Infeasible => return None,
            Assess::Open(missing) => missing,
        };
        if pos == masks.len() || node.size() + missing.div_ceil(max_degree) > target {
            return None;
        }
        if node.chosen & (1 << pos) != 0 {
            return go(pos + 1, node, ctx, nodes);
        }
        if node.size() < target {
            node.include(masks, pos);
            let hit = go(pos + 1, node, ctx, nodes);
            node.uninclude(masks, pos);
            if hit.is_some() {
                return hit;
            }
        }
        if forced & (1 << pos) != 0 {
            return None;
        }
        node.undecided &= !(1 << pos);
        let hit = go(pos + 1, node, ctx, nodes);
        node.undecided |= 1 << pos;
        hit
    }

    let all = if order == 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    };
    let mut root = root_node(masks, all, &VertexSet::from_mask(forced));
    go(
        0,
        &mut root,
        (masks, k, target, max_degree, forced, deadline),
        nodes,
    )
}
