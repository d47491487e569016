//! Exact minimum-weight perfect matching.
//!
//! Small instances (the overwhelming majority in code-capacity decoding)
//! go through a subset dynamic program that also fixes the tie-break:
//! among optimal matchings the one whose sorted edge list is
//! lexicographically smallest wins. Larger instances fall back to an
//! Edmonds blossom solver, which is exact but breaks ties arbitrarily.

use crate::error::{Error, Result};

/// Largest node count solved by the subset program.
pub const SUBSET_DP_MAX_NODES: usize = 20;

/// Complete graph with optional non-negative integer edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingGraph {
    n: usize,
    weights: Vec<Option<u32>>,
}

impl MatchingGraph {
    /// Graph on `n` nodes with no edges.
    pub fn new(n: usize) -> Self {
        Self { n, weights: vec![None; n * n] }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn set_weight(&mut self, a: usize, b: usize, w: u32) {
        assert!(a != b && a < self.n && b < self.n, "bad edge ({a}, {b})");
        self.weights[a * self.n + b] = Some(w);
        self.weights[b * self.n + a] = Some(w);
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<u32> {
        self.weights[a * self.n + b]
    }

    /// Total weight of a set of edges, `None` if some edge is missing.
    pub fn total_weight(&self, edges: &[(usize, usize)]) -> Option<u64> {
        edges.iter().map(|&(a, b)| self.weight(a, b).map(u64::from)).sum()
    }
}

/// Solver selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingAlgorithm {
    /// Subset DP when small enough, blossom otherwise.
    Auto,
    SubsetDp,
    Blossom,
}

/// Minimum-weight perfect matching as a sorted list of `(a, b)` pairs with `a < b`.
pub fn min_weight_perfect_matching(graph: &MatchingGraph) -> Result<Vec<(usize, usize)>> {
    min_weight_perfect_matching_with(graph, MatchingAlgorithm::Auto)
}

pub fn min_weight_perfect_matching_with(
    graph: &MatchingGraph,
    algorithm: MatchingAlgorithm,
) -> Result<Vec<(usize, usize)>> {
    if graph.n % 2 == 1 {
        return Err(Error::OddNodeCount(graph.n));
    }
    if graph.n == 0 {
        return Ok(Vec::new());
    }
    let use_dp = match algorithm {
        MatchingAlgorithm::Auto => graph.n <= SUBSET_DP_MAX_NODES,
        MatchingAlgorithm::SubsetDp => {
            if graph.n > SUBSET_DP_MAX_NODES + 4 {
                return Err(Error::InvalidArgument(format!(
                    "subset matching supports at most {} nodes",
                    SUBSET_DP_MAX_NODES + 4
                )));
            }
            true
        }
        MatchingAlgorithm::Blossom => false,
    };
    let mut edges = if use_dp { subset_dp(graph)? } else { blossom(graph)? };
    edges.sort_unstable();
    Ok(edges)
}

const UNREACHABLE: u64 = u64::MAX;

fn subset_dp(graph: &MatchingGraph) -> Result<Vec<(usize, usize)>> {
    let n = graph.n;
    let full = (1usize << n) - 1;
    // cost[mask] = min weight perfect matching of the nodes in mask
    let mut cost = vec![UNREACHABLE; full + 1];
    cost[0] = 0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut best = UNREACHABLE;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if let Some(w) = graph.weight(i, j) {
                let sub = cost[rest & !(1 << j)];
                if sub != UNREACHABLE && sub + u64::from(w) < best {
                    best = sub + u64::from(w);
                }
            }
        }
        cost[mask] = best;
    }
    if cost[full] == UNREACHABLE {
        return Err(Error::InvalidArgument("graph has no perfect matching".into()));
    }
    // walk back choosing the smallest partner at each step
    let mut edges = Vec::with_capacity(n / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut bits = rest;
        let mut chosen = None;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if let Some(w) = graph.weight(i, j) {
                let sub = cost[rest & !(1 << j)];
                if sub != UNREACHABLE && sub + u64::from(w) == cost[mask] {
                    chosen = Some(j);
                    break;
                }
            }
        }
        let j = chosen.expect("optimal partner exists");
        edges.push((i, j));
        mask = rest & !(1 << j);
    }
    Ok(edges)
}

fn blossom(graph: &MatchingGraph) -> Result<Vec<(usize, usize)>> {
    let n = graph.n;
    let max_w = (0..n * n).filter_map(|k| graph.weights[k]).max().unwrap_or(0);
    let max_w = i32::try_from(max_w).map_err(|_| Error::InvalidArgument("edge weight too large".into()))?;
    let lift = max_w + 1;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(w) = graph.weight(a, b) {
                edges.push((a, b, lift - w as i32));
            }
        }
    }
    let mate = mwmatching::Matching::new(edges).max_cardinality().solve();
    let mut pairs = Vec::with_capacity(n / 2);
    for (a, &b) in mate.iter().enumerate() {
        if b == mwmatching::SENTINEL {
            return Err(Error::InvalidArgument("graph has no perfect matching".into()));
        }
        if a < b {
            pairs.push((a, b));
        }
    }
    if mate.len() < n {
        return Err(Error::InvalidArgument("graph has no perfect matching".into()));
    }
    Ok(pairs)
}

/// One resolved defect in a [`DefectGraph`] matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    Pair(usize, usize),
    Boundary(usize),
}

/// Defects with pairwise distances and a private virtual boundary node each.
///
/// As a matching graph it has `2k` nodes: defect `i` is node `i` and its
/// boundary copy is node `k + i`. Boundary copies are joined to each
/// other at weight zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectGraph {
    k: usize,
    pair: Vec<u32>,
    boundary: Vec<u32>,
}

impl DefectGraph {
    /// `pair(i, j)` for `i < j` gives the defect distance, `boundary(i)` the
    /// distance from defect `i` to its nearest boundary.
    pub fn new(k: usize, pair: impl Fn(usize, usize) -> u32, boundary: impl Fn(usize) -> u32) -> Self {
        let mut weights = vec![0; k * k];
        for i in 0..k {
            for j in i + 1..k {
                let w = pair(i, j);
                weights[i * k + j] = w;
                weights[j * k + i] = w;
            }
        }
        Self { k, pair: weights, boundary: (0..k).map(boundary).collect() }
    }

    pub fn num_defects(&self) -> usize {
        self.k
    }

    pub fn pair_weight(&self, i: usize, j: usize) -> u32 {
        self.pair[i * self.k + j]
    }

    pub fn boundary_weight(&self, i: usize) -> u32 {
        self.boundary[i]
    }

    /// The full `2k`-node matching graph.
    pub fn to_matching_graph(&self) -> MatchingGraph {
        let k = self.k;
        let mut g = MatchingGraph::new(2 * k);
        for i in 0..k {
            for j in i + 1..k {
                g.set_weight(i, j, self.pair_weight(i, j));
                g.set_weight(k + i, k + j, 0);
            }
            g.set_weight(i, k + i, self.boundary[i]);
        }
        g
    }

    pub fn total_weight(&self, pairing: &[Pairing]) -> u64 {
        pairing
            .iter()
            .map(|p| match *p {
                Pairing::Pair(i, j) => u64::from(self.pair_weight(i, j)),
                Pairing::Boundary(i) => u64::from(self.boundary[i]),
            })
            .sum()
    }

    /// Minimum-weight resolution of all defects.
    ///
    /// Equivalent to a perfect matching of [`DefectGraph::to_matching_graph`]
    /// with the same lexicographic tie-break: the lowest open defect prefers
    /// the lowest-indexed partner defect and goes to the boundary last.
    pub fn solve(&self) -> Result<Vec<Pairing>> {
        if self.k == 0 {
            return Ok(Vec::new());
        }
        if self.k > SUBSET_DP_MAX_NODES {
            return self.solve_general();
        }
        let k = self.k;
        let full = (1usize << k) - 1;
        let mut cost = vec![0u64; full + 1];
        for mask in 1..=full {
            let i = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << i);
            let mut best = cost[rest] + u64::from(self.boundary[i]);
            let mut bits = rest;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let c = cost[rest & !(1 << j)] + u64::from(self.pair_weight(i, j));
                if c < best {
                    best = c;
                }
            }
            cost[mask] = best;
        }
        let mut out = Vec::with_capacity(k);
        let mut mask = full;
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << i);
            let mut bits = rest;
            let mut chosen = None;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if cost[rest & !(1 << j)] + u64::from(self.pair_weight(i, j)) == cost[mask] {
                    chosen = Some(j);
                    break;
                }
            }
            match chosen {
                Some(j) => {
                    out.push(Pairing::Pair(i, j));
                    mask = rest & !(1 << j);
                }
                None => {
                    out.push(Pairing::Boundary(i));
                    mask = rest;
                }
            }
        }
        Ok(out)
    }

    fn solve_general(&self) -> Result<Vec<Pairing>> {
        let k = self.k;
        let edges = min_weight_perfect_matching(&self.to_matching_graph())?;
        let mut out = Vec::with_capacity(k);
        for (a, b) in edges {
            if b < k {
                out.push(Pairing::Pair(a, b));
            } else if a < k {
                out.push(Pairing::Boundary(a));
            }
        }
        Ok(out)
    }
}
