//! Bipartite graphs from the configuration model and vertex-expansion checks.

mod doubling;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seed;

pub use doubling::{
    check_doubling, check_vertex_expansion, CheckMode, DoublingConfig, DoublingVerdict, Inequality, Outcome,
    VerdictMode, Violation, DEFAULT_EXACT_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Bipartite graph with classes `A` and `B`, both indexed `0..k`.
/// Adjacency lists are sorted and deduplicated; every degree is at most `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    k: usize,
    r: usize,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn from_edges<I>(k: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj_a = vec![Vec::new(); k];
        let mut adj_b = vec![Vec::new(); k];
        for (a, b) in edges {
            for index in [a, b] {
                if index >= k {
                    return Err(Error::IndexOutOfRange { index, n: k });
                }
            }
            adj_a[a].push(b);
            adj_b[b].push(a);
        }
        for list in adj_a.iter_mut().chain(adj_b.iter_mut()) {
            list.sort_unstable();
            list.dedup();
            if list.len() > r {
                return Err(Error::InvalidParameter(format!("degree {} exceeds bound r = {r}", list.len())));
            }
        }
        Ok(BipartiteGraph { k, r, adj_a, adj_b })
    }

    pub fn complete(k: usize) -> Self {
        Self::from_edges(k, k, (0..k).flat_map(|a| (0..k).map(move |b| (a, b)))).expect("valid")
    }

    /// The matching `a_i -- b_i`.
    pub fn perfect_matching(k: usize) -> Self {
        Self::from_edges(k, 1, (0..k).map(|i| (i, i))).expect("valid")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn neighbors(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::A => &self.adj_a[v],
            Side::B => &self.adj_b[v],
        }
    }

    pub fn degree(&self, side: Side, v: usize) -> usize {
        self.neighbors(side, v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj_a.iter().chain(&self.adj_b).map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj_a.iter().map(Vec::len).sum()
    }

    /// Edges `(a, b)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj_a.iter().enumerate().flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj_a[a].binary_search(&b).is_ok()
    }
}

/// Configuration model `G_r(A, B)`: `r` stubs per vertex on each side,
/// matched by a seeded Fisher-Yates shuffle of the `B` stubs against the
/// `A` stubs in order; parallel stub pairs collapse to one edge.
pub fn sample_configuration(k: usize, r: usize, seed: u64) -> Result<BipartiteGraph> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidParameter(format!("configuration model needs k, r >= 1 (got k = {k}, r = {r})")));
    }
    let mut b_stubs: Vec<usize> = (0..k * r).map(|s| s / r).collect();
    b_stubs.shuffle(&mut seed::rng(seed));
    BipartiteGraph::from_edges(k, r, b_stubs.into_iter().enumerate().map(|(s, b)| (s / r, b)))
}

/// `Γ(X)` for `X` on `side`: the union of neighbour lists, sorted.
pub fn neighborhood(g: &BipartiteGraph, x: &[usize], side: Side) -> Result<Vec<usize>> {
    let mut hit = vec![false; g.k];
    for &v in x {
        if v >= g.k {
            return Err(Error::IndexOutOfRange { index: v, n: g.k });
        }
        for &w in g.neighbors(side, v) {
            hit[w] = true;
        }
    }
    Ok((0..g.k).filter(|&w| hit[w]).collect())
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(SimpleGraph { adj })
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).expect("valid for n >= 3")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// `H(G)`: two copies of `V(G)`, with `a -- b` iff `a` and `b` are adjacent
/// in `G`. The degree bound is the maximum degree of `G`.
pub fn double_cover(g: &SimpleGraph) -> BipartiteGraph {
    let n = g.len();
    BipartiteGraph::from_edges(
        n,
        g.max_degree(),
        (0..n).flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v))),
    )
    .expect("degrees preserved")
}
