//! Data model: one-colour digraphs, oriented trees, coloured hosts and
//! embedding certificates, together with the brute-force oracles everything
//! else is checked against.

pub(crate) mod embedding;
mod host;
pub mod io;
mod oracle;
mod tree;

pub use embedding::{Embedding, EmbeddingError};
pub use host::{ColouredDigraph, HostError, HostKind, Violation};
pub use oracle::{
    contains_monochromatic_copy, find_embedding, has_copy, longest_directed_path,
    longest_monochromatic_directed_path, CopySearch,
};
pub use tree::{OrientedTree, TreeError};

use fixedbitset::FixedBitSet;

/// Dense vertex id.
pub type Vertex = usize;

/// Colour id, `1..=k`.
pub type Colour = u8;

/// A directed graph on `0..n` with bit-packed out- and in-rows.
///
/// Used both for a single colour class of a host and for arbitrary
/// one-colour inputs of the embedding engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    edges: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
            edges: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Digraph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Tournament with `u -> v` for all `u < v`.
    pub fn transitive_tournament(n: usize) -> Self {
        Digraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Both orientations of every pair.
    pub fn complete(n: usize) -> Self {
        Digraph::from_edges(
            n,
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))),
        )
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if !self.out[u].contains(v) {
            self.out[u].insert(v);
            self.inn[v].insert(u);
            self.edges += 1;
        }
    }

    pub(crate) fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if self.out[u].contains(v) {
            self.out[u].set(v, false);
            self.inn[v].set(u, false);
            self.edges -= 1;
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].contains(v)
    }

    /// Either orientation present.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].contains(v) || self.inn[u].contains(v)
    }

    #[inline]
    pub fn out_row(&self, v: Vertex) -> &FixedBitSet {
        &self.out[v]
    }

    #[inline]
    pub fn in_row(&self, v: Vertex) -> &FixedBitSet {
        &self.inn[v]
    }

    #[inline]
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].count_ones(..)
    }

    #[inline]
    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inn[v].count_ones(..)
    }

    pub fn out_neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[v].ones()
    }

    pub fn in_neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.inn[v].ones()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].ones().map(move |v| (u, v)))
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> Digraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Digraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for v in self.out[u].ones() {
                let j = pos[v];
                if j != usize::MAX {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// True if no edge of `self` joins two members of `set`.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }

    /// Topological order, or `None` if there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut stack: Vec<Vertex> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = stack.pop() {
            order.push(u);
            for v in self.out[u].ones() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices reachable from `start` (inclusive) along out-edges, restricted
    /// to `within`.
    pub(crate) fn reach_within(&self, start: Vertex, within: &FixedBitSet) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.n);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in self.out[u].ones() {
                if within.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn is_directed_path(&self, path: &[Vertex]) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &v in path {
            if v >= self.n || seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

pub(crate) fn bitset_from(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vertices {
        s.insert(v);
    }
    s
}
