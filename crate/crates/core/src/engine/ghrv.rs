//! Long directed path or large independent set, via the levels of a maximal
//! acyclic subgraph.

use fixedbitset::FixedBitSet;

use crate::digraph::{Digraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GhrvOutcome {
    /// A directed path, listed from tail to head.
    Path(Vec<Vertex>),
    /// An independent set, sorted.
    Independent(Vec<Vertex>),
}

/// Greedy edge-maximal acyclic subgraph and its level function.
#[derive(Clone, Debug)]
pub struct Levelling {
    pub acyclic: Digraph,
    /// Order of the longest path of the acyclic subgraph ending at each
    /// vertex, minus one.
    pub level: Vec<usize>,
    /// Predecessor on such a longest path.
    pred: Vec<Option<Vertex>>,
}

impl Levelling {
    pub fn max_level(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Longest path of the acyclic subgraph ending at `v`.
    pub fn path_to(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.pred[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Vertices with the given level, sorted.
    pub fn class(&self, level: usize) -> Vec<Vertex> {
        (0..self.level.len()).filter(|&v| self.level[v] == level).collect()
    }
}

/// Adds the edges of `g` in lexicographic order, skipping each edge that
/// would close a cycle, then levels the result.
///
/// Every skipped edge `u -> v` has a path `v ~> u` in the acyclic part, so
/// `level(u) > level(v)` and no edge of `g` joins two vertices of equal level.
pub fn acyclic_levelling(g: &Digraph) -> Levelling {
    let n = g.order();
    let mut acyclic = Digraph::empty(n);
    // reach[w] = vertices reachable from w, w included.
    let mut reach: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(n);
            b.insert(v);
            b
        })
        .collect();
    for (u, v) in g.edges() {
        if reach[v].contains(u) {
            continue;
        }
        acyclic.add_edge(u, v);
        let gained = reach[v].clone();
        for r in reach.iter_mut() {
            if r.contains(u) {
                r.union_with(&gained);
            }
        }
    }

    let order = acyclic.topological_order().expect("built acyclic");
    let mut level = vec![0usize; n];
    let mut pred = vec![None; n];
    for &u in &order {
        for v in acyclic.out_neighbours(u) {
            if level[u] + 1 > level[v] || (level[u] + 1 == level[v] && pred[v].map_or(false, |p| u < p))
            {
                level[v] = level[u] + 1;
                pred[v] = Some(u);
            }
        }
    }
    Levelling { acyclic, level, pred }
}

/// A directed path of length at least `length`, or an independent set of
/// size at least `ceil(|G| / (length))` when `length >= 1`.
///
/// With `L` the largest level: if `L >= length` the path ends at the lowest
/// vertex of level `L`; otherwise the levels form a proper colouring with at
/// most `length` classes and the largest class (lowest level on ties) is
/// returned.
pub fn ghrv_dichotomy(g: &Digraph, length: usize) -> GhrvOutcome {
    if g.order() == 0 {
        return GhrvOutcome::Independent(Vec::new());
    }
    let lev = acyclic_levelling(g);
    let top = lev.max_level();
    if top >= length {
        let end = (0..g.order()).find(|&v| lev.level[v] == top).expect("max attained");
        return GhrvOutcome::Path(lev.path_to(end));
    }
    let best = (0..=top).max_by_key(|&l| (lev.class(l).len(), std::cmp::Reverse(l))).expect("levels");
    GhrvOutcome::Independent(lev.class(best))
}
