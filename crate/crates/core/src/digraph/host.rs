use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Colour, Digraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HostKind {
    Tournament,
    CompleteDigraph,
    General,
}

impl HostKind {
    pub fn code(self) -> char {
        match self {
            HostKind::Tournament => 'T',
            HostKind::CompleteDigraph => 'D',
            HostKind::General => 'G',
        }
    }

    pub fn from_code(c: &str) -> Option<Self> {
        match c {
            "T" => Some(HostKind::Tournament),
            "D" => Some(HostKind::CompleteDigraph),
            "G" => Some(HostKind::General),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HostError {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("colour {colour} outside 1..={k}")]
    ColourOutOfRange { colour: usize, k: usize },
    #[error("edge ({0},{1}) coloured twice")]
    DuplicateEdge(Vertex, Vertex),
    #[error("at least one colour is required")]
    NoColours,
}

/// First structural invariant a host breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Loop(Vertex),
    BidirectedInTournament(Vertex, Vertex),
    MissingPair(Vertex, Vertex),
    MissingReverseEdge(Vertex, Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop(v) => write!(f, "loop at {v}"),
            Violation::BidirectedInTournament(u, v) => {
                write!(f, "bidirected in Tournament: ({u},{v}) and ({v},{u})")
            }
            Violation::MissingPair(u, v) => write!(f, "missing edge between {u} and {v}"),
            Violation::MissingReverseEdge(u, v) => write!(f, "missing reverse edge ({u},{v})"),
        }
    }
}

/// A host digraph with one colour in `1..=k` per present edge.
///
/// Stores a dense colour matrix (0 = absent) for lookups and one bit-packed
/// [`Digraph`] per colour class for neighbourhood intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredDigraph {
    n: usize,
    k: usize,
    kind: HostKind,
    colour: Vec<Colour>,
    classes: Vec<Digraph>,
}

impl ColouredDigraph {
    pub fn from_edges<I>(n: usize, k: usize, kind: HostKind, edges: I) -> Result<Self, HostError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Colour)>,
    {
        if k == 0 || k > Colour::MAX as usize {
            return Err(HostError::NoColours);
        }
        let mut colour = vec![0; n * n];
        let mut classes = vec![Digraph::empty(n); k];
        for (u, v, c) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(HostError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if c == 0 || c as usize > k {
                return Err(HostError::ColourOutOfRange { colour: c as usize, k });
            }
            if colour[u * n + v] != 0 {
                return Err(HostError::DuplicateEdge(u, v));
            }
            colour[u * n + v] = c;
            classes[c as usize - 1].add_edge(u, v);
        }
        Ok(ColouredDigraph { n, k, kind, colour, classes })
    }

    /// Every edge of `g` in colour 1.
    pub fn monochromatic(g: &Digraph, kind: HostKind) -> Self {
        Self::from_edges(g.order(), 1, kind, g.edges().map(|(u, v)| (u, v, 1)))
            .expect("edges of a digraph are in range")
    }

    /// Tournament `u -> v` iff `orient(u, v)` for `u < v`, coloured by `colour`.
    pub fn tournament_from_fn(
        n: usize,
        k: usize,
        mut orient: impl FnMut(Vertex, Vertex) -> bool,
        mut colour: impl FnMut(Vertex, Vertex) -> Colour,
    ) -> Result<Self, HostError> {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = if orient(u, v) { (u, v) } else { (v, u) };
                edges.push((a, b, colour(a, b)));
            }
        }
        Self::from_edges(n, k, HostKind::Tournament, edges)
    }

    /// Complete digraph with `colour(u, v)` on every ordered pair.
    pub fn complete_from_fn(
        n: usize,
        k: usize,
        mut colour: impl FnMut(Vertex, Vertex) -> Colour,
    ) -> Result<Self, HostError> {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1));
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    edges.push((u, v, colour(u, v)));
                }
            }
        }
        Self::from_edges(n, k, HostKind::CompleteDigraph, edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn colours(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn kind(&self) -> HostKind {
        self.kind
    }

    #[inline]
    pub fn colour(&self, u: Vertex, v: Vertex) -> Option<Colour> {
        match self.colour[u * self.n + v] {
            0 => None,
            c => Some(c),
        }
    }

    /// The colour-`c` subgraph. Panics if `c` is outside `1..=k`.
    #[inline]
    pub fn class(&self, c: Colour) -> &Digraph {
        &self.classes[c as usize - 1]
    }

    pub fn edge_count(&self) -> usize {
        self.classes.iter().map(Digraph::edge_count).sum()
    }

    /// All present edges in lexicographic `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Colour)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| self.colour(u, v).map(|c| (u, v, c)))
        })
    }

    /// Sub-host induced on `vertices`, same kind and palette.
    pub fn induced(&self, vertices: &[Vertex]) -> ColouredDigraph {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if let Some(c) = self.colour(u, v) {
                    edges.push((i, j, c));
                }
            }
        }
        Self::from_edges(vertices.len(), self.k, self.kind, edges).expect("induced host is valid")
    }

    /// Returns the first violated structural invariant, if any.
    pub fn validate(&self) -> Result<(), Violation> {
        for v in 0..self.n {
            if self.colour(v, v).is_some() {
                return Err(Violation::Loop(v));
            }
        }
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let fwd = self.colour(u, v).is_some();
                let back = self.colour(v, u).is_some();
                match self.kind {
                    HostKind::Tournament if u < v && fwd && back => {
                        return Err(Violation::BidirectedInTournament(u, v));
                    }
                    HostKind::Tournament if u < v && !fwd && !back => {
                        return Err(Violation::MissingPair(u, v));
                    }
                    HostKind::CompleteDigraph if !fwd && back => {
                        return Err(Violation::MissingReverseEdge(u, v));
                    }
                    HostKind::CompleteDigraph if !fwd && !back => {
                        return Err(Violation::MissingPair(u.min(v), u.max(v)));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_tournament_is_valid() {
        let h = ColouredDigraph::from_edges(2, 1, HostKind::Tournament, [(0, 1, 1)]).unwrap();
        assert_eq!(h.validate(), Ok(()));
    }

    #[test]
    fn bidirected_tournament_rejected() {
        let h = ColouredDigraph::from_edges(2, 1, HostKind::Tournament, [(0, 1, 1), (1, 0, 1)])
            .unwrap();
        let v = h.validate().unwrap_err();
        assert_eq!(v, Violation::BidirectedInTournament(0, 1));
        assert!(v.to_string().starts_with("bidirected in Tournament"));
    }

    #[test]
    fn complete_digraph_missing_reverse() {
        let edges = [(0, 1), (1, 0), (0, 2), (2, 1), (1, 2)].map(|(u, v)| (u, v, 1));
        let h = ColouredDigraph::from_edges(3, 1, HostKind::CompleteDigraph, edges).unwrap();
        let v = h.validate().unwrap_err();
        assert_eq!(v, Violation::MissingReverseEdge(2, 0));
        assert!(v.to_string().starts_with("missing reverse edge"));
    }

    #[test]
    fn loops_and_ranges() {
        let h = ColouredDigraph::from_edges(2, 1, HostKind::General, [(1, 1, 1)]).unwrap();
        assert_eq!(h.validate(), Err(Violation::Loop(1)));
        assert!(matches!(
            ColouredDigraph::from_edges(2, 2, HostKind::General, [(0, 1, 3)]),
            Err(HostError::ColourOutOfRange { .. })
        ));
        assert!(matches!(
            ColouredDigraph::from_edges(2, 2, HostKind::General, [(0, 2, 1)]),
            Err(HostError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn complete_from_fn_is_valid() {
        let h = ColouredDigraph::complete_from_fn(4, 2, |u, v| if u < v { 1 } else { 2 }).unwrap();
        assert_eq!(h.validate(), Ok(()));
        assert_eq!(h.class(1).edge_count(), 6);
        assert_eq!(h.class(2).edge_count(), 6);
    }
}
