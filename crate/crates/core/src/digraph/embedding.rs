use thiserror::Error;

use super::{ColouredDigraph, Colour, Digraph, OrientedTree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("map has {got} entries for a tree of order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("host vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("host vertex {0} used twice")]
    NotInjective(Vertex),
    #[error("tree edge ({0},{1}) not mapped onto an edge of the stated colour")]
    MissingEdge(Vertex, Vertex),
    #[error("colour {0} not in the host palette")]
    BadColour(Colour),
}

/// Certificate for a monochromatic copy of `tree`: tree vertex `i` sits on
/// host vertex `host_vertices[i]` and every tree edge is a colour-`colour`
/// host edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub tree: OrientedTree,
    pub host_vertices: Vec<Vertex>,
    pub colour: Colour,
}

impl Embedding {
    pub fn new(tree: OrientedTree, host_vertices: Vec<Vertex>, colour: Colour) -> Self {
        Embedding { tree, host_vertices, colour }
    }

    pub fn verify(&self, host: &ColouredDigraph) -> Result<(), EmbeddingError> {
        if self.colour == 0 || self.colour as usize > host.colours() {
            return Err(EmbeddingError::BadColour(self.colour));
        }
        self.verify_in(host.class(self.colour))
    }

    /// Checks the map against a single colour class.
    pub fn verify_in(&self, g: &Digraph) -> Result<(), EmbeddingError> {
        check_map(&self.tree, &self.host_vertices, g)
    }
}

pub(crate) fn check_map(
    tree: &OrientedTree,
    map: &[Vertex],
    g: &Digraph,
) -> Result<(), EmbeddingError> {
    if map.len() != tree.order() {
        return Err(EmbeddingError::WrongLength { expected: tree.order(), got: map.len() });
    }
    let mut used = vec![false; g.order()];
    for &h in map {
        if h >= g.order() {
            return Err(EmbeddingError::OutOfRange(h));
        }
        if std::mem::replace(&mut used[h], true) {
            return Err(EmbeddingError::NotInjective(h));
        }
    }
    for &(a, b) in tree.edges() {
        if !g.has_edge(map[a], map[b]) {
            return Err(EmbeddingError::MissingEdge(a, b));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::HostKind;

    #[test]
    fn verify_catches_each_failure() {
        let host = ColouredDigraph::from_edges(3, 2, HostKind::General, [(0, 1, 1), (1, 2, 2)])
            .unwrap();
        let p = OrientedTree::directed_path(2);
        assert!(Embedding::new(p.clone(), vec![0, 1], 1).verify(&host).is_ok());
        assert_eq!(
            Embedding::new(p.clone(), vec![1, 2], 1).verify(&host),
            Err(EmbeddingError::MissingEdge(0, 1))
        );
        assert_eq!(
            Embedding::new(p.clone(), vec![1, 1], 2).verify(&host),
            Err(EmbeddingError::NotInjective(1))
        );
        assert_eq!(
            Embedding::new(p.clone(), vec![0], 1).verify(&host),
            Err(EmbeddingError::WrongLength { expected: 2, got: 1 })
        );
        assert_eq!(
            Embedding::new(p, vec![0, 1], 3).verify(&host),
            Err(EmbeddingError::BadColour(3))
        );
    }
}
