//! Layer-by-layer embedding of an oriented tree across a minimum-degree pair.

use fixedbitset::FixedBitSet;

use super::base::OneColourEmbedder;
use super::mindegree::MindegreePair;
use super::EngineError;
use crate::decompose::alternating_layers;
use crate::digraph::{ColouredDigraph, Colour, Embedding, OrientedTree, Vertex};

#[derive(Clone, Debug)]
pub struct LayeredOutcome {
    /// Verified copy of the tree, `None` when a piece could not be placed.
    pub embedding: Option<Embedding>,
    /// Whether the pair threshold covers `|T|` plus the subembedder's
    /// requirement for every piece.
    pub guaranteed: bool,
}

/// Embeds `tree` in colour `c` using the alternating layers around `root`.
///
/// The out-tree `U_0` goes anywhere in `Y`. Each component of an even layer
/// hangs below a vertex of the previous layer (which sits in `X`) and is
/// placed among that vertex's unused out-neighbours in `Y`; components of odd
/// layers go among the unused in-neighbours in `X` of their parent in `Y`.
pub fn layered_embed(
    host: &ColouredDigraph,
    c: Colour,
    pair: &MindegreePair,
    tree: &OrientedTree,
    root: Vertex,
    sub: &dyn OneColourEmbedder,
) -> Result<LayeredOutcome, EngineError> {
    if c == 0 || c as usize > host.colours() {
        return Err(EngineError::Parameter(format!("colour {c} out of range")));
    }
    if root >= tree.order() {
        return Err(EngineError::Parameter(format!("root {root} out of range")));
    }
    let g = host.class(c);
    if !pair.check(g) {
        return Err(EngineError::Parameter("not a minimum-degree pair of the colour class".into()));
    }
    let n = host.order();
    let layers = alternating_layers(tree, root);
    let layer_of = layers.layer_of(tree.order());

    // Pieces: (layer, vertices with the attaching vertex first, parent).
    let mut pieces: Vec<(usize, Vec<Vertex>, Option<Vertex>)> = vec![(0, layers.layers[0].clone(), None)];
    for (i, layer) in layers.layers.iter().enumerate().skip(1) {
        let mut seen = vec![false; tree.order()];
        for &s in layer {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut j = 0;
            while j < comp.len() {
                for (w, _) in tree.neighbours(comp[j]) {
                    if layer_of[w] == i && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                j += 1;
            }
            let (attach, parent) = comp
                .iter()
                .find_map(|&v| tree.neighbours(v).find(|&(w, _)| layer_of[w] == i - 1).map(|(w, _)| (v, w)))
                .expect("every component touches the previous layer");
            comp.retain(|&v| v != attach);
            comp.insert(0, attach);
            pieces.push((i, comp, Some(parent)));
        }
    }

    let mut subtrees = Vec::with_capacity(pieces.len());
    let mut guaranteed = true;
    for (_, verts, _) in &pieces {
        let t = tree.induced(verts).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
        match sub.required_host_order(&t) {
            Some(req) if pair.threshold >= tree.order() + req => {}
            _ => guaranteed = false,
        }
        subtrees.push(t);
    }

    let xs = pair.x_set(n);
    let ys = pair.y_set(n);
    let mut used = FixedBitSet::with_capacity(n);
    let mut map = vec![usize::MAX; tree.order()];
    for ((layer, verts, parent), t) in pieces.iter().zip(&subtrees) {
        let mut allowed = match parent {
            None => ys.clone(),
            Some(p) if layer % 2 == 0 => {
                let mut a = g.out_row(map[*p]).clone();
                a.intersect_with(&ys);
                a
            }
            Some(p) => {
                let mut a = g.in_row(map[*p]).clone();
                a.intersect_with(&xs);
                a
            }
        };
        allowed.difference_with(&used);
        let Some(local) = sub.embed(g, &allowed, t) else {
            if guaranteed {
                return Err(EngineError::GuaranteeViolated(format!("layer {layer} piece not placed")));
            }
            return Ok(LayeredOutcome { embedding: None, guaranteed });
        };
        for (i, &v) in verts.iter().enumerate() {
            map[v] = local[i];
            used.insert(local[i]);
        }
    }
    let emb = Embedding::new(tree.clone(), map, c);
    emb.verify(host).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
    Ok(LayeredOutcome { embedding: Some(emb), guaranteed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::oriented_trees;
    use crate::engine::base::ExactEmbedder;
    use crate::engine::mindegree::find_mindegree_pair;
    use crate::engine::testutil::rng;
    use crate::engine::Rational;
    use rand::Rng;

    fn mono(n: usize) -> ColouredDigraph {
        ColouredDigraph::complete_from_fn(n, 1, |_, _| 1).unwrap()
    }

    fn half_pair(n: usize) -> MindegreePair {
        MindegreePair { x: (0..n / 2).collect(), y: (n / 2..n).collect(), threshold: n / 2, colour: Some(1) }
    }

    #[test]
    fn out_tree_is_one_piece_in_y() {
        let host = mono(20);
        let pair = half_pair(20);
        let e = ExactEmbedder::with_requirement(|t| t.order());
        let star = OrientedTree::out_star(4);
        let out = layered_embed(&host, 1, &pair, &star, 0, &e).unwrap();
        let emb = out.embedding.unwrap();
        assert!(emb.host_vertices.iter().all(|&h| h >= 10));
        assert!(out.guaranteed);
    }

    #[test]
    fn two_layers_and_single_vertex() {
        let host = mono(12);
        let pair = half_pair(12);
        let e = ExactEmbedder::with_requirement(|t| t.order());
        // a -> b <- c rooted at a
        let t = OrientedTree::new(3, vec![(0, 1), (2, 1)], None).unwrap();
        let emb = layered_embed(&host, 1, &pair, &t, 0, &e).unwrap().embedding.unwrap();
        assert!(emb.host_vertices[2] < 6);
        let one = layered_embed(&host, 1, &pair, &OrientedTree::single_vertex(), 0, &e).unwrap();
        assert_eq!(one.embedding.unwrap().host_vertices, vec![6]);
    }

    #[test]
    fn random_dense_colour_class() {
        let mut r = rng(23);
        let e = ExactEmbedder::new();
        for _ in 0..30 {
            let n = 40;
            let host = ColouredDigraph::complete_from_fn(n, 2, |_, _| if r.gen_bool(0.85) { 1 } else { 2 }).unwrap();
            let pair = find_mindegree_pair(host.class(1), Rational::new(3, 2)).unwrap();
            let pair = MindegreePair { colour: Some(1), ..pair };
            for t in oriented_trees(4) {
                for root in 0..t.order() {
                    let out = layered_embed(&host, 1, &pair, &t, root, &e).unwrap();
                    assert!(!out.guaranteed);
                    if let Some(emb) = out.embedding {
                        emb.verify(&host).unwrap();
                    }
                }
            }
        }
    }
}
