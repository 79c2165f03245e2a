//! Seeded random hosts and trees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{ColouredDigraph, Colour, Digraph, HostKind, OrientedTree};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each ordered pair becomes an edge with probability `p`.
pub fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_tournament(n: usize, rng: &mut impl Rng) -> Digraph {
    let mut g = Digraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            } else {
                g.add_edge(v, u);
            }
        }
    }
    g
}

/// Uniform orientation and uniform colour in `1..=k` per pair.
pub fn random_coloured_tournament(n: usize, k: usize, rng: &mut impl Rng) -> ColouredDigraph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let c = rng.gen_range(1..=k) as Colour;
            if rng.gen_bool(0.5) {
                edges.push((u, v, c));
            } else {
                edges.push((v, u, c));
            }
        }
    }
    ColouredDigraph::from_edges(n, k, HostKind::Tournament, edges).expect("valid tournament")
}

/// Complete digraph with colour 1 on each ordered pair with probability `p`,
/// colour 2 otherwise.
pub fn random_two_coloured_complete(n: usize, p: f64, rng: &mut impl Rng) -> ColouredDigraph {
    let mut colour = vec![0 as Colour; n * n];
    for c in colour.iter_mut() {
        *c = if rng.gen_bool(p) { 1 } else { 2 };
    }
    ColouredDigraph::complete_from_fn(n, 2, |u, v| colour[u * n + v]).expect("valid colouring")
}

/// Random recursive tree with independent edge directions, relabelled.
pub fn random_oriented_tree(n: usize, rng: &mut impl Rng) -> OrientedTree {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n)
        .map(|i| {
            let j = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (label[j], label[i])
            } else {
                (label[i], label[j])
            }
        })
        .collect();
    OrientedTree::new(n.max(1), edges, None).expect("recursive trees are trees")
}

/// Random recursive out-tree rooted at 0.
pub fn random_out_tree(n: usize, rng: &mut impl Rng) -> OrientedTree {
    let edges = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    OrientedTree::new(n.max(1), edges, Some(0)).expect("recursive trees are trees")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let mut r = seeded(1);
        for n in 1..20 {
            let t = random_oriented_tree(n, &mut r);
            assert_eq!(t.order(), n);
            assert_eq!(random_out_tree(n, &mut r).out_directed_root(), Some(0));
            let h = random_coloured_tournament(n, 3, &mut r);
            assert!(h.validate().is_ok());
            assert!(random_two_coloured_complete(n, 0.5, &mut r).validate().is_ok());
        }
    }
}
