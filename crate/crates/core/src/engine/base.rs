use fixedbitset::FixedBitSet;

use crate::digraph::{find_embedding, Digraph, OrientedTree, Vertex};

/// Embeds a tree in one colour class, within an allowed vertex set.
pub trait OneColourEmbedder {
    /// Host vertex of each tree vertex, all inside `allowed`.
    fn embed(&self, g: &Digraph, allowed: &FixedBitSet, tree: &OrientedTree) -> Option<Vec<Vertex>>;

    /// Order of allowed set from which `embed` is guaranteed to succeed in the
    /// setting the embedder is used in, if such a bound is known.
    fn required_host_order(&self, tree: &OrientedTree) -> Option<usize>;
}

/// Greedy embedding that prefers candidates of high degree towards the
/// still-unplaced part of the tree, then exhaustive backtracking.
///
/// It finds a copy whenever one exists; the optional requirement records a
/// bound under which a copy is known to exist (e.g. `3|T| - 3` when `g` is a
/// tournament).
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactEmbedder {
    requirement: Option<fn(&OrientedTree) -> usize>,
}

impl ExactEmbedder {
    pub fn new() -> Self {
        ExactEmbedder { requirement: None }
    }

    pub fn with_requirement(requirement: fn(&OrientedTree) -> usize) -> Self {
        ExactEmbedder { requirement: Some(requirement) }
    }

    /// Guarantee for tournament colour classes: every tournament on
    /// `3|T| - 3` vertices contains every oriented tree `T`.
    pub fn for_tournaments() -> Self {
        Self::with_requirement(|t| (3 * t.order()).saturating_sub(3).max(t.order()))
    }
}

impl OneColourEmbedder for ExactEmbedder {
    fn embed(&self, g: &Digraph, allowed: &FixedBitSet, tree: &OrientedTree) -> Option<Vec<Vertex>> {
        greedy(g, allowed, tree).or_else(|| find_embedding(g, Some(allowed), tree))
    }

    fn required_host_order(&self, tree: &OrientedTree) -> Option<usize> {
        self.requirement.map(|f| f(tree))
    }
}

/// Places tree vertices in BFS order from vertex 0; the root takes the
/// allowed vertex of largest total degree, every later vertex the candidate
/// with the most room in the direction its own children need.
fn greedy(g: &Digraph, allowed: &FixedBitSet, tree: &OrientedTree) -> Option<Vec<Vertex>> {
    let n = g.order();
    let mut free = allowed.clone();
    free.grow(n);
    if tree.order() > free.count_ones(..) {
        return None;
    }
    let order = tree.bfs_order(0);
    let parent = tree.parents(0);
    let score = |v: Vertex, h: Vertex, free: &FixedBitSet| -> usize {
        let outs = g.out_row(h).intersection_count(free);
        let ins = g.in_row(h).intersection_count(free);
        let need_out = tree.out_degree(v);
        let need_in = tree.in_degree(v);
        match (need_out > 0, need_in > 0) {
            (true, false) => outs,
            (false, true) => ins,
            _ => outs.min(ins),
        }
    };
    let mut map = vec![usize::MAX; tree.order()];
    for &v in &order {
        let cand: Vec<Vertex> = match parent[v] {
            None => free.ones().collect(),
            Some(p) => {
                let row = if tree.has_edge(p, v) { g.out_row(map[p]) } else { g.in_row(map[p]) };
                row.ones().filter(|&h| free.contains(h)).collect()
            }
        };
        let best = cand.into_iter().max_by_key(|&h| (score(v, h, &free), std::cmp::Reverse(h)))?;
        map[v] = best;
        free.set(best, false);
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::oriented_trees;
    use crate::digraph::embedding::check_map;
    use crate::digraph::has_copy;
    use crate::engine::testutil::{random_tournament, rng};
    use rand::Rng;

    #[test]
    fn agrees_with_oracle() {
        let mut r = rng(10);
        let e = ExactEmbedder::new();
        for _ in 0..60 {
            let n = r.gen_range(1..9);
            let mut g = Digraph::empty(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && r.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            for t in oriented_trees(4) {
                let got = e.embed(&g, &all, &t);
                assert_eq!(got.is_some(), has_copy(&g, &t));
                if let Some(map) = got {
                    check_map(&t, &map, &g).unwrap();
                }
            }
        }
    }

    #[test]
    fn respects_allowed_set() {
        let mut r = rng(11);
        let g = random_tournament(12, &mut r);
        let mut allowed = FixedBitSet::with_capacity(12);
        allowed.extend([1, 3, 5, 7, 9, 11]);
        let e = ExactEmbedder::for_tournaments();
        for t in oriented_trees(3) {
            assert_eq!(e.required_host_order(&t), Some(6));
            let map = e.embed(&g, &allowed, &t).unwrap();
            assert!(map.iter().all(|&h| allowed.contains(h)));
        }
    }
}
