//! Out-tree with few out-leaves, or an independent set.

use fixedbitset::FixedBitSet;

use super::constants::tree_vs_independent;
use super::ghrv::{ghrv_dichotomy, GhrvOutcome};
use super::EngineError;
use crate::decompose::{out_leaves, symmetric_closure, DecomposeError};
use crate::digraph::embedding::check_map;
use crate::digraph::{Digraph, OrientedTree, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeOrIndependent {
    /// Host vertex of each tree vertex.
    Embedded(Vec<Vertex>),
    /// Sorted independent set of size exactly `m`.
    Independent(Vec<Vertex>),
}

/// Finds the out-directed `tree` in `g` or an independent set of size `m`.
///
/// The tree is first replaced by its symmetric closure `T'` (with `l'`
/// out-leaves), and the host must have at least `c_{l'} |T'| m` vertices.
pub fn tree_or_independent(
    g: &Digraph,
    tree: &OrientedTree,
    m: usize,
) -> Result<TreeOrIndependent, EngineError> {
    if m == 0 {
        return Err(EngineError::Parameter("m must be positive".into()));
    }
    let closure = symmetric_closure(tree)?;
    let l = out_leaves(&closure.tree);
    let need = tree_vs_independent(l) * closure.tree.order() * m;
    if g.order() < need {
        return Err(EngineError::Parameter(format!(
            "host order {} is below c_l |T| m = {need}",
            g.order()
        )));
    }
    match symmetric(g, &closure.tree, 0, m)? {
        TreeOrIndependent::Embedded(map) => {
            let map: Vec<Vertex> = closure.input_map.iter().map(|&c| map[c]).collect();
            check_map(tree, &map, g).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
            Ok(TreeOrIndependent::Embedded(map))
        }
        TreeOrIndependent::Independent(mut set) => {
            set.truncate(m);
            Ok(TreeOrIndependent::Independent(set))
        }
    }
}

/// Induction on the number of out-leaves for a symmetric out-tree.
fn symmetric(
    g: &Digraph,
    tree: &OrientedTree,
    root: Vertex,
    m: usize,
) -> Result<TreeOrIndependent, EngineError> {
    let l = out_leaves(tree);
    if l == 1 {
        return directed_path_case(g, tree, root, m);
    }

    let depth = tree.depths(root);
    let u = (0..tree.order())
        .filter(|&v| tree.out_degree(v) >= 2)
        .min_by_key(|&v| (depth[v], v))
        .ok_or(DecomposeError::NotOutDirected)?;
    let mut kids = tree.out_neighbours(u).to_vec();
    kids.sort_unstable();
    let v1 = kids[0];

    // T' keeps the root path and only the first child's subtree below u.
    let mut dropped = vec![false; tree.order()];
    for &c in &kids[1..] {
        for w in out_subtree(tree, c) {
            dropped[w] = true;
        }
    }
    let keep: Vec<Vertex> = tree.bfs_order(root).into_iter().filter(|&v| !dropped[v]).collect();
    let small = tree.induced(&keep).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
    let mut pos = vec![usize::MAX; tree.order()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let need = tree_vs_independent(out_leaves(&small)) * small.order() * m;

    // Maximal family of disjoint copies of T'.
    let mut copies: Vec<Vec<Vertex>> = Vec::new();
    let mut remaining: Vec<Vertex> = (0..g.order()).collect();
    while remaining.len() >= need {
        let sub = g.induced(&remaining);
        match symmetric(&sub, &small, 0, m)? {
            TreeOrIndependent::Independent(set) => {
                let set = set.into_iter().map(|i| remaining[i]).collect();
                return Ok(TreeOrIndependent::Independent(set));
            }
            TreeOrIndependent::Embedded(map) => {
                let copy: Vec<Vertex> = map.iter().map(|&i| remaining[i]).collect();
                let mut taken = FixedBitSet::with_capacity(g.order());
                taken.extend(copy.iter().copied());
                remaining.retain(|&v| !taken.contains(v));
                copies.push(copy);
            }
        }
    }

    let us: Vec<Vertex> = copies.iter().map(|c| c[pos[v1]]).collect();
    let gu = g.induced(&us);
    if let Some(i0) = (0..us.len()).find(|&i| gu.out_degree(i) >= l) {
        let targets: Vec<usize> = gu.out_neighbours(i0).take(kids.len()).collect();
        let mut map = vec![usize::MAX; tree.order()];
        // root .. u shifted one step down copy i0, so u lands on its v1 image
        let parent = tree.parents(root);
        let mut chain = vec![u];
        while let Some(p) = parent[*chain.last().expect("non-empty")] {
            chain.push(p);
        }
        chain.reverse();
        chain.push(v1);
        for w in chain.windows(2) {
            map[w[0]] = copies[i0][pos[w[1]]];
        }
        for (&c, &target) in kids.iter().zip(&targets) {
            for (x, y) in subtree_isomorphism(tree, c, v1) {
                map[x] = copies[target][pos[y]];
            }
        }
        check_map(tree, &map, g).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
        return Ok(TreeOrIndependent::Embedded(map));
    }

    // Every vertex of G[U] has out-degree < l, so the underlying graph is
    // (2l - 2)-degenerate and 2l - 1 colours suffice.
    let colours = degeneracy_colouring(&gu);
    let used = colours.iter().copied().max().map_or(0, |c| c + 1);
    if used > 2 * l - 1 {
        return Err(EngineError::GuaranteeViolated(format!("{used} colours for G[U]")));
    }
    let best = (0..used)
        .max_by_key(|&c| (colours.iter().filter(|&&x| x == c).count(), std::cmp::Reverse(c)))
        .ok_or_else(|| EngineError::GuaranteeViolated("empty family of copies".into()))?;
    let mut set: Vec<Vertex> = (0..us.len()).filter(|&i| colours[i] == best).map(|i| us[i]).collect();
    set.sort_unstable();
    if set.len() < m {
        return Err(EngineError::GuaranteeViolated(format!(
            "independent set of size {} below {m}",
            set.len()
        )));
    }
    Ok(TreeOrIndependent::Independent(set))
}

fn directed_path_case(
    g: &Digraph,
    tree: &OrientedTree,
    root: Vertex,
    m: usize,
) -> Result<TreeOrIndependent, EngineError> {
    let mut walk = vec![root];
    while let Some(&next) = tree.out_neighbours(*walk.last().expect("non-empty")).first() {
        walk.push(next);
    }
    let length = walk.len() - 1;
    match ghrv_dichotomy(g, length) {
        GhrvOutcome::Path(p) => {
            let mut map = vec![usize::MAX; tree.order()];
            for (&t, &h) in walk.iter().zip(&p) {
                map[t] = h;
            }
            Ok(TreeOrIndependent::Embedded(map))
        }
        GhrvOutcome::Independent(set) if set.len() >= m => Ok(TreeOrIndependent::Independent(set)),
        GhrvOutcome::Independent(set) => Err(EngineError::GuaranteeViolated(format!(
            "independent set of size {} below {m}",
            set.len()
        ))),
    }
}

/// Vertices of the out-subtree rooted at `v`.
fn out_subtree(tree: &OrientedTree, v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    let mut i = 0;
    while i < out.len() {
        out.extend_from_slice(tree.out_neighbours(out[i]));
        i += 1;
    }
    out
}

/// Pairs the out-subtrees at `a` and `b`, which are isomorphic in a
/// symmetric tree when `a` and `b` have the same depth.
fn subtree_isomorphism(tree: &OrientedTree, a: Vertex, b: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut pairs = vec![(a, b)];
    let mut i = 0;
    while i < pairs.len() {
        let (x, y) = pairs[i];
        let mut xs = tree.out_neighbours(x).to_vec();
        let mut ys = tree.out_neighbours(y).to_vec();
        xs.sort_unstable();
        ys.sort_unstable();
        debug_assert_eq!(xs.len(), ys.len());
        pairs.extend(xs.into_iter().zip(ys));
        i += 1;
    }
    pairs
}

/// Greedy colouring along a reversed smallest-last ordering of the
/// underlying undirected graph; uses at most degeneracy + 1 colours.
pub(crate) fn degeneracy_colouring(g: &Digraph) -> Vec<usize> {
    let n = g.order();
    let nbrs: Vec<Vec<Vertex>> =
        (0..n).map(|v| (0..n).filter(|&w| w != v && g.adjacent(v, w)).collect()).collect();
    let mut deg: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        removed[v] = true;
        order.push(v);
        for &w in &nbrs[v] {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    let mut colour = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let taken: Vec<usize> = nbrs[v].iter().map(|&w| colour[w]).filter(|&c| c != usize::MAX).collect();
        colour[v] = (0..).find(|c| !taken.contains(c)).expect("unbounded");
    }
    colour
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::rooted_out_trees;
    use crate::engine::testutil::rng;
    use rand::Rng;

    fn check(g: &Digraph, tree: &OrientedTree, m: usize) -> TreeOrIndependent {
        let out = tree_or_independent(g, tree, m).unwrap();
        match &out {
            TreeOrIndependent::Embedded(map) => check_map(tree, map, g).unwrap(),
            TreeOrIndependent::Independent(s) => {
                assert_eq!(s.len(), m);
                assert!(g.is_independent(s));
            }
        }
        out
    }

    fn required(tree: &OrientedTree, m: usize) -> usize {
        let c = symmetric_closure(tree).unwrap();
        tree_vs_independent(out_leaves(&c.tree)) * c.tree.order() * m
    }

    #[test]
    fn trivial_hosts() {
        for t in rooted_out_trees(4) {
            let n = required(&t, 2);
            let tt = Digraph::transitive_tournament(n);
            assert!(matches!(check(&tt, &t, 2), TreeOrIndependent::Embedded(_)));
            let empty = Digraph::empty(n);
            assert!(matches!(check(&empty, &t, 2), TreeOrIndependent::Independent(_)));
        }
    }

    #[test]
    fn random_sparse_hosts() {
        let mut r = rng(12);
        for t in rooted_out_trees(5) {
            for m in 1..=3 {
                let n = required(&t, m);
                if n > 200 {
                    continue;
                }
                for _ in 0..3 {
                    let p = r.gen_range(0.0..0.2);
                    let mut g = Digraph::empty(n);
                    for u in 0..n {
                        for v in 0..n {
                            if u != v && r.gen_bool(p) {
                                g.add_edge(u, v);
                            }
                        }
                    }
                    check(&g, &t, m);
                }
            }
        }
    }

    #[test]
    fn disjoint_transitive_blocks() {
        // blocks of order |T| - 1 hold no copy of the path
        let t = OrientedTree::directed_path(4);
        let (blocks, m) = (6, 3);
        let mut g = Digraph::empty(3 * blocks);
        for b in 0..blocks {
            for i in 0..3 {
                for j in i + 1..3 {
                    g.add_edge(3 * b + i, 3 * b + j);
                }
            }
        }
        match check(&g, &t, m) {
            TreeOrIndependent::Independent(s) => {
                let comps: std::collections::BTreeSet<usize> = s.iter().map(|v| v / 3).collect();
                assert_eq!(comps.len(), m);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precondition_gate() {
        let t = OrientedTree::out_star(3);
        let n = required(&t, 2);
        assert_eq!(n, 5 * 3 * 2);
        assert!(tree_or_independent(&Digraph::empty(n - 1), &t, 2).is_err());
        assert!(tree_or_independent(&Digraph::empty(n), &OrientedTree::in_star(3), 2).is_err());
    }

    #[test]
    fn degeneracy_bound() {
        let mut r = rng(13);
        for _ in 0..50 {
            let n = r.gen_range(1..30);
            let d = r.gen_range(1..4);
            let mut g = Digraph::empty(n);
            for u in 0..n {
                for _ in 0..d {
                    let v = r.gen_range(0..n);
                    if v != u && !g.adjacent(u, v) {
                        g.add_edge(u, v);
                    }
                }
            }
            let col = degeneracy_colouring(&g);
            assert!(col.iter().all(|&c| c < 2 * d + 1));
            for (u, v) in g.edges() {
                assert_ne!(col[u], col[v]);
            }
        }
    }
}
