//! Structural decompositions of oriented trees: cores, block decompositions of
//! paths, out-leaf counting, symmetric closures and alternating layers.

use std::collections::VecDeque;

use thiserror::Error;

use crate::digraph::{OrientedTree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("tree has no root")]
    NotRooted,
    #[error("the core is empty")]
    EmptyCore,
    #[error("underlying graph is not a path")]
    NotAPath,
    #[error("a single vertex has no blocks")]
    TrivialPath,
    #[error("tree is not out-directed")]
    NotOutDirected,
}

/// A subtree together with the original id of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtree {
    pub tree: OrientedTree,
    pub vertices: Vec<Vertex>,
}

/// Vertices with more than `|T| / k` descendants (counting themselves),
/// compared exactly as `k * desc > |T|`.
pub fn k_core(tree: &OrientedTree, k: usize) -> Result<Subtree, DecomposeError> {
    if k < 1 {
        return Err(DecomposeError::Parameter("k must be at least 1".into()));
    }
    let root = tree.root().ok_or(DecomposeError::NotRooted)?;
    let desc = tree.descendant_counts(root);
    let n = tree.order();
    // BFS order keeps the root first, so it stays vertex 0 of the core.
    let vertices: Vec<Vertex> = tree
        .bfs_order(root)
        .into_iter()
        .filter(|&v| (k as u128) * (desc[v] as u128) > n as u128)
        .collect();
    if vertices.is_empty() {
        return Err(DecomposeError::EmptyCore);
    }
    let core = tree.induced(&vertices).expect("ancestors of core vertices are in the core");
    Ok(Subtree { tree: core, vertices })
}

/// Maximal directed subpaths of an oriented path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Block orders, each at least 2.
    pub blocks: Vec<usize>,
    /// Whether the first edge points away from `walk[0]`.
    pub first_edge_forward: bool,
    /// Length of the longest directed subpath.
    pub l: usize,
    /// Path vertices from the lower-id end to the other.
    pub walk: Vec<Vertex>,
}

impl BlockDecomposition {
    /// Rebuilds the path with vertices numbered along the walk.
    pub fn to_path(&self) -> OrientedTree {
        OrientedTree::path_from_blocks(&self.blocks, self.first_edge_forward)
    }

    /// Edge directions along the walk.
    pub fn directions(&self) -> Vec<bool> {
        let mut dirs = Vec::new();
        let mut d = self.first_edge_forward;
        for &b in &self.blocks {
            dirs.extend(std::iter::repeat(d).take(b - 1));
            d = !d;
        }
        dirs
    }
}

/// Walk of a path from its lower-id endpoint.
pub fn path_walk(path: &OrientedTree) -> Result<Vec<Vertex>, DecomposeError> {
    if !path.is_path() {
        return Err(DecomposeError::NotAPath);
    }
    if path.order() == 1 {
        return Ok(vec![0]);
    }
    let start = (0..path.order()).find(|&v| path.degree(v) == 1).expect("paths have endpoints");
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some((next, _)) = path.neighbours(cur).find(|&(w, _)| w != prev) {
        walk.push(next);
        prev = cur;
        cur = next;
    }
    Ok(walk)
}

pub fn block_decomposition(path: &OrientedTree) -> Result<BlockDecomposition, DecomposeError> {
    let walk = path_walk(path)?;
    if walk.len() == 1 {
        return Err(DecomposeError::TrivialPath);
    }
    let dirs: Vec<bool> = walk.windows(2).map(|w| path.has_edge(w[0], w[1])).collect();
    let mut blocks = vec![2];
    for pair in dirs.windows(2) {
        if pair[0] == pair[1] {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(2);
        }
    }
    let l = blocks.iter().map(|b| b - 1).max().unwrap_or(0);
    Ok(BlockDecomposition { blocks, first_edge_forward: dirs[0], l, walk })
}

/// `l(P)`: the longest directed subpath of a path; 0 for a single vertex.
pub fn longest_directed_subpath(path: &OrientedTree) -> Result<usize, DecomposeError> {
    match block_decomposition(path) {
        Ok(b) => Ok(b.l),
        Err(DecomposeError::TrivialPath) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Leaves with out-degree 0. A single vertex counts as one.
pub fn out_leaves(tree: &OrientedTree) -> usize {
    (0..tree.order()).filter(|&v| tree.degree(v) <= 1 && tree.out_degree(v) == 0).count()
}

/// Checks `d_1 + ... + d_k - k + 1 <= a` for the distinct vertices in
/// `vertices`, where `d_i` are out-degrees and `a` the out-leaf count.
pub fn check_degree_leaf_bound(
    tree: &OrientedTree,
    vertices: &[Vertex],
) -> Result<bool, DecomposeError> {
    if tree.out_directed_root().is_none() {
        return Err(DecomposeError::NotOutDirected);
    }
    let mut seen = vec![false; tree.order()];
    let mut lhs: i64 = 1;
    for &v in vertices {
        if v >= tree.order() {
            return Err(DecomposeError::Parameter(format!("vertex {v} not in tree")));
        }
        if !std::mem::replace(&mut seen[v], true) {
            lhs += tree.out_degree(v) as i64 - 1;
        }
    }
    Ok(lhs <= out_leaves(tree) as i64)
}

/// Out-tree in which all vertices at equal depth share one out-degree.
pub fn is_symmetric(tree: &OrientedTree) -> bool {
    let Some(root) = tree.out_directed_root() else {
        return false;
    };
    let depth = tree.depths(root);
    let mut per_depth: Vec<Option<usize>> = vec![None; tree.order()];
    (0..tree.order()).all(|v| {
        let d = tree.out_degree(v);
        *per_depth[depth[v]].get_or_insert(d) == d
    })
}

/// Symmetric out-tree containing the input, with the containing map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricClosure {
    pub tree: OrientedTree,
    /// Out-degree shared by the vertices at each depth.
    pub depth_degrees: Vec<usize>,
    /// Where each input vertex sits inside `tree`.
    pub input_map: Vec<Vertex>,
}

/// Closes an out-directed tree: every vertex at depth `i` gets `d_i` children,
/// `d_i` being the largest out-degree at depth `i` in the input.
pub fn symmetric_closure(tree: &OrientedTree) -> Result<SymmetricClosure, DecomposeError> {
    let root = tree.out_directed_root().ok_or(DecomposeError::NotOutDirected)?;
    let depth = tree.depths(root);
    let height = depth.iter().copied().max().unwrap_or(0);
    let mut depth_degrees = vec![0; height + 1];
    for v in 0..tree.order() {
        depth_degrees[depth[v]] = depth_degrees[depth[v]].max(tree.out_degree(v));
    }
    while depth_degrees.last() == Some(&0) {
        depth_degrees.pop();
    }

    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next_id = 1;
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new()];
    for &d in &depth_degrees {
        let mut next_level = Vec::with_capacity(level.len() * d);
        for &u in &level {
            for _ in 0..d {
                edges.push((u, next_id));
                children[u].push(next_id);
                children.push(Vec::new());
                next_level.push(next_id);
                next_id += 1;
            }
        }
        level = next_level;
    }
    let closure = OrientedTree::new(next_id, edges, Some(0)).expect("construction yields a tree");

    // Greedy containment: children go to distinct children of the image.
    let mut input_map = vec![usize::MAX; tree.order()];
    input_map[root] = 0;
    for v in tree.bfs_order(root) {
        for (i, &c) in tree.out_neighbours(v).iter().enumerate() {
            input_map[c] = children[input_map[v]][i];
        }
    }
    Ok(SymmetricClosure { tree: closure, depth_degrees, input_map })
}

/// Alternating in/out layering of a tree around a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub root: Vertex,
    /// `layers[0]` is everything out-reachable from the root; even layers are
    /// grown along out-edges, odd layers along in-edges.
    pub layers: Vec<Vec<Vertex>>,
}

impl LayerDecomposition {
    /// Index of the last layer.
    pub fn t(&self) -> usize {
        self.layers.len() - 1
    }

    /// Layer index of every vertex.
    pub fn layer_of(&self, order: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; order];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                of[v] = i;
            }
        }
        of
    }
}

pub fn alternating_layers(tree: &OrientedTree, root: Vertex) -> LayerDecomposition {
    let n = tree.order();
    let mut assigned = vec![false; n];
    let grow = |seeds: &[Vertex], forward: bool, assigned: &mut Vec<bool>| -> Vec<Vertex> {
        let mut layer = Vec::new();
        let mut queue: VecDeque<Vertex> = seeds.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            let next = if forward { tree.out_neighbours(u) } else { tree.in_neighbours(u) };
            for &w in next {
                if !assigned[w] {
                    assigned[w] = true;
                    layer.push(w);
                    queue.push_back(w);
                }
            }
        }
        layer
    };

    assigned[root] = true;
    let mut first = vec![root];
    first.extend(grow(&[root], true, &mut assigned));
    let mut layers = vec![first];
    loop {
        let i = layers.len();
        let layer = grow(&layers[i - 1], i % 2 == 0, &mut assigned);
        if layer.is_empty() {
            break;
        }
        layers.push(layer);
    }
    for layer in &mut layers {
        layer.sort_unstable();
    }
    LayerDecomposition { root, layers }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_of_star_is_root() {
        let core = k_core(&OrientedTree::out_star(4), 2).unwrap();
        assert_eq!(core.vertices, vec![0]);
    }

    #[test]
    fn core_of_path_is_prefix() {
        let core = k_core(&OrientedTree::directed_path(4), 2).unwrap();
        assert_eq!(core.vertices, vec![0, 1]);
        assert_eq!(core.tree.root(), Some(0));
    }

    #[test]
    fn large_k_keeps_everything() {
        let t = OrientedTree::path_from_blocks(&[3, 2, 2], false).with_root(2).unwrap();
        let core = k_core(&t, 2 * t.order()).unwrap();
        assert_eq!(core.tree.order(), t.order());
    }

    #[test]
    fn core_errors() {
        assert!(matches!(k_core(&OrientedTree::out_star(3), 0), Err(DecomposeError::Parameter(_))));
        let unrooted = OrientedTree::new(2, vec![(0, 1)], None).unwrap();
        assert_eq!(k_core(&unrooted, 2), Err(DecomposeError::NotRooted));
        assert_eq!(k_core(&OrientedTree::out_star(3), 1), Err(DecomposeError::EmptyCore));
    }

    #[test]
    fn blocks_of_figure_path() {
        let p = OrientedTree::path_from_blocks(&[4, 3, 4], true);
        let b = block_decomposition(&p).unwrap();
        assert_eq!(b.blocks, vec![4, 3, 4]);
        assert_eq!(b.l, 3);
    }

    #[test]
    fn blocks_of_directed_and_alternating() {
        let b = block_decomposition(&OrientedTree::directed_path(6)).unwrap();
        assert_eq!((b.blocks.clone(), b.l), (vec![6], 5));
        let alt = OrientedTree::oriented_path(&[true, false, true, false]);
        let b = block_decomposition(&alt).unwrap();
        assert_eq!((b.blocks.clone(), b.l), (vec![2, 2, 2, 2], 1));
        assert_eq!(block_decomposition(&OrientedTree::out_star(4)), Err(DecomposeError::NotAPath));
        assert_eq!(
            block_decomposition(&OrientedTree::single_vertex()),
            Err(DecomposeError::TrivialPath)
        );
    }

    #[test]
    fn out_leaf_counts() {
        assert_eq!(out_leaves(&OrientedTree::directed_path(5)), 1);
        assert_eq!(out_leaves(&OrientedTree::out_star(5)), 4);
        assert_eq!(check_degree_leaf_bound(&OrientedTree::out_star(5), &[0]), Ok(true));
        assert_eq!(
            check_degree_leaf_bound(&OrientedTree::in_star(3), &[0]),
            Err(DecomposeError::NotOutDirected)
        );
    }

    #[test]
    fn closure_examples() {
        let p = OrientedTree::directed_path(4);
        assert_eq!(symmetric_closure(&p).unwrap().tree, p);
        let s = OrientedTree::out_star(4);
        assert_eq!(symmetric_closure(&s).unwrap().tree, s);
        let t = OrientedTree::new(4, vec![(0, 1), (0, 2), (1, 3)], Some(0)).unwrap();
        let c = symmetric_closure(&t).unwrap();
        assert_eq!(c.tree.order(), 5);
        assert_eq!(c.depth_degrees, vec![2, 1]);
        assert!(is_symmetric(&c.tree));
        assert!(!is_symmetric(&t));
    }

    #[test]
    fn layers_examples() {
        let out = OrientedTree::out_star(4);
        assert_eq!(alternating_layers(&out, 0).layers, vec![vec![0, 1, 2, 3]]);
        let edge = OrientedTree::directed_path(2);
        assert_eq!(alternating_layers(&edge, 1).layers, vec![vec![1], vec![0]]);
        // a -> b <- c with a = 0, b = 1, c = 2
        let v = OrientedTree::oriented_path(&[true, false]);
        assert_eq!(alternating_layers(&v, 0).layers, vec![vec![0, 1], vec![2]]);
        let single = alternating_layers(&OrientedTree::single_vertex(), 0);
        assert_eq!(single.t(), 0);
    }
}
