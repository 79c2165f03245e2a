use std::collections::VecDeque;

use thiserror::Error;

use super::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {0}-{1} given twice (bidirected or duplicate)")]
    RepeatedPair(Vertex, Vertex),
    #[error("a tree on {order} vertices has {expected} edges, got {got}")]
    EdgeCount { order: usize, expected: usize, got: usize },
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("root {0} is not a vertex")]
    BadRoot(Vertex),
}

/// An acyclic orientation of an undirected tree, optionally rooted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedTree {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
    root: Option<Vertex>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl OrientedTree {
    pub fn new(
        order: usize,
        edges: Vec<(Vertex, Vertex)>,
        root: Option<Vertex>,
    ) -> Result<Self, TreeError> {
        if order == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != order - 1 {
            return Err(TreeError::EdgeCount { order, expected: order - 1, got: edges.len() });
        }
        if let Some(r) = root {
            if r >= order {
                return Err(TreeError::BadRoot(r));
            }
        }
        let mut out_adj = vec![Vec::new(); order];
        let mut in_adj = vec![Vec::new(); order];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= order {
                    return Err(TreeError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(TreeError::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::RepeatedPair(u, v));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        let tree = OrientedTree { order, edges, root, out_adj, in_adj };
        if tree.bfs_order(0).len() != order {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    pub fn single_vertex() -> Self {
        OrientedTree::new(1, Vec::new(), Some(0)).expect("valid")
    }

    /// Directed path `0 -> 1 -> ... -> n-1`, rooted at its source.
    pub fn directed_path(order: usize) -> Self {
        let edges = (1..order).map(|v| (v - 1, v)).collect();
        OrientedTree::new(order, edges, Some(0)).expect("valid path")
    }

    /// Root `0` with `order - 1` out-children.
    pub fn out_star(order: usize) -> Self {
        let edges = (1..order).map(|v| (0, v)).collect();
        OrientedTree::new(order, edges, Some(0)).expect("valid star")
    }

    /// Root `0` with `order - 1` in-children.
    pub fn in_star(order: usize) -> Self {
        let edges = (1..order).map(|v| (v, 0)).collect();
        OrientedTree::new(order, edges, Some(0)).expect("valid star")
    }

    /// Oriented path on `0..n` whose edge `i` joins `i` and `i + 1`, forward
    /// when `forward[i]`.
    pub fn oriented_path(forward: &[bool]) -> Self {
        let edges = forward
            .iter()
            .enumerate()
            .map(|(i, &f)| if f { (i, i + 1) } else { (i + 1, i) })
            .collect();
        OrientedTree::new(forward.len() + 1, edges, Some(0)).expect("valid path")
    }

    /// The path with maximal directed blocks of the given orders, the first
    /// block directed away from vertex 0 when `first_forward`.
    pub fn path_from_blocks(blocks: &[usize], first_forward: bool) -> Self {
        let mut forward = Vec::new();
        let mut dir = first_forward;
        for &b in blocks {
            assert!(b >= 2, "blocks have order at least 2");
            forward.extend(std::iter::repeat(dir).take(b - 1));
            dir = !dir;
        }
        OrientedTree::oriented_path(&forward)
    }

    pub fn with_root(mut self, root: Vertex) -> Result<Self, TreeError> {
        if root >= self.order {
            return Err(TreeError::BadRoot(root));
        }
        self.root = Some(root);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.order - 1
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn root(&self) -> Option<Vertex> {
        self.root
    }

    pub fn out_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    #[inline]
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    #[inline]
    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    /// Underlying neighbours with the orientation: `(w, true)` for `v -> w`.
    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = (Vertex, bool)> + '_ {
        self.out_adj[v]
            .iter()
            .map(|&w| (w, true))
            .chain(self.in_adj[v].iter().map(|&w| (w, false)))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Leaves of the underlying tree. A single vertex counts as one leaf.
    pub fn leaves(&self) -> Vec<Vertex> {
        if self.order == 1 {
            return vec![0];
        }
        (0..self.order).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    pub fn is_path(&self) -> bool {
        (0..self.order).all(|v| self.degree(v) <= 2)
    }

    /// The root `r` such that every edge points away from `r`, if any.
    pub fn out_directed_root(&self) -> Option<Vertex> {
        let sources: Vec<_> = (0..self.order).filter(|&v| self.in_degree(v) == 0).collect();
        match sources.as_slice() {
            [r] if (0..self.order).all(|v| v == *r || self.in_degree(v) == 1) => Some(*r),
            _ => None,
        }
    }

    pub fn in_directed_root(&self) -> Option<Vertex> {
        let sinks: Vec<_> = (0..self.order).filter(|&v| self.out_degree(v) == 0).collect();
        match sinks.as_slice() {
            [r] if (0..self.order).all(|v| v == *r || self.out_degree(v) == 1) => Some(*r),
            _ => None,
        }
    }

    /// Breadth-first order of the underlying tree from `start`.
    pub fn bfs_order(&self, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order];
        let mut order = Vec::with_capacity(self.order);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for (w, _) in self.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Parent of every vertex when the underlying tree is hung from `root`.
    pub fn parents(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.order];
        for u in self.bfs_order(root) {
            for (w, _) in self.neighbours(u) {
                if w != root && parent[w].is_none() && parent[u] != Some(w) {
                    parent[w] = Some(u);
                }
            }
        }
        parent
    }

    /// Children lists when hung from `root`, in increasing id order.
    pub fn children(&self, root: Vertex) -> Vec<Vec<Vertex>> {
        let parent = self.parents(root);
        let mut children = vec![Vec::new(); self.order];
        for v in 0..self.order {
            if let Some(p) = parent[v] {
                children[p].push(v);
            }
        }
        children
    }

    pub fn depths(&self, root: Vertex) -> Vec<usize> {
        let parent = self.parents(root);
        let mut depth = vec![0; self.order];
        for v in self.bfs_order(root) {
            if let Some(p) = parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// Size of the subtree below each vertex, the vertex included.
    pub fn descendant_counts(&self, root: Vertex) -> Vec<usize> {
        let parent = self.parents(root);
        let mut count = vec![1; self.order];
        for v in self.bfs_order(root).into_iter().rev() {
            if let Some(p) = parent[v] {
                count[p] += count[v];
            }
        }
        count
    }

    /// A vertex minimising the largest component left after its removal.
    pub fn centroid(&self) -> Vertex {
        let desc = self.descendant_counts(0);
        let parent = self.parents(0);
        let children = self.children(0);
        (0..self.order)
            .min_by_key(|&v| {
                let up = if parent[v].is_some() { self.order - desc[v] } else { 0 };
                children[v].iter().map(|&c| desc[c]).max().unwrap_or(0).max(up)
            })
            .unwrap_or(0)
    }

    /// The subtree induced on `vertices` (must be connected); vertex `i` of the
    /// result is `vertices[i]`. The root is kept if it survives.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<OrientedTree, TreeError> {
        let mut pos = vec![usize::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        let root = self.root.and_then(|r| (pos[r] != usize::MAX).then(|| pos[r]));
        OrientedTree::new(vertices.len(), edges, root)
    }

    /// Every edge reversed.
    pub fn reversed(&self) -> OrientedTree {
        let edges = self.edges.iter().map(|&(u, v)| (v, u)).collect();
        OrientedTree::new(self.order, edges, self.root).expect("reversal keeps tree shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(OrientedTree::new(0, vec![], None), Err(TreeError::Empty));
        assert!(matches!(
            OrientedTree::new(3, vec![(0, 1)], None),
            Err(TreeError::EdgeCount { .. })
        ));
        assert_eq!(OrientedTree::new(2, vec![(1, 1)], None), Err(TreeError::Loop(1)));
        assert_eq!(
            OrientedTree::new(3, vec![(0, 1), (1, 0)], None),
            Err(TreeError::RepeatedPair(1, 0))
        );
        assert_eq!(OrientedTree::new(2, vec![(0, 1)], Some(2)), Err(TreeError::BadRoot(2)));
    }

    #[test]
    fn cycle_plus_isolated_is_disconnected() {
        let err = OrientedTree::new(4, vec![(0, 1), (1, 2), (2, 0)], None).unwrap_err();
        assert_eq!(err, TreeError::Disconnected);
    }

    #[test]
    fn roots_of_directed_trees() {
        assert_eq!(OrientedTree::out_star(4).out_directed_root(), Some(0));
        assert_eq!(OrientedTree::in_star(4).in_directed_root(), Some(0));
        assert_eq!(OrientedTree::directed_path(4).out_directed_root(), Some(0));
        assert_eq!(OrientedTree::directed_path(4).in_directed_root(), Some(3));
        let alt = OrientedTree::oriented_path(&[true, false]);
        assert_eq!(alt.out_directed_root(), None);
        assert_eq!(alt.in_directed_root(), Some(1));
    }

    #[test]
    fn descendants_on_path() {
        let p = OrientedTree::directed_path(4);
        assert_eq!(p.descendant_counts(0), vec![4, 3, 2, 1]);
        assert_eq!(p.centroid(), 1);
    }

    #[test]
    fn blocks_build_paths() {
        let p = OrientedTree::path_from_blocks(&[4, 3, 4], true);
        assert_eq!(p.order(), 9);
        assert!(p.has_edge(0, 1) && p.has_edge(2, 3) && p.has_edge(4, 3) && p.has_edge(5, 6));
    }
}
