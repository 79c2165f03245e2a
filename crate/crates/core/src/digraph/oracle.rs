//! Ground-truth searches: tree containment by exhaustive backtracking and
//! exact longest directed paths.

use fixedbitset::FixedBitSet;

use super::{ColouredDigraph, Colour, Digraph, Embedding, OrientedTree, Vertex};

/// Outcome of an exhaustive containment query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CopySearch {
    Found(Embedding),
    Absent,
    /// The tree has more vertices than the host.
    TreeTooLarge,
}

impl CopySearch {
    pub fn embedding(self) -> Option<Embedding> {
        match self {
            CopySearch::Found(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, CopySearch::Found(_))
    }
}

pub fn contains_monochromatic_copy(
    host: &ColouredDigraph,
    colour: Colour,
    tree: &OrientedTree,
) -> CopySearch {
    if tree.order() > host.order() {
        return CopySearch::TreeTooLarge;
    }
    if colour == 0 || colour as usize > host.colours() {
        return CopySearch::Absent;
    }
    match find_embedding(host.class(colour), None, tree) {
        Some(map) => CopySearch::Found(Embedding::new(tree.clone(), map, colour)),
        None => CopySearch::Absent,
    }
}

pub fn has_copy(g: &Digraph, tree: &OrientedTree) -> bool {
    find_embedding(g, None, tree).is_some()
}

/// Exhaustive search for a copy of `tree` in `g`, optionally restricted to
/// the vertex set `allowed`. Returns the host vertex of every tree vertex.
///
/// Tree vertices are placed in depth-first order from a centroid, so each one
/// after the first has exactly one placed neighbour; candidates are that
/// neighbour's out- or in-row filtered by per-vertex degree feasibility.
pub fn find_embedding(
    g: &Digraph,
    allowed: Option<&FixedBitSet>,
    tree: &OrientedTree,
) -> Option<Vec<Vertex>> {
    let n = g.order();
    let allowed = match allowed {
        Some(a) => {
            let mut a = a.clone();
            a.grow(n);
            a
        }
        None => {
            let mut a = FixedBitSet::with_capacity(n);
            a.insert_range(..);
            a
        }
    };
    if tree.order() > allowed.count_ones(..) {
        return None;
    }

    let start = tree.centroid();
    let order = dfs_order(tree, start);
    let mut parent = vec![(0usize, true); tree.order()];
    let mut placed = vec![false; tree.order()];
    for &t in &order {
        placed[t] = true;
        for (w, forward) in tree.neighbours(t) {
            if !placed[w] {
                // t -> w when forward
                parent[w] = (t, forward);
            }
        }
    }

    let out_deg: Vec<usize> = (0..n)
        .map(|v| if allowed.contains(v) { g.out_row(v).intersection_count(&allowed) } else { 0 })
        .collect();
    let in_deg: Vec<usize> = (0..n)
        .map(|v| if allowed.contains(v) { g.in_row(v).intersection_count(&allowed) } else { 0 })
        .collect();
    let feasible: Vec<FixedBitSet> = (0..tree.order())
        .map(|t| {
            let (need_out, need_in) = (tree.out_degree(t), tree.in_degree(t));
            let mut s = FixedBitSet::with_capacity(n);
            for v in allowed.ones() {
                if out_deg[v] >= need_out && in_deg[v] >= need_in {
                    s.insert(v);
                }
            }
            s
        })
        .collect();

    let mut state = Backtrack {
        g,
        order: &order,
        parent: &parent,
        feasible: &feasible,
        map: vec![usize::MAX; tree.order()],
        used: FixedBitSet::with_capacity(n),
        scratch: vec![FixedBitSet::with_capacity(n); tree.order()],
    };
    state.extend(0).then_some(state.map)
}

fn dfs_order(tree: &OrientedTree, start: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; tree.order()];
    let mut order = Vec::with_capacity(tree.order());
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        if std::mem::replace(&mut seen[u], true) {
            continue;
        }
        order.push(u);
        let mut next: Vec<Vertex> = tree.neighbours(u).map(|(w, _)| w).filter(|&w| !seen[w]).collect();
        next.sort_unstable_by(|a, b| b.cmp(a));
        stack.extend(next);
    }
    order
}

struct Backtrack<'a> {
    g: &'a Digraph,
    order: &'a [Vertex],
    parent: &'a [(Vertex, bool)],
    feasible: &'a [FixedBitSet],
    map: Vec<Vertex>,
    used: FixedBitSet,
    scratch: Vec<FixedBitSet>,
}

impl Backtrack<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let t = self.order[depth];
        let mut cand = std::mem::take(&mut self.scratch[depth]);
        cand.clone_from(&self.feasible[t]);
        if depth > 0 {
            let (p, forward) = self.parent[t];
            let hp = self.map[p];
            if forward {
                cand.intersect_with(self.g.out_row(hp));
            } else {
                cand.intersect_with(self.g.in_row(hp));
            }
        }
        cand.difference_with(&self.used);
        let mut found = false;
        for h in cand.ones() {
            self.map[t] = h;
            self.used.insert(h);
            if self.extend(depth + 1) {
                found = true;
                break;
            }
            self.used.set(h, false);
        }
        if !found {
            self.map[t] = usize::MAX;
        }
        self.scratch[depth] = cand;
        found
    }
}

pub fn longest_monochromatic_directed_path(host: &ColouredDigraph, colour: Colour) -> Vec<Vertex> {
    longest_directed_path(host.class(colour))
}

/// A longest directed path of `g` as a vertex list (length = edges). Exact:
/// dynamic programming over a topological order when `g` is acyclic,
/// branch-and-bound with a reachability bound otherwise.
pub fn longest_directed_path(g: &Digraph) -> Vec<Vertex> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    if let Some(topo) = g.topological_order() {
        let mut len = vec![0usize; n];
        let mut pred = vec![usize::MAX; n];
        for &u in &topo {
            for v in g.out_neighbours(u) {
                if len[u] + 1 > len[v] || (len[u] + 1 == len[v] && u < pred[v]) {
                    len[v] = len[u] + 1;
                    pred[v] = u;
                }
            }
        }
        let mut end = 0;
        for v in 0..n {
            if len[v] > len[end] {
                end = v;
            }
        }
        let mut path = vec![end];
        while pred[*path.last().unwrap()] != usize::MAX {
            path.push(pred[*path.last().unwrap()]);
        }
        path.reverse();
        return path;
    }

    let mut search = PathSearch {
        g,
        best: vec![0],
        path: Vec::with_capacity(n),
        visited: FixedBitSet::with_capacity(n),
    };
    for s in 0..n {
        if search.best.len() == n {
            break;
        }
        search.path.push(s);
        search.visited.insert(s);
        search.dfs(s);
        search.visited.set(s, false);
        search.path.pop();
    }
    search.best
}

struct PathSearch<'a> {
    g: &'a Digraph,
    best: Vec<Vertex>,
    path: Vec<Vertex>,
    visited: FixedBitSet,
}

impl PathSearch<'_> {
    fn dfs(&mut self, u: Vertex) {
        if self.path.len() > self.best.len() {
            self.best.clone_from(&self.path);
        }
        if self.best.len() == self.g.order() {
            return;
        }
        let mut open = self.visited.clone();
        open.toggle_range(..);
        open.insert(u);
        let reach = self.g.reach_within(u, &open).count_ones(..);
        if self.path.len() - 1 + reach <= self.best.len() {
            return;
        }
        let next: Vec<Vertex> = self.g.out_neighbours(u).filter(|&v| !self.visited.contains(v)).collect();
        for v in next {
            self.visited.insert(v);
            self.path.push(v);
            self.dfs(v);
            self.path.pop();
            self.visited.set(v, false);
            if self.best.len() == self.g.order() {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::HostKind;

    fn cyclic_triangle() -> ColouredDigraph {
        ColouredDigraph::from_edges(3, 1, HostKind::Tournament, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
            .unwrap()
    }

    #[test]
    fn cyclic_triangle_has_no_out_star() {
        let r = contains_monochromatic_copy(&cyclic_triangle(), 1, &OrientedTree::out_star(3));
        assert_eq!(r, CopySearch::Absent);
    }

    #[test]
    fn transitive_triangle_has_path() {
        let host = ColouredDigraph::monochromatic(&Digraph::transitive_tournament(3), HostKind::Tournament);
        let tree = OrientedTree::directed_path(3);
        let e = contains_monochromatic_copy(&host, 1, &tree).embedding().unwrap();
        assert!(e.verify(&host).is_ok());
    }

    #[test]
    fn oversized_tree_is_flagged() {
        let r = contains_monochromatic_copy(&cyclic_triangle(), 1, &OrientedTree::directed_path(4));
        assert_eq!(r, CopySearch::TreeTooLarge);
    }

    #[test]
    fn restricted_search_respects_allowed() {
        let g = Digraph::transitive_tournament(5);
        let allowed = crate::digraph::bitset_from(5, [1, 3]);
        let map = find_embedding(&g, Some(&allowed), &OrientedTree::directed_path(2)).unwrap();
        assert_eq!(map, vec![1, 3]);
        assert!(find_embedding(&g, Some(&allowed), &OrientedTree::directed_path(3)).is_none());
    }

    #[test]
    fn longest_path_cases() {
        assert_eq!(longest_directed_path(&Digraph::empty(3)).len(), 1);
        assert_eq!(longest_directed_path(&Digraph::transitive_tournament(4)), vec![0, 1, 2, 3]);
        let cyc = Digraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = longest_directed_path(&cyc);
        assert_eq!(p.len(), 4);
        assert!(cyc.is_directed_path(&p));
        let two = Digraph::from_edges(5, [(0, 1), (1, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(longest_directed_path(&two).len(), 3);
    }
}
