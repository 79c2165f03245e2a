//! Depth-first embedding of an out-tree, or a balanced tripartition whose
//! two big parts have few edges from `X` to `Y`.

use fixedbitset::FixedBitSet;

use super::EngineError;
use crate::digraph::{Digraph, OrientedTree, Vertex};

/// `V = U + X + Y` with `|X| = |Y|`, no `x` in `X` with `|T|` or more
/// out-neighbours in `Y`, and `U` spanning a partial copy of `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPartition {
    pub u: Vec<Vertex>,
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    /// `(tree vertex, host vertex)` pairs of the partial copy on `U`.
    pub partial: Vec<(Vertex, Vertex)>,
}

impl TriPartition {
    /// Checks every property of the partition against `g` and `tree`.
    pub fn check(&self, g: &Digraph, tree: &OrientedTree) -> bool {
        let n = g.order();
        let mut seen = vec![0u8; n];
        for &v in self.u.iter().chain(&self.x).chain(&self.y) {
            if v >= n || seen[v] > 0 {
                return false;
            }
            seen[v] = 1;
        }
        if seen.iter().any(|&s| s == 0) || self.x.len() != self.y.len() {
            return false;
        }
        let mut ys = FixedBitSet::with_capacity(n);
        ys.extend(self.y.iter().copied());
        if self.x.iter().any(|&x| g.out_row(x).intersection_count(&ys) >= tree.order()) {
            return false;
        }
        let mut host_of = vec![None; tree.order()];
        let mut images: Vec<Vertex> = Vec::new();
        for &(t, h) in &self.partial {
            if t >= tree.order() || host_of[t].is_some() {
                return false;
            }
            host_of[t] = Some(h);
            images.push(h);
        }
        images.sort_unstable();
        let mut u = self.u.clone();
        u.sort_unstable();
        if images != u {
            return false;
        }
        tree.edges().iter().all(|&(a, b)| match (host_of[a], host_of[b]) {
            (Some(ha), Some(hb)) => g.has_edge(ha, hb),
            _ => true,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DfsOutcome {
    /// Host vertex of each tree vertex.
    Embedded(Vec<Vertex>),
    Partition(TriPartition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsRun {
    pub outcome: DfsOutcome,
    /// Executed steps. Each step either places tree vertices or moves one
    /// host vertex into `X` for good, so there are at most
    /// `(n/2 + 1) * |T|` of them.
    pub steps: usize,
}

/// Runs the depth-first procedure with `X` empty, `U` empty and `Y = V`.
///
/// Step 1 moves the lowest vertex of `Y` into `U` as the root when the
/// partial tree is empty. Step 2 takes the lowest-index out-leaf `v` of the
/// partial tree that is not a leaf of `T`: if its image has at least `d`
/// out-neighbours in `Y` the lowest `d` become its children (only
/// `|Y| - |X|` of them if that is smaller, after which the sides balance);
/// otherwise the image moves to `X` and the rest of `U` returns to `Y`.
pub fn dfs_partition(g: &Digraph, tree: &OrientedTree) -> Result<DfsRun, EngineError> {
    let root = tree
        .out_directed_root()
        .ok_or_else(|| EngineError::Parameter("tree is not out-directed".into()))?;
    let n = g.order();
    let mut x: Vec<Vertex> = Vec::new();
    let mut y = FixedBitSet::with_capacity(n);
    y.insert_range(..);
    let mut image: Vec<Option<Vertex>> = vec![None; tree.order()];
    let mut placed: Vec<Vertex> = Vec::new();
    let mut steps = 0;

    loop {
        if placed.len() == tree.order() {
            let map = image.iter().map(|h| h.expect("all placed")).collect();
            return Ok(DfsRun { outcome: DfsOutcome::Embedded(map), steps });
        }
        let ny = y.count_ones(..);
        if x.len() == ny {
            let mut partial: Vec<(Vertex, Vertex)> =
                placed.iter().map(|&t| (t, image[t].expect("placed"))).collect();
            partial.sort_unstable();
            let u = partial.iter().map(|&(_, h)| h).collect();
            let y = y.ones().collect();
            let partition = TriPartition { u, x, y, partial };
            return Ok(DfsRun { outcome: DfsOutcome::Partition(partition), steps });
        }
        steps += 1;
        if placed.is_empty() {
            let r = y.ones().next().expect("|Y| > |X| >= 0");
            y.set(r, false);
            image[root] = Some(r);
            placed.push(root);
            continue;
        }
        // Children are added all at once, so an out-leaf of the partial tree
        // has no placed children.
        let v = placed
            .iter()
            .copied()
            .filter(|&t| tree.out_degree(t) > 0 && image[tree.out_neighbours(t)[0]].is_none())
            .min()
            .expect("partial tree is not the whole tree");
        let h = image[v].expect("placed");
        let kids = tree.out_neighbours(v);
        let d = kids.len();
        let mut cand = g.out_row(h).clone();
        cand.intersect_with(&y);
        if cand.count_ones(..) >= d {
            let room = ny - x.len();
            let take = d.min(room);
            for (&c, w) in kids.iter().zip(cand.ones()).take(take) {
                y.set(w, false);
                image[c] = Some(w);
                placed.push(c);
            }
        } else {
            x.push(h);
            for &t in &placed {
                if t != v {
                    y.insert(image[t].expect("placed"));
                }
                image[t] = None;
            }
            placed.clear();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::rooted_out_trees;
    use crate::digraph::embedding::check_map;
    use crate::engine::testutil::rng;
    use rand::Rng;

    fn run_and_check(g: &Digraph, tree: &OrientedTree) -> DfsRun {
        let run = dfs_partition(g, tree).unwrap();
        assert!(run.steps <= (g.order() / 2 + 1) * tree.order());
        match &run.outcome {
            DfsOutcome::Embedded(map) => check_map(tree, map, g).unwrap(),
            DfsOutcome::Partition(p) => assert!(p.check(g, tree), "{p:?}"),
        }
        run
    }

    #[test]
    fn random_hosts_all_small_trees() {
        let mut r = rng(7);
        for n in 0..24 {
            let mut g = Digraph::empty(n);
            let p = r.gen_range(0.0..1.0);
            for u in 0..n {
                for v in 0..n {
                    if u != v && r.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            for order in 1..=5 {
                for t in rooted_out_trees(order) {
                    run_and_check(&g, &t);
                }
            }
        }
    }

    #[test]
    fn edgeless_host() {
        let g = Digraph::empty(5);
        let t = OrientedTree::directed_path(2);
        match run_and_check(&g, &t).outcome {
            DfsOutcome::Partition(p) => {
                assert_eq!(p.u.len(), 1);
                assert_eq!(p.x.len(), 2);
                assert_eq!(p.y.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        let even = Digraph::empty(4);
        match run_and_check(&even, &t).outcome {
            DfsOutcome::Partition(p) => assert!(p.u.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transitive_tournament_embeds() {
        let g = Digraph::transitive_tournament(8);
        for t in rooted_out_trees(4) {
            assert!(matches!(run_and_check(&g, &t).outcome, DfsOutcome::Embedded(_)));
        }
    }

    #[test]
    fn rejects_non_out_trees() {
        let t = OrientedTree::in_star(3);
        assert!(dfs_partition(&Digraph::empty(3), &t).is_err());
    }
}
