//! Monochromatic oriented trees in `k`-coloured tournaments, with some
//! colours tracked by leaf count.

use fixedbitset::FixedBitSet;

use super::base::{ExactEmbedder, OneColourEmbedder};
use super::constants::{tree_shrink, tree_threshold};
use super::mindegree::{find_mindegree_pair, MindegreePair};
use super::path_indep::{self, embed_path_or_independent, PathOrIndependent};
use super::path_ramsey::{check_tournament, majority, RamseyEmbedOutcome};
use super::{EngineError, Rational, Trace};
use crate::decompose::k_core;
use crate::digraph::{
    contains_monochromatic_copy, ColouredDigraph, Colour, Embedding, OrientedTree, Vertex,
};

/// Finds `T_i` in colour `i` for some `i`; colours `1..=l` are tracked by
/// leaf count.
///
/// Colours are chosen by majority with nested minimum-degree pairs until a
/// tracked colour appears (its tree loses a leaf path, or a path falls back
/// to path-or-independent-set) or an untracked colour repeats (its tree's
/// core goes into the middle set and the remaining subtrees hang off it in
/// the outer sets). Every recursive call has a smaller induction triple.
///
/// The guarantee threshold is astronomical for `k >= 2`, so in practice the
/// run is best-effort with the exact per-colour search as flagged fallback.
pub fn ramsey_tree_embed_tournament(
    host: &ColouredDigraph,
    trees: &[OrientedTree],
    l: usize,
    trace: bool,
) -> Result<RamseyEmbedOutcome, EngineError> {
    check_tournament(host)?;
    let k = host.colours();
    if trees.len() != k {
        return Err(EngineError::Parameter(format!("{} trees for {k} colours", trees.len())));
    }
    if l > k {
        return Err(EngineError::Parameter(format!("l = {l} exceeds k = {k}")));
    }
    let leaves: Vec<usize> = trees[..l].iter().map(OrientedTree::leaf_count).collect();
    let orders: Vec<usize> = trees.iter().map(OrientedTree::order).collect();
    let threshold = tree_threshold(k as u32, &leaves, &orders);
    let guaranteed = threshold.is_some_and(|t| host.order() as u128 >= t);
    let mut trace = if trace { Trace::enabled() } else { Trace::disabled() };

    let state = State {
        trees: trees.iter().cloned().map(Some).collect(),
        tracked: (0..k).map(|i| i < l).collect(),
    };
    let all: Vec<Vertex> = (0..host.order()).collect();
    let mut embedding = Runner { host, trace: &mut trace }.induct(&all, &state)?;
    let mut fallback_used = false;
    if embedding.is_none() {
        trace.record("fallback", "exact", &[host.order()]);
        embedding = (1..=k as Colour)
            .find_map(|c| contains_monochromatic_copy(host, c, &trees[c as usize - 1]).embedding());
        fallback_used = embedding.is_some();
    }
    if let Some(e) = &embedding {
        e.verify(host).map_err(|err| EngineError::GuaranteeViolated(err.to_string()))?;
    }
    Ok(RamseyEmbedOutcome { embedding, threshold, guaranteed, fallback_used, trace })
}

/// Target tree per colour (`None` once a colour is known to be absent) and
/// whether it is tracked by leaves.
#[derive(Clone, Debug)]
struct State {
    trees: Vec<Option<OrientedTree>>,
    tracked: Vec<bool>,
}

impl State {
    fn active(&self) -> Vec<Colour> {
        (0..self.trees.len()).filter(|&i| self.trees[i].is_some()).map(|i| i as Colour + 1).collect()
    }

    fn tree(&self, c: Colour) -> &OrientedTree {
        self.trees[c as usize - 1].as_ref().expect("active colour")
    }

    fn with_tree(&self, c: Colour, tree: OrientedTree) -> State {
        let mut s = self.clone();
        s.trees[c as usize - 1] = Some(tree);
        s
    }
}

struct Runner<'a> {
    host: &'a ColouredDigraph,
    trace: &'a mut Trace,
}

impl Runner<'_> {
    fn induct(&mut self, vs: &[Vertex], state: &State) -> Result<Option<Embedding>, EngineError> {
        if vs.is_empty() {
            return Ok(None);
        }
        let active = state.active();
        if let Some(&c) = active.iter().find(|&&c| state.tree(c).order() == 1) {
            return Ok(Some(Embedding::new(state.tree(c).clone(), vec![vs[0]], c)));
        }
        if active.len() == 1 {
            let c = active[0];
            self.trace.record("base", c, &[vs.len()]);
            return Ok(self.embed_within(c, state.tree(c), vs));
        }

        let k = active.len();
        let mut prev: Vec<Vertex> = vs.to_vec();
        let mut history: Vec<(Colour, MindegreePair)> = Vec::new();
        loop {
            let sub = self.host.induced(&prev);
            let c = majority(&sub, &active);
            let pair = match find_mindegree_pair(sub.class(c), Rational::new(1, k as u64)) {
                Ok(p) => lift(p, &prev),
                Err(EngineError::GuaranteeViolated(m)) => return Err(EngineError::GuaranteeViolated(m)),
                Err(_) => {
                    self.trace.record("mindegree", "none", &[prev.len()]);
                    return Ok(None);
                }
            };
            self.trace.record("mindegree", c, &[prev.len(), pair.x.len(), pair.y.len(), pair.threshold]);
            if state.tracked[c as usize - 1] {
                return self.case_one(c, &pair, state);
            }
            if let Some(j) = history.iter().position(|(cj, _)| *cj == c) {
                let z = history.swap_remove(j).1.y;
                return self.case_two(c, &pair, &z, state, k);
            }
            prev = pair.x.clone();
            history.push((c, pair));
        }
    }

    /// Exact one-colour search inside `vs`.
    fn embed_within(&self, c: Colour, tree: &OrientedTree, vs: &[Vertex]) -> Option<Embedding> {
        let mut allowed = FixedBitSet::with_capacity(self.host.order());
        allowed.extend(vs.iter().copied());
        ExactEmbedder::for_tournaments()
            .embed(self.host.class(c), &allowed, tree)
            .map(|map| Embedding::new(tree.clone(), map, c))
    }

    /// Tracked colour `c` with pair `(X, Y)`.
    fn case_one(
        &mut self,
        c: Colour,
        pair: &MindegreePair,
        state: &State,
    ) -> Result<Option<Embedding>, EngineError> {
        let tree = state.tree(c).clone();
        if tree.leaf_count() <= 2 {
            return self.case_one_path(c, pair, state, &tree);
        }
        // Strip the path from the lowest leaf up to the nearest branch vertex.
        let v = tree.leaves()[0];
        let mut strip = vec![v];
        let mut prev = usize::MAX;
        let mut cur = v;
        loop {
            let next = tree.neighbours(cur).map(|(w, _)| w).find(|&w| w != prev).expect("connected");
            if tree.degree(next) >= 3 {
                prev = next;
                break;
            }
            strip.push(next);
            prev = cur;
            cur = next;
        }
        let u = prev;
        let attach = *strip.last().expect("non-empty");
        let outward = tree.has_edge(u, attach);
        strip.reverse();
        let rest: Vec<Vertex> = (0..tree.order()).filter(|w| !strip.contains(w)).collect();
        let reduced = tree.induced(&rest).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
        let tail = tree.induced(&strip).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
        self.trace.record("case1", "strip", &[tree.leaf_count(), reduced.order(), tail.order()]);

        // The reduced tree goes on the side the stripped path leaves from.
        let (home, away) = if outward { (&pair.x, &pair.y) } else { (&pair.y, &pair.x) };
        let first = match self.induct(home, &state.with_tree(c, reduced))? {
            Some(e) if e.colour == c => e,
            other => return Ok(other),
        };
        let u_img = first.host_vertices[rest.iter().position(|&w| w == u).expect("u kept")];
        let g = self.host.class(c);
        let row = if outward { g.out_row(u_img) } else { g.in_row(u_img) };
        let nbhd: Vec<Vertex> = away.iter().copied().filter(|&w| row.contains(w)).collect();
        let second = match self.induct(&nbhd, &state.with_tree(c, tail))? {
            Some(e) if e.colour == c => e,
            other => return Ok(other),
        };
        let mut map = vec![usize::MAX; tree.order()];
        for (i, &w) in rest.iter().enumerate() {
            map[w] = first.host_vertices[i];
        }
        for (i, &w) in strip.iter().enumerate() {
            map[w] = second.host_vertices[i];
        }
        Ok(Some(Embedding::new(tree, map, c)))
    }

    fn case_one_path(
        &mut self,
        c: Colour,
        pair: &MindegreePair,
        state: &State,
        path: &OrientedTree,
    ) -> Result<Option<Embedding>, EngineError> {
        let (local, g) = local_pair(self.host, c, pair);
        let result = if local.threshold > path.size() {
            embed_path_or_independent(&g, &local, path)?
        } else {
            match path_indep::run(&g, &local, path)? {
                Some(r) => r,
                None => {
                    self.trace.record("case1", "stuck", &[local.threshold]);
                    return Ok(None);
                }
            }
        };
        let verts: Vec<Vertex> = pair.x.iter().chain(&pair.y).copied().collect();
        match result {
            PathOrIndependent::Embedded(map) => {
                self.trace.record("case1", "path", &[path.order()]);
                let map = map.into_iter().map(|i| verts[i]).collect();
                Ok(Some(Embedding::new(path.clone(), map, c)))
            }
            PathOrIndependent::Independent(set) => {
                self.trace.record("case1", "independent", &[set.len()]);
                let next: Vec<Vertex> = set.into_iter().map(|i| verts[i]).collect();
                let mut rest = state.clone();
                rest.trees[c as usize - 1] = None;
                self.induct(&next, &rest)
            }
        }
    }

    /// Untracked colour `c` repeated: `Y` holds the core, out-subtrees go to
    /// `Z` and in-subtrees to `X`.
    fn case_two(
        &mut self,
        c: Colour,
        pair: &MindegreePair,
        z: &[Vertex],
        state: &State,
        k: usize,
    ) -> Result<Option<Embedding>, EngineError> {
        let tree = state.tree(c).clone().with_root(0).expect("non-empty tree");
        let two_a: usize = (tree_shrink(k as u32) * 2u32).try_into().unwrap_or(usize::MAX);
        let core = k_core(&tree, two_a)?;
        self.trace.record("case2", c, &[pair.x.len(), pair.y.len(), z.len(), core.tree.order()]);
        let mut tracked = state.with_tree(c, core.tree.clone());
        tracked.tracked[c as usize - 1] = true;
        let placed = match self.induct(&pair.y, &tracked)? {
            Some(e) if e.colour == c => e,
            other => return Ok(other),
        };

        let mut map = vec![usize::MAX; tree.order()];
        let mut used = FixedBitSet::with_capacity(self.host.order());
        for (i, &w) in core.vertices.iter().enumerate() {
            map[w] = placed.host_vertices[i];
            used.insert(placed.host_vertices[i]);
        }
        let mut in_core = vec![false; tree.order()];
        for &w in &core.vertices {
            in_core[w] = true;
        }
        let children = tree.children(0);
        let g = self.host.class(c);
        for &x in &core.vertices {
            for &y in &children[x] {
                if in_core[y] {
                    continue;
                }
                let sub_vertices = subtree_below(&children, y);
                let sub = tree.induced(&sub_vertices).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
                let outward = tree.has_edge(x, y);
                let (side, row) = if outward { (z, g.out_row(map[x])) } else { (&pair.x[..], g.in_row(map[x])) };
                let room: Vec<Vertex> =
                    side.iter().copied().filter(|&w| row.contains(w) && !used.contains(w)).collect();
                let hung = match self.induct(&room, &state.with_tree(c, sub))? {
                    Some(e) if e.colour == c => e,
                    other => return Ok(other),
                };
                for (i, &w) in sub_vertices.iter().enumerate() {
                    map[w] = hung.host_vertices[i];
                    used.insert(hung.host_vertices[i]);
                }
            }
        }
        Ok(Some(Embedding::new(state.tree(c).clone(), map, c)))
    }
}

/// Re-expresses a pair found inside `prev` in host vertex ids.
fn lift(pair: MindegreePair, prev: &[Vertex]) -> MindegreePair {
    MindegreePair {
        x: pair.x.into_iter().map(|i| prev[i]).collect(),
        y: pair.y.into_iter().map(|i| prev[i]).collect(),
        threshold: pair.threshold,
        colour: pair.colour,
    }
}

/// The colour class on `X + Y` with the pair in local ids (X first).
fn local_pair(
    host: &ColouredDigraph,
    c: Colour,
    pair: &MindegreePair,
) -> (MindegreePair, crate::digraph::Digraph) {
    let verts: Vec<Vertex> = pair.x.iter().chain(&pair.y).copied().collect();
    let g = host.class(c).induced(&verts);
    let nx = pair.x.len();
    let local = MindegreePair {
        x: (0..nx).collect(),
        y: (nx..verts.len()).collect(),
        threshold: pair.threshold,
        colour: Some(c),
    };
    (local, g)
}

fn subtree_below(children: &[Vec<Vertex>], y: Vertex) -> Vec<Vertex> {
    let mut out = vec![y];
    let mut i = 0;
    while i < out.len() {
        out.extend_from_slice(&children[out[i]]);
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::oriented_trees;
    use crate::engine::testutil::{random_coloured_tournament, rng};
    use rand::seq::SliceRandom;

    #[test]
    fn one_colour_at_el_sahili_size() {
        let mut r = rng(18);
        for n in 1..=5 {
            for t in oriented_trees(n) {
                let host = random_coloured_tournament((3 * n).saturating_sub(3).max(n), 1, &mut r);
                let out = ramsey_tree_embed_tournament(&host, &[t], 0, false).unwrap();
                assert!(out.embedding.is_some());
                assert!(!out.fallback_used);
            }
        }
    }

    #[test]
    fn single_edges_always_found() {
        let mut r = rng(19);
        let e = OrientedTree::directed_path(2);
        for n in 2..20 {
            let host = random_coloured_tournament(n, 2, &mut r);
            for l in 0..=2 {
                let out = ramsey_tree_embed_tournament(&host, &[e.clone(), e.clone()], l, true).unwrap();
                assert!(out.embedding.is_some());
                assert!(!out.guaranteed);
            }
        }
    }

    #[test]
    fn best_effort_certificates_verify() {
        let mut r = rng(20);
        let trees = oriented_trees(4);
        for _ in 0..40 {
            let host = random_coloured_tournament(60, 2, &mut r);
            let pick: Vec<OrientedTree> = (0..2).map(|_| trees.choose(&mut r).unwrap().clone()).collect();
            for l in 0..=2 {
                let out = ramsey_tree_embed_tournament(&host, &pick, l, false).unwrap();
                let e = out.embedding.expect("R(T,T) is tiny next to 60");
                e.verify(&host).unwrap();
            }
        }
    }

    #[test]
    fn out_stars_three_colours() {
        let mut r = rng(21);
        let star = OrientedTree::out_star(3);
        for _ in 0..10 {
            let host = random_coloured_tournament(40, 3, &mut r);
            let out = ramsey_tree_embed_tournament(&host, &[star.clone(), star.clone(), star.clone()], 1, true)
                .unwrap();
            assert!(out.embedding.is_some());
        }
    }

    #[test]
    fn parameter_errors() {
        let mut r = rng(22);
        let host = random_coloured_tournament(6, 2, &mut r);
        let e = OrientedTree::directed_path(2);
        assert!(ramsey_tree_embed_tournament(&host, &[e.clone()], 0, false).is_err());
        assert!(ramsey_tree_embed_tournament(&host, &[e.clone(), e], 3, false).is_err());
    }
}
