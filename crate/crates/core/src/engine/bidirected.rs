//! Greedy embedding along edges that are present in both directions.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{ceil, EngineError, Rational};
use crate::digraph::{ColouredDigraph, Colour, Embedding, OrientedTree, Vertex};

/// Embeds `tree` in colour `c` of a host with at least `(1 + eps) * C(n, 2)`
/// colour-`c` edges, provided `|T| <= ceil(eps * n / 2)`.
///
/// Vertices with fewer than `ceil(eps * n / 2)` colour-`c` bidirected
/// neighbours are peeled (lowest index first); the remaining graph has
/// minimum bidirected degree at least `|T|`, so a greedy BFS embedding
/// succeeds whatever the tree's orientation.
pub fn bidirected_greedy_embed(
    host: &ColouredDigraph,
    c: Colour,
    eps: Rational,
    tree: &OrientedTree,
) -> Result<Embedding, EngineError> {
    let n = host.order();
    if c == 0 || c as usize > host.colours() {
        return Err(EngineError::Parameter(format!("colour {c} out of range")));
    }
    if *eps.numer() == 0 || n < 2 {
        return Err(EngineError::Parameter("need eps > 0 and at least two vertices".into()));
    }
    let g = host.class(c);
    let pairs = Rational::from_integer((n * (n - 1) / 2) as u64);
    let need = (Rational::from_integer(1) + eps) * pairs;
    if Rational::from_integer(g.edge_count() as u64) < need {
        return Err(EngineError::Parameter(format!(
            "{} colour-{c} edges is below (1 + eps) C(n, 2) = {need}",
            g.edge_count()
        )));
    }
    let t = ceil(eps * Rational::from_integer(n as u64) / Rational::from_integer(2)) as usize;
    if tree.order() > t {
        return Err(EngineError::Parameter(format!("tree order {} exceeds {t}", tree.order())));
    }

    let bi: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = g.out_row(v).clone();
            row.intersect_with(g.in_row(v));
            row
        })
        .collect();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut deg: Vec<usize> = bi.iter().map(|r| r.count_ones(..)).collect();
    let mut low: BTreeSet<Vertex> = (0..n).filter(|&v| deg[v] < t).collect();
    while let Some(v) = low.pop_first() {
        alive.set(v, false);
        for w in bi[v].ones() {
            if alive.contains(w) {
                deg[w] -= 1;
                if deg[w] < t {
                    low.insert(w);
                }
            }
        }
    }

    let start = alive
        .ones()
        .next()
        .ok_or_else(|| EngineError::GuaranteeViolated("peeling removed every vertex".into()))?;
    let mut map = vec![usize::MAX; tree.order()];
    let first = tree.bfs_order(0);
    let parent = tree.parents(0);
    map[0] = start;
    alive.set(start, false);
    for &v in &first[1..] {
        let p = map[parent[v].expect("non-root")];
        let mut cand = bi[p].clone();
        cand.intersect_with(&alive);
        let w = cand
            .ones()
            .next()
            .ok_or_else(|| EngineError::GuaranteeViolated("greedy step found no neighbour".into()))?;
        map[v] = w;
        alive.set(w, false);
    }
    let emb = Embedding::new(tree.clone(), map, c);
    emb.verify(host).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
    Ok(emb)
}

/// Embeds `tree` (order at most `l`) in the colour other than `red` of a
/// 2-coloured host where at least `2k + 2l` vertices have red out-degree at
/// most `k`.
///
/// The lowest `2k + 2l` such vertices form `S`; inside `S` the other colour
/// has at least `(1 + eps) C(|S|, 2)` edges for
/// `eps = (|S| - 1 - 2k) / (|S| - 1)`, and `ceil(eps |S| / 2) >= l`.
pub fn low_outdegree_embed(
    host: &ColouredDigraph,
    red: Colour,
    k: usize,
    l: usize,
    tree: &OrientedTree,
) -> Result<Embedding, EngineError> {
    if host.colours() != 2 || !(red == 1 || red == 2) {
        return Err(EngineError::Parameter("need a 2-coloured host and red in {1, 2}".into()));
    }
    if l == 0 || tree.order() > l {
        return Err(EngineError::Parameter(format!("tree order {} exceeds l = {l}", tree.order())));
    }
    let blue = 3 - red;
    let reds = host.class(red);
    let low: Vec<Vertex> = (0..host.order()).filter(|&v| reds.out_degree(v) <= k).collect();
    let size = 2 * k + 2 * l;
    if low.len() < size {
        return Err(EngineError::Parameter(format!(
            "only {} vertices have red out-degree at most {k}; need {size}",
            low.len()
        )));
    }
    let s = &low[..size];
    let sub = host.induced(s);
    let eps = Rational::new((size - 1 - 2 * k) as u64, (size - 1) as u64);
    let emb = bidirected_greedy_embed(&sub, blue, eps, tree)?;
    let map = emb.host_vertices.iter().map(|&i| s[i]).collect();
    let emb = Embedding::new(tree.clone(), map, blue);
    emb.verify(host).map_err(|e| EngineError::GuaranteeViolated(e.to_string()))?;
    Ok(emb)
}
