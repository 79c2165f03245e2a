//! Oriented path or independent set inside a minimum-degree pair.

use fixedbitset::FixedBitSet;

use super::ghrv::{ghrv_dichotomy, GhrvOutcome};
use super::mindegree::MindegreePair;
use super::EngineError;
use crate::decompose::block_decomposition;
use crate::digraph::{Digraph, OrientedTree, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathOrIndependent {
    /// Host vertex of each path vertex.
    Embedded(Vec<Vertex>),
    /// Sorted independent set of the host.
    Independent(Vec<Vertex>),
}

/// Embeds an oriented path of length `n < threshold` into the pair, or
/// returns an independent set of size at least `ceil((k - n) / l)`, with
/// `k` the pair threshold and `l = l(P)`.
pub fn embed_path_or_independent(
    g: &Digraph,
    pair: &MindegreePair,
    path: &OrientedTree,
) -> Result<PathOrIndependent, EngineError> {
    if !pair.check(g) {
        return Err(EngineError::Parameter("not a minimum-degree pair of the host".into()));
    }
    if !path.is_path() {
        return Err(EngineError::Parameter("target is not a path".into()));
    }
    let length = path.size();
    if pair.threshold <= length {
        return Err(EngineError::Precondition(format!(
            "pair threshold {} must exceed the path length {length}",
            pair.threshold
        )));
    }
    match run(g, pair, path)? {
        Some(PathOrIndependent::Independent(set)) => {
            let l = block_decomposition(path).map(|b| b.l).unwrap_or(1).max(1);
            let bound = (pair.threshold - length).div_ceil(l);
            if set.len() < bound {
                return Err(EngineError::GuaranteeViolated(format!(
                    "independent set of size {} below {bound}",
                    set.len()
                )));
            }
            Ok(PathOrIndependent::Independent(set))
        }
        Some(found) => Ok(found),
        None => Err(EngineError::GuaranteeViolated("ran out of neighbours".into())),
    }
}

/// The block-by-block embedding without the threshold check. `None` means a
/// neighbourhood was exhausted, which can only happen below the threshold.
pub(crate) fn run(
    g: &Digraph,
    pair: &MindegreePair,
    path: &OrientedTree,
) -> Result<Option<PathOrIndependent>, EngineError> {
    let n = g.order();
    if path.order() == 1 {
        return Ok(pair.x.first().map(|&v| PathOrIndependent::Embedded(vec![v])));
    }
    let dec = block_decomposition(path)?;
    let xs = pair.x_set(n);
    let ys = pair.y_set(n);
    let mut map = vec![usize::MAX; path.order()];
    let mut used = FixedBitSet::with_capacity(n);

    // Forward blocks leave X for Y, backward blocks leave Y for X.
    let start = if dec.first_edge_forward { &pair.x } else { &pair.y };
    let mut cur = start[0];
    map[dec.walk[0]] = cur;
    used.insert(cur);
    let mut pos = 0;
    let mut forward = dec.first_edge_forward;
    for &b in &dec.blocks {
        let mut avail = if forward { g.out_row(cur).clone() } else { g.in_row(cur).clone() };
        avail.intersect_with(if forward { &ys } else { &xs });
        avail.difference_with(&used);
        let need = b - 1;
        let chosen: Vec<Vertex> = if need == 1 {
            match avail.ones().next() {
                Some(v) => vec![v],
                None => return Ok(None),
            }
        } else {
            let s: Vec<Vertex> = avail.ones().collect();
            match ghrv_dichotomy(&g.induced(&s), need - 1) {
                GhrvOutcome::Independent(set) => {
                    let set = set.into_iter().map(|i| s[i]).collect();
                    return Ok(Some(PathOrIndependent::Independent(set)));
                }
                GhrvOutcome::Path(p) => {
                    let window = &p[..need];
                    if forward {
                        window.iter().map(|&i| s[i]).collect()
                    } else {
                        window.iter().rev().map(|&i| s[i]).collect()
                    }
                }
            }
        };
        for v in chosen {
            pos += 1;
            map[dec.walk[pos]] = v;
            used.insert(v);
            cur = v;
        }
        forward = !forward;
    }
    Ok(Some(PathOrIndependent::Embedded(map)))
}
