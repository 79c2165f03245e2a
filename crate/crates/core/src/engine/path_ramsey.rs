//! Monochromatic oriented paths in `k`-coloured tournaments.

use fixedbitset::FixedBitSet;

use super::base::{ExactEmbedder, OneColourEmbedder};
use super::constants::path_threshold;
use super::mindegree::find_mindegree_pair;
use super::path_indep::{self, embed_path_or_independent, PathOrIndependent};
use super::{EngineError, Rational, Trace};
use crate::decompose::longest_directed_subpath;
use crate::digraph::{
    contains_monochromatic_copy, ColouredDigraph, Colour, Embedding, HostKind, OrientedTree, Vertex,
};

/// Result of a Ramsey embedder run.
#[derive(Clone, Debug)]
pub struct RamseyEmbedOutcome {
    /// Verified monochromatic copy, if one was found.
    pub embedding: Option<Embedding>,
    /// Guarantee threshold for this input, `None` when it exceeds `u128`.
    pub threshold: Option<u128>,
    /// Whether the host reaches the threshold.
    pub guaranteed: bool,
    /// Whether the constructive run missed and the exact per-colour search
    /// supplied the answer.
    pub fallback_used: bool,
    pub trace: Trace,
}

impl RamseyEmbedOutcome {
    /// False exactly when the host reaches the threshold but the
    /// constructive run did not produce a copy by itself.
    pub fn guarantee_held(&self) -> bool {
        !self.guaranteed || (self.embedding.is_some() && !self.fallback_used)
    }

    pub fn colour(&self) -> Option<Colour> {
        self.embedding.as_ref().map(|e| e.colour)
    }
}

pub(crate) fn check_tournament(host: &ColouredDigraph) -> Result<(), EngineError> {
    if host.kind() != HostKind::Tournament {
        return Err(EngineError::Parameter("host must be a tournament".into()));
    }
    host.validate().map_err(|v| EngineError::Parameter(v.to_string()))
}

/// Runs the induction on the number of colours: majority colour, a
/// `1/k`-density minimum-degree pair, then path-or-independent-set; an
/// independent set is a sub-tournament missing that colour. One colour
/// is handled by the exact one-colour embedder.
///
/// Below `(8^k - 2) k! n l^(k-1)` vertices the run is best-effort; a miss
/// falls back to the exact per-colour search and is flagged.
pub fn ramsey_path_embed_tournament(
    host: &ColouredDigraph,
    path: &OrientedTree,
    trace: bool,
) -> Result<RamseyEmbedOutcome, EngineError> {
    check_tournament(host)?;
    if !path.is_path() {
        return Err(EngineError::Parameter("target is not a path".into()));
    }
    let k = host.colours();
    let l = longest_directed_subpath(path)?;
    let threshold = path_threshold(k as u32, path.size(), l);
    let guaranteed = host.order() as u128 >= threshold;
    let mut trace = if trace { Trace::enabled() } else { Trace::disabled() };

    let all: Vec<Vertex> = (0..host.order()).collect();
    let active: Vec<Colour> = (1..=k as Colour).collect();
    let mut embedding = induct(host, &all, &active, path, &mut trace)?;
    let mut fallback_used = false;
    if embedding.is_none() {
        trace.record("fallback", "exact", &[host.order()]);
        embedding = (1..=k as Colour).find_map(|c| contains_monochromatic_copy(host, c, path).embedding());
        fallback_used = embedding.is_some();
    }
    if let Some(e) = &embedding {
        e.verify(host).map_err(|err| EngineError::GuaranteeViolated(err.to_string()))?;
    }
    Ok(RamseyEmbedOutcome { embedding, threshold: Some(threshold), guaranteed, fallback_used, trace })
}

fn induct(
    host: &ColouredDigraph,
    vs: &[Vertex],
    active: &[Colour],
    path: &OrientedTree,
    trace: &mut Trace,
) -> Result<Option<Embedding>, EngineError> {
    if vs.is_empty() {
        return Ok(None);
    }
    let k = active.len();
    if k == 1 {
        let c = active[0];
        trace.record("base", c, &[vs.len()]);
        let mut allowed = FixedBitSet::with_capacity(host.order());
        allowed.extend(vs.iter().copied());
        let found = ExactEmbedder::for_tournaments().embed(host.class(c), &allowed, path);
        return Ok(found.map(|map| Embedding::new(path.clone(), map, c)));
    }
    let sub = host.induced(vs);
    let c = majority(&sub, active);
    let g = sub.class(c);
    trace.record("majority", c, &[vs.len(), g.edge_count()]);
    let pair = match find_mindegree_pair(g, Rational::new(1, k as u64)) {
        Ok(p) => p,
        Err(EngineError::GuaranteeViolated(m)) => return Err(EngineError::GuaranteeViolated(m)),
        Err(_) => {
            trace.record("mindegree", "none", &[vs.len()]);
            return Ok(None);
        }
    };
    trace.record("mindegree", c, &[pair.x.len(), pair.y.len(), pair.threshold]);
    let result = if pair.threshold > path.size() {
        embed_path_or_independent(g, &pair, path)?
    } else {
        match path_indep::run(g, &pair, path)? {
            Some(r) => r,
            None => {
                trace.record("path_indep", "stuck", &[pair.threshold]);
                return Ok(None);
            }
        }
    };
    match result {
        PathOrIndependent::Embedded(map) => {
            trace.record("path_indep", "embedded", &[path.order()]);
            let map = map.into_iter().map(|i| vs[i]).collect();
            Ok(Some(Embedding::new(path.clone(), map, c)))
        }
        PathOrIndependent::Independent(set) => {
            trace.record("path_indep", "independent", &[set.len()]);
            let next: Vec<Vertex> = set.into_iter().map(|i| vs[i]).collect();
            let rest: Vec<Colour> = active.iter().copied().filter(|&a| a != c).collect();
            induct(host, &next, &rest, path, trace)
        }
    }
}

/// Active colour with the most edges, lowest on ties.
pub(crate) fn majority(host: &ColouredDigraph, active: &[Colour]) -> Colour {
    *active
        .iter()
        .max_by_key(|&&c| (host.class(c).edge_count(), std::cmp::Reverse(c)))
        .expect("at least one colour")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::oriented_paths;
    use crate::engine::testutil::{random_coloured_tournament, rng};

    #[test]
    fn five_vertices_two_colours_p3() {
        let mut r = rng(14);
        let p = OrientedTree::directed_path(3);
        for _ in 0..200 {
            let host = random_coloured_tournament(5, 2, &mut r);
            let out = ramsey_path_embed_tournament(&host, &p, false).unwrap();
            assert!(out.embedding.is_some());
            assert!(!out.guaranteed);
        }
    }

    #[test]
    fn one_colour_el_sahili_sizes() {
        let mut r = rng(15);
        for n in 2..=6 {
            for _ in 0..20 {
                let host = random_coloured_tournament(3 * n - 3, 1, &mut r);
                let out = ramsey_path_embed_tournament(&host, &OrientedTree::directed_path(n), false).unwrap();
                assert!(out.embedding.is_some());
                assert!(!out.fallback_used);
            }
        }
    }

    #[test]
    fn at_threshold_no_fallback() {
        // k = 2, length 1: threshold 124 vertices.
        let mut r = rng(16);
        for path in oriented_paths(2).into_iter().chain(oriented_paths(1)) {
            let l = longest_directed_subpath(&path).unwrap();
            let n = path_threshold(2, path.size(), l) as usize;
            for _ in 0..3 {
                let host = random_coloured_tournament(n, 2, &mut r);
                let out = ramsey_path_embed_tournament(&host, &path, true).unwrap();
                assert!(out.guaranteed);
                assert!(out.guarantee_held(), "{}", out.trace.render());
            }
        }
    }

    #[test]
    fn trace_lines() {
        let mut r = rng(17);
        let host = random_coloured_tournament(30, 2, &mut r);
        let out = ramsey_path_embed_tournament(&host, &OrientedTree::directed_path(3), true).unwrap();
        let text = out.trace.render();
        assert!(text.lines().all(|l| l.starts_with("step=") && l.contains(" case=") && l.contains(" sizes=")));
    }

    #[test]
    fn rejects_non_tournaments() {
        let host = ColouredDigraph::complete_from_fn(4, 2, |_, _| 1).unwrap();
        assert!(ramsey_path_embed_tournament(&host, &OrientedTree::directed_path(2), false).is_err());
    }
}
