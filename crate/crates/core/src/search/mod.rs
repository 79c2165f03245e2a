//! Exact Ramsey values of small trees by exhaustive search over hosts and
//! colourings, with isomorph rejection.

pub mod canon;
mod exact;

use std::collections::BTreeMap;

use thiserror::Error;

pub use canon::{canonical_form, Canon, Code};
pub use exact::{
    directed_ramsey_exact, oriented_ramsey_exact, HostFamily, OrderStats, SearchCaps, SearchOptions,
    SearchResult, SearchStats,
};

use crate::digraph::Digraph;

/// Default largest order `enumerate_tournaments` accepts.
pub const DEFAULT_TOURNAMENT_LIMIT: usize = 7;
/// Hard ceiling: 9-vertex classes already number 191536.
pub const MAX_TOURNAMENT_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("order {n} is beyond the enumeration limit {limit}")]
    Limit { n: usize, limit: usize },
}

/// One canonical representative per isomorphism class of tournaments on `n`
/// vertices, sorted by canonical code.
pub fn enumerate_tournaments(n: usize, limit: usize) -> Result<Vec<Digraph>, SearchError> {
    let limit = limit.min(MAX_TOURNAMENT_LIMIT);
    if n > limit {
        return Err(SearchError::Limit { n, limit });
    }
    let mut classes = vec![Digraph::empty(n.min(1))];
    for m in 2..=n {
        classes = extend_tournaments(&classes, m);
    }
    Ok(classes)
}

/// Classes on `n` vertices from the classes on `n - 1`: every tournament
/// arises by adding a vertex to one of its vertex-deleted subtournaments.
pub(crate) fn extend_tournaments(prev: &[Digraph], n: usize) -> Vec<Digraph> {
    let mut seen: BTreeMap<Code, Digraph> = BTreeMap::new();
    for g in prev {
        for mask in 0u64..1 << (n - 1) {
            let mut h = Digraph::empty(n);
            for (u, v) in g.edges() {
                h.add_edge(u, v);
            }
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    h.add_edge(n - 1, u);
                } else {
                    h.add_edge(u, n - 1);
                }
            }
            let c = canonical_form(&h);
            if !seen.contains_key(&c.code) {
                let rep = c.graph(&h);
                seen.insert(c.code, rep);
            }
        }
    }
    seen.into_values().collect()
}
