//! Constructive embedders. Each operation returns a certificate (embedding,
//! independent set or partition) that can be re-checked independently of the
//! code that produced it.
//!
//! Real-valued thresholds are rounded up, so certificates meet integer
//! guarantees at least as strong as the real bounds. Ties are broken by the
//! lowest vertex or colour id throughout.

mod base;
mod bidirected;
pub mod constants;
mod dfs;
mod ghrv;
mod layered;
mod mindegree;
mod path_indep;
mod path_ramsey;
mod trace;
mod tree_indep;
mod tree_ramsey;

pub use base::{ExactEmbedder, OneColourEmbedder};
pub use bidirected::{bidirected_greedy_embed, low_outdegree_embed};
pub use dfs::{dfs_partition, DfsOutcome, DfsRun, TriPartition};
pub use ghrv::{acyclic_levelling, ghrv_dichotomy, GhrvOutcome, Levelling};
pub use layered::{layered_embed, LayeredOutcome};
pub use mindegree::{find_mindegree_pair, MindegreePair};
pub use path_indep::{embed_path_or_independent, PathOrIndependent};
pub use path_ramsey::{ramsey_path_embed_tournament, RamseyEmbedOutcome};
pub use trace::{Trace, TraceStep};
pub use tree_indep::{tree_or_independent, TreeOrIndependent};
pub use tree_ramsey::ramsey_tree_embed_tournament;

use num_rational::Ratio;
use thiserror::Error;

use crate::decompose::DecomposeError;

/// Exact non-negative rational used for the proof's real parameters.
pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Tree(#[from] DecomposeError),
    /// A step that is guaranteed to succeed did not. Always a bug.
    #[error("guarantee violated: {0}")]
    GuaranteeViolated(String),
}

/// `ceil(r)` for a non-negative rational.
pub(crate) fn ceil(r: Rational) -> u64 {
    r.ceil().to_integer()
}
