//! Constructive lemmas (cuts, peeling, pruning, almost-regular extraction)
//! and verifiers that check counting lemmas and proof claims on concrete
//! graphs.

mod comb;
mod construct;
mod counting;
mod cube;
mod theta;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub use comb::{comb_decompose, comb_decompose_verify, CombDecomposition, COMB_ORDER_CAP};
pub use construct::{
    almost_regular_extract, bipartite_degree_prune, bipartite_half, construct_report, min_degree_subgraph,
    AlmostRegular,
};
pub use counting::{verify_h1t_count, verify_matching_count};
pub use cube::{cube_proof_audit, verify_correlated, CubeAudit, MATCHING_ORDER_CAP};
pub use theta::{
    bfs_layer_report, treelayer_exhaustive, verify_treelayer, BfsLayerReport, ExhaustiveSummary, LevelRow, TreeLayer,
    TREELAYER_CELL_CAP,
};

/// Uniform verdict. `holds` is `None` when the precondition or hypothesis
/// fails and the inequality is therefore not evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifierReport {
    pub lemma: String,
    pub precondition_met: bool,
    pub hypothesis_met: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: Option<bool>,
    /// graph6 of the input followed by a description of the failing object.
    pub counterexample: Option<Vec<String>>,
    pub details: BTreeMap<String, Value>,
}

impl VerifierReport {
    pub(crate) fn new(lemma: &str) -> Self {
        VerifierReport {
            lemma: lemma.to_string(),
            precondition_met: false,
            hypothesis_met: false,
            lhs: 0.0,
            rhs: 0.0,
            holds: None,
            counterexample: None,
            details: BTreeMap::new(),
        }
    }

    pub(crate) fn detail(&mut self, key: &str, v: impl Into<Value>) {
        self.details.insert(key.to_string(), v.into());
    }

    /// True unless the lemma was evaluated and failed.
    pub fn is_consistent(&self) -> bool {
        self.holds != Some(false)
    }
}
