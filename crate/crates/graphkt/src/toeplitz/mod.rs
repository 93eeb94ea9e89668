//! Symbolic computation in the Toeplitz algebra of a finite graph.
//!
//! Working purely with the linear basis `{s_α s_β* : r(α) = r(β)}`, this
//! module builds the explicit K₁ witnesses attached to a kernel vector — the
//! index sets, the partial isometry `V`, the projection `P`, and the unitary
//! `U = V + (1−P)` — verifies their defining identities symbolically, and
//! recomputes the index map of the six-term sequence as a defect: quotient
//! statements are never evaluated in a quotient algebra, but certified by
//! exhibiting the difference as a combination of gap elements.

mod algebra;
mod witness;

pub use algebra::{AlgMatrix, AlgebraElement, Path, PathTerm};
pub use witness::{
    build_vpu, gap_residue, index_oracle, verify_four_identities, IndexItem, ToeplitzError,
    WitnessIndex,
};

use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// One index-set member in a witness report: either a vertex or an edge
/// (source, target, copy), with its repetition index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntryJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<(String, String, u64)>,
    pub i: u64,
}

/// JSON report for a witness computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub h: usize,
    pub upindex: Vec<IndexEntryJson>,
    pub downindex: Vec<IndexEntryJson>,
    pub residue_vector: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_class: Option<Vec<i64>>,
}

fn entry_json(g: &Graph, item: IndexItem, i: u64) -> IndexEntryJson {
    match item {
        IndexItem::Vertex(v) => IndexEntryJson {
            vertex: Some(g.vertex_name(v).to_string()),
            edge: None,
            i,
        },
        IndexItem::Edge(e) => IndexEntryJson {
            vertex: None,
            edge: Some((
                g.vertex_name(e.source).to_string(),
                g.vertex_name(e.target).to_string(),
                e.copy,
            )),
            i,
        },
    }
}

/// Renders a witness and its residue (plus, for ideal computations, the
/// oracle class) with vertex names resolved against the given graph.
pub fn witness_report(
    g: &Graph,
    w: &WitnessIndex,
    residue: &[i64],
    oracle_class: Option<Vec<i64>>,
) -> WitnessReport {
    WitnessReport {
        h: w.h(),
        upindex: w.up_slots().iter().map(|&(m, i)| entry_json(g, m, i)).collect(),
        downindex: w.down_slots().iter().map(|&(m, i)| entry_json(g, m, i)).collect(),
        residue_vector: residue.to_vec(),
        oracle_class,
    }
}
