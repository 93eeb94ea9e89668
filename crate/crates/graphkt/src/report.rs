//! JSON-serializable reports for the six-term sequence and the invariant
//! summaries.
//!
//! Schema: each group is `{invariant_factors: [...], free_rank: n}`, each map
//! is `{matrix: [[...]], well_defined: bool}` (the matrix is the lift between
//! the free covers), exactness is one bool per node, and `partial0_zero`
//! records the ∂₀ = 0 check. The summary section adds, for every map, the
//! invariant factors of its matrix in canonical coordinates.

use crate::abelian::{FgGroup, GroupHom};
use crate::sixterm::{ExactnessReport, SixTermError, SixTermSequence};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub matrix: Vec<Vec<i64>>,
    pub well_defined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupsSection {
    pub k0_ideal: GroupReport,
    pub k0_full: GroupReport,
    pub k0_quot: GroupReport,
    pub k1_ideal: GroupReport,
    pub k1_full: GroupReport,
    pub k1_quot: GroupReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapsSection {
    pub iota0: MapReport,
    pub pi0: MapReport,
    pub partial0: MapReport,
    pub partial1: MapReport,
    pub iota1: MapReport,
    pub pi1: MapReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessSection {
    pub k0_ideal: bool,
    pub k0_full: bool,
    pub k0_quot: bool,
    pub k1_ideal: bool,
    pub k1_full: bool,
    pub k1_quot: bool,
}

/// Invariant factors of each map's canonical-coordinate matrix (units kept,
/// zeros dropped). Deterministic given the input file; for maps with torsion
/// on either side the values depend on the stored canonical bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFactorsSection {
    pub iota0: Vec<i64>,
    pub pi0: Vec<i64>,
    pub partial0: Vec<i64>,
    pub partial1: Vec<i64>,
    pub iota1: Vec<i64>,
    pub pi1: Vec<i64>,
}

/// The basis-independent fingerprint of a sequence: group invariants plus
/// map factors. A necessary condition for isomorphism of sequences, not a
/// decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub groups: GroupsSection,
    pub map_factors: MapFactorsSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixTermReport {
    pub groups: GroupsSection,
    pub maps: MapsSection,
    pub exactness: ExactnessSection,
    pub partial0_zero: bool,
    pub summary: MapFactorsSection,
}

fn to_i64(v: &BigInt) -> Result<i64, SixTermError> {
    i64::try_from(v).map_err(|_| SixTermError::ReportOverflow)
}

pub fn group_report(g: &FgGroup) -> Result<GroupReport, SixTermError> {
    Ok(GroupReport {
        invariant_factors: g
            .invariant_factors()
            .iter()
            .map(to_i64)
            .collect::<Result<_, _>>()?,
        free_rank: g.free_rank(),
    })
}

fn map_report(h: &GroupHom) -> Result<MapReport, SixTermError> {
    Ok(MapReport {
        matrix: h.lift().to_i64_rows().ok_or(SixTermError::ReportOverflow)?,
        well_defined: true,
    })
}

fn map_factors(h: &GroupHom) -> Result<Vec<i64>, SixTermError> {
    h.canonical_factors().iter().map(to_i64).collect()
}

pub fn groups_section(seq: &SixTermSequence) -> Result<GroupsSection, SixTermError> {
    Ok(GroupsSection {
        k0_ideal: group_report(&seq.k0_ideal)?,
        k0_full: group_report(&seq.k0_full)?,
        k0_quot: group_report(&seq.k0_quot)?,
        k1_ideal: group_report(&seq.k1_ideal)?,
        k1_full: group_report(&seq.k1_full)?,
        k1_quot: group_report(&seq.k1_quot)?,
    })
}

/// The canonical invariant summary of a sequence.
pub fn invariant_summary(seq: &SixTermSequence) -> Result<InvariantSummary, SixTermError> {
    Ok(InvariantSummary {
        groups: groups_section(seq)?,
        map_factors: MapFactorsSection {
            iota0: map_factors(&seq.iota0)?,
            pi0: map_factors(&seq.pi0)?,
            partial0: map_factors(&seq.partial0)?,
            partial1: map_factors(&seq.partial1)?,
            iota1: map_factors(&seq.iota1)?,
            pi1: map_factors(&seq.pi1)?,
        },
    })
}

/// The full JSON report for a sequence and its exactness verdicts.
pub fn six_term_report(
    seq: &SixTermSequence,
    exactness: &ExactnessReport,
) -> Result<SixTermReport, SixTermError> {
    let summary = invariant_summary(seq)?;
    Ok(SixTermReport {
        groups: summary.groups,
        maps: MapsSection {
            iota0: map_report(&seq.iota0)?,
            pi0: map_report(&seq.pi0)?,
            partial0: map_report(&seq.partial0)?,
            partial1: map_report(&seq.partial1)?,
            iota1: map_report(&seq.iota1)?,
            pi1: map_report(&seq.pi1)?,
        },
        exactness: ExactnessSection {
            k0_ideal: exactness.nodes[0],
            k0_full: exactness.nodes[1],
            k0_quot: exactness.nodes[2],
            k1_ideal: exactness.nodes[3],
            k1_full: exactness.nodes[4],
            k1_quot: exactness.nodes[5],
        },
        partial0_zero: exactness.partial0_zero,
        summary: summary.map_factors,
    })
}
