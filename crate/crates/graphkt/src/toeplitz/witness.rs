use super::algebra::{AlgMatrix, AlgebraElement, Path, PathTerm};
use crate::graph::{AdmissiblePair, Edge, Graph, GraphError, RelativeGraph, VertexId};
use crate::sixterm::{decompose, kgroup_matrix, SixTermError};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ToeplitzError {
    #[error("witness vector has length {got}, the relative set has {expected} vertices")]
    VectorLength { got: usize, expected: usize },
    #[error("vector is not in the kernel of the K-theory presentation matrix")]
    NotInKernel,
    #[error("index counts disagree at vertex {0:?} (violates the matchup identity)")]
    CountMismatch(String),
    #[error("residue is not in the span of the relative-set gap elements")]
    GapResidue,
    #[error("defect entry does not match a K0-extraction pattern: {0}")]
    ResidueExtraction(String),
    #[error("integer outside the supported coefficient range")]
    Overflow,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    SixTerm(#[from] SixTermError),
}

/// A member of an index set: a vertex `v` with `r(v) = v`, or an edge `e`
/// with range `r(e)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IndexItem {
    Vertex(VertexId),
    Edge(Edge),
}

impl IndexItem {
    pub fn range(&self) -> VertexId {
        match self {
            IndexItem::Vertex(v) => *v,
            IndexItem::Edge(e) => e.target,
        }
    }
}

/// The indexing data attached to a kernel vector `x`:
///
/// ```text
/// up   = {(e,i) : 1 ≤ i ≤ −x_{s(e)}} ∪ {(v,i) : 1 ≤ i ≤ x_v}
/// down = {(e,i) : 1 ≤ i ≤ x_{s(e)}} ∪ {(v,i) : 1 ≤ i ≤ −x_v}
/// ```
///
/// Both sets are finite with the same number `h` of elements, matched up
/// range-vertex by range-vertex. The stored bijections onto `{0, …, h−1}`
/// pair members of equal range, so positions shared between the two sets
/// always carry the same range vertex.
#[derive(Clone, Debug)]
pub struct WitnessIndex {
    x: Vec<i64>,
    up_slots: Vec<(IndexItem, u64)>,
    down_slots: Vec<(IndexItem, u64)>,
    up_pos: HashMap<(IndexItem, u64), usize>,
    down_pos: HashMap<(IndexItem, u64), usize>,
}

impl WitnessIndex {
    /// Canonical pairing: within each range class, up and down members are
    /// sorted and paired positionally.
    pub fn new(rg: &RelativeGraph, x: &[i64]) -> Result<WitnessIndex, ToeplitzError> {
        WitnessIndex::build(rg, x, None)
    }

    /// Alternative pairing: the down members of each range class are
    /// shuffled before pairing. Still satisfies the range-matching
    /// property, so class-level outputs must not depend on the seed.
    pub fn with_shuffled_pairing(
        rg: &RelativeGraph,
        x: &[i64],
        seed: u64,
    ) -> Result<WitnessIndex, ToeplitzError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        WitnessIndex::build(rg, x, Some(&mut rng))
    }

    fn build(
        rg: &RelativeGraph,
        x: &[i64],
        mut shuffle: Option<&mut ChaCha8Rng>,
    ) -> Result<WitnessIndex, ToeplitzError> {
        let relset = rg.relset_ordered();
        if x.len() != relset.len() {
            return Err(ToeplitzError::VectorLength { got: x.len(), expected: relset.len() });
        }
        let as_big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        if !kgroup_matrix(rg).mul_vec(&as_big).iter().all(|v| v.is_zero()) {
            return Err(ToeplitzError::NotInKernel);
        }

        let mut up: Vec<(IndexItem, u64)> = Vec::new();
        let mut down: Vec<(IndexItem, u64)> = Vec::new();
        for (idx, &w) in relset.iter().enumerate() {
            let xw = x[idx];
            if xw == 0 {
                continue;
            }
            let count = xw.unsigned_abs();
            let vertex_side = if xw > 0 { &mut up } else { &mut down };
            for i in 1..=count {
                vertex_side.push((IndexItem::Vertex(w), i));
            }
            // relative-set vertices are regular, so the edge enumeration is
            // finite
            let edges = rg.graph().out_edges(w)?;
            let edge_side = if xw > 0 { &mut down } else { &mut up };
            for e in edges {
                for i in 1..=count {
                    edge_side.push((IndexItem::Edge(e), i));
                }
            }
        }

        let mut up_classes: BTreeMap<VertexId, Vec<(IndexItem, u64)>> = BTreeMap::new();
        for m in up {
            up_classes.entry(m.0.range()).or_default().push(m);
        }
        let mut down_classes: BTreeMap<VertexId, Vec<(IndexItem, u64)>> = BTreeMap::new();
        for m in down {
            down_classes.entry(m.0.range()).or_default().push(m);
        }

        let mut up_slots = Vec::new();
        let mut down_slots = Vec::new();
        let mut up_pos = HashMap::new();
        let mut down_pos = HashMap::new();
        let ranges: Vec<VertexId> =
            up_classes.keys().chain(down_classes.keys()).copied().collect();
        for v in ranges {
            let ups = up_classes.remove(&v).unwrap_or_default();
            let mut downs = down_classes.remove(&v).unwrap_or_default();
            if ups.len() != downs.len() {
                return Err(ToeplitzError::CountMismatch(
                    rg.graph().vertex_name(v).to_string(),
                ));
            }
            // members arrive sorted within each class by construction order;
            // sort anyway to make the canonical pairing explicit
            let mut ups = ups;
            ups.sort_unstable();
            downs.sort_unstable();
            if let Some(rng) = shuffle.as_deref_mut() {
                downs.shuffle(rng);
            }
            for (u, d) in ups.into_iter().zip(downs) {
                let pos = up_slots.len();
                up_pos.insert(u, pos);
                down_pos.insert(d, pos);
                up_slots.push(u);
                down_slots.push(d);
            }
        }

        Ok(WitnessIndex { x: x.to_vec(), up_slots, down_slots, up_pos, down_pos })
    }

    /// The common size of the two index sets.
    pub fn h(&self) -> usize {
        self.up_slots.len()
    }

    pub fn x(&self) -> &[i64] {
        &self.x
    }

    pub fn up_slots(&self) -> &[(IndexItem, u64)] {
        &self.up_slots
    }

    pub fn down_slots(&self) -> &[(IndexItem, u64)] {
        &self.down_slots
    }

    pub fn up_position(&self, item: IndexItem, i: u64) -> usize {
        self.up_pos[&(item, i)]
    }

    pub fn down_position(&self, item: IndexItem, i: u64) -> usize {
        self.down_pos[&(item, i)]
    }
}

/// The matrices `V`, `P` and `U = V + (1 − P)` attached to a witness index,
/// with entries in the Toeplitz algebra of the witness graph:
///
/// ```text
/// V = Σ_{1≤i≤x_w, s(e)=w}  s_e  E(⟨w,i⟩↑, ⟨e,i⟩↓)
///   + Σ_{1≤i≤−x_w, s(e)=w} s_e* E(⟨e,i⟩↑, ⟨w,i⟩↓)
/// P = Σ_{(m,i)∈up} p_{r(m)} E(⟨m,i⟩↑, ⟨m,i⟩↑)
/// ```
pub fn build_vpu(rg: &RelativeGraph, w: &WitnessIndex) -> (AlgMatrix, AlgMatrix, AlgMatrix) {
    let h = w.h();
    let mut v = AlgMatrix::zeros(h);
    for (idx, &src) in rg.relset_ordered().iter().enumerate() {
        let xw = w.x()[idx];
        if xw == 0 {
            continue;
        }
        let edges = rg.graph().out_edges(src).expect("relset vertex is regular");
        for i in 1..=xw.unsigned_abs() {
            for &e in &edges {
                if xw > 0 {
                    let row = w.up_position(IndexItem::Vertex(src), i);
                    let col = w.down_position(IndexItem::Edge(e), i);
                    v.add_at(row, col, &AlgebraElement::edge_isometry(e));
                } else {
                    let row = w.up_position(IndexItem::Edge(e), i);
                    let col = w.down_position(IndexItem::Vertex(src), i);
                    v.add_at(row, col, &AlgebraElement::edge_coisometry(e));
                }
            }
        }
    }
    let mut p = AlgMatrix::zeros(h);
    for (pos, &(item, _)) in w.up_slots().iter().enumerate() {
        p.add_at(pos, pos, &AlgebraElement::vertex_projection(item.range()));
    }
    let one = AlgMatrix::scalar(h, &AlgebraElement::unit(rg.graph()));
    let u = &(&v + &one) - &p;
    (v, p, u)
}

/// Verifies the four structural identities of the witness matrices as exact
/// symbolic equalities: the down-indexed form of `P`, the expansion of `V*`,
/// and the expansions of `VV*` and `V*V`.
pub fn verify_four_identities(
    rg: &RelativeGraph,
    w: &WitnessIndex,
    v: &AlgMatrix,
    p: &AlgMatrix,
) -> bool {
    let h = w.h();
    let mut p_down = AlgMatrix::zeros(h);
    for (pos, &(item, _)) in w.down_slots().iter().enumerate() {
        p_down.add_at(pos, pos, &AlgebraElement::vertex_projection(item.range()));
    }

    let mut vstar_expected = AlgMatrix::zeros(h);
    let mut vvstar_expected = AlgMatrix::zeros(h);
    let mut vstarv_expected = AlgMatrix::zeros(h);
    for (idx, &src) in rg.relset_ordered().iter().enumerate() {
        let xw = w.x()[idx];
        if xw == 0 {
            continue;
        }
        let edges = rg.graph().out_edges(src).expect("relset vertex is regular");
        for i in 1..=xw.unsigned_abs() {
            for &e in &edges {
                if xw > 0 {
                    let up_w = w.up_position(IndexItem::Vertex(src), i);
                    let down_e = w.down_position(IndexItem::Edge(e), i);
                    vstar_expected.add_at(down_e, up_w, &AlgebraElement::edge_coisometry(e));
                    vvstar_expected.add_at(up_w, up_w, &AlgebraElement::edge_projection(e));
                    vstarv_expected.add_at(
                        down_e,
                        down_e,
                        &AlgebraElement::vertex_projection(e.target),
                    );
                } else {
                    let up_e = w.up_position(IndexItem::Edge(e), i);
                    let down_w = w.down_position(IndexItem::Vertex(src), i);
                    vstar_expected.add_at(down_w, up_e, &AlgebraElement::edge_isometry(e));
                    vvstar_expected.add_at(
                        up_e,
                        up_e,
                        &AlgebraElement::vertex_projection(e.target),
                    );
                    vstarv_expected.add_at(down_w, down_w, &AlgebraElement::edge_projection(e));
                }
            }
        }
    }

    let vstar = v.adjoint();
    p == &p_down
        && vstar == vstar_expected
        && (v * &vstar) == vvstar_expected
        && (&vstar * v) == vstarv_expected
}

/// Decomposes a diagonal matrix into `Σ c_{j,w} g_w E_jj` with `w` in the
/// relative set, returning the coefficient total per relative-set vertex.
fn gap_decompose(rg: &RelativeGraph, m: &AlgMatrix) -> Result<Vec<i64>, ToeplitzError> {
    let relset = rg.relset_ordered();
    let index_of: HashMap<VertexId, usize> =
        relset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut coeffs = vec![0i64; relset.len()];
    for i in 0..m.size() {
        for j in 0..m.size() {
            let entry = m.get(i, j);
            if i != j {
                if !entry.is_zero() {
                    return Err(ToeplitzError::GapResidue);
                }
                continue;
            }
            let vertex_terms: Vec<(VertexId, i64)> = entry
                .terms()
                .filter_map(|(t, c)| t.as_vertex_projection().map(|v| (v, c)))
                .collect();
            let mut rem = entry.clone();
            for (v, c) in vertex_terms {
                let Some(&k) = index_of.get(&v) else {
                    return Err(ToeplitzError::GapResidue);
                };
                let gap = AlgebraElement::gap_element(rg.graph(), v)?;
                rem = &rem - &gap.scale(c);
                coeffs[k] = coeffs[k].checked_add(c).ok_or(ToeplitzError::Overflow)?;
            }
            if !rem.is_zero() {
                return Err(ToeplitzError::GapResidue);
            }
        }
    }
    Ok(coeffs)
}

/// Expresses the two defects `P − VV*` and `P − V*V` in the gap elements
/// `g_w = p_w − Σ_{s(e)=w} s_e s_e*` of the relative set and returns the
/// difference of their coefficient vectors. For a valid witness this equals
/// the kernel vector `x` itself.
pub fn gap_residue(
    rg: &RelativeGraph,
    w: &WitnessIndex,
    v: &AlgMatrix,
    p: &AlgMatrix,
) -> Result<Vec<i64>, ToeplitzError> {
    let vstar = v.adjoint();
    let up = gap_decompose(rg, &(p - &(v * &vstar)))?;
    let down = gap_decompose(rg, &(p - &(&vstar * v)))?;
    debug_assert_eq!(up.len(), w.x().len());
    Ok(up
        .into_iter()
        .zip(down)
        .map(|(a, b)| a.checked_sub(b).expect("coefficient overflow"))
        .collect())
}

/// One diagonal defect entry reduced to a K₀(ideal) contribution vector.
///
/// Vertex projections at regular vertices outside `H` are first expanded by
/// the full Cuntz-Krieger relation `p_w = Σ_{s(e)=w} s_e s_e*` (valid in the
/// graph algebra, where the defect class lives). What remains must be a
/// combination of range projections `s_e s_e*` with `r(e) ∈ H` — each
/// contributing `e_{r(e)}` — and gap projections at vertices of `S`, each
/// contributing `e_{v₀}`.
fn extract_ideal_class(
    g: &Graph,
    p: &AdmissiblePair,
    ideal_position: &HashMap<VertexId, usize>,
    m: &AlgMatrix,
) -> Result<Vec<BigInt>, ToeplitzError> {
    let mut out = vec![BigInt::zero(); ideal_position.len()];
    for i in 0..m.size() {
        for j in 0..m.size() {
            let entry = m.get(i, j);
            if i != j {
                if !entry.is_zero() {
                    return Err(ToeplitzError::ResidueExtraction(
                        "off-diagonal defect entry".into(),
                    ));
                }
                continue;
            }
            let mut rem = entry.clone();

            // Expand p_w for regular w outside H.
            let expandable: Vec<(VertexId, i64)> = rem
                .terms()
                .filter_map(|(t, c)| t.as_vertex_projection().map(|v| (v, c)))
                .filter(|&(v, _)| !p.h().contains(&v) && g.is_regular(v))
                .collect();
            for (v, c) in expandable {
                rem.add_term(PathTerm::new(Path::vertex(v), Path::vertex(v)), -c);
                for e in g.out_edges(v)? {
                    rem.add_term(PathTerm::new(Path::single(e), Path::single(e)), c);
                }
            }

            // Gap projections at breaking vertices of S.
            let gap_terms: Vec<(VertexId, i64)> = rem
                .terms()
                .filter_map(|(t, c)| t.as_vertex_projection().map(|v| (v, c)))
                .collect();
            for (v, c) in gap_terms {
                if !p.s().contains(&v) {
                    return Err(ToeplitzError::ResidueExtraction(format!(
                        "vertex projection at {} cannot be reduced",
                        g.vertex_name(v)
                    )));
                }
                let gap = AlgebraElement::gap_projection(g, v, |w| !p.h().contains(&w))?;
                rem = &rem - &gap.scale(c);
                out[ideal_position[&v]] += BigInt::from(c);
            }

            // Everything left must be a range projection landing in H.
            for (t, c) in rem.terms() {
                let Some(e) = t.as_edge_projection() else {
                    return Err(ToeplitzError::ResidueExtraction(format!(
                        "unreducible term {t:?}"
                    )));
                };
                if !p.h().contains(&e.target) {
                    return Err(ToeplitzError::ResidueExtraction(format!(
                        "range projection outside H at edge {}->{}",
                        g.vertex_name(e.source),
                        g.vertex_name(e.target)
                    )));
                }
                out[ideal_position[&e.target]] += BigInt::from(c);
            }
        }
    }
    Ok(out)
}

/// The symbolic index-map computation: lifts the witness unitary of the
/// quotient to a partial isometry over the Toeplitz algebra of the whole
/// graph (sums restricted to edges with range outside `H`), computes the
/// defects `1 − ÛÛ*` and `1 − Û*Û`, and extracts the K₀ class of the ideal
/// from the difference.
///
/// `x` is a kernel vector of the quotient presentation matrix in the
/// decomposition coordinates (`E⁰_reg ∖ H` followed by `S`); the result is
/// an ambient vector of the ideal presentation (classes `E⁰_reg ∩ H`,
/// `E⁰_sing ∩ H`, `S`). Its cokernel class agrees with the index-map matrix
/// `[Xᵗ 0; ξᵗ 0; 0 I]` applied to `x`.
pub fn index_oracle(
    g: &Graph,
    p: &AdmissiblePair,
    x: &[i64],
) -> Result<Vec<BigInt>, ToeplitzError> {
    let dec = decompose(g, p)?;
    let domain = dec.quotient_domain();
    if x.len() != domain.len() {
        return Err(ToeplitzError::VectorLength { got: x.len(), expected: domain.len() });
    }

    // Reorder x from decomposition coordinates to the quotient graph's
    // relative-set order, and keep the vertex identification by name.
    let qrg = g.quotient_relative_graph(p);
    let value_at: HashMap<VertexId, i64> =
        domain.iter().copied().zip(x.iter().copied()).collect();
    let original_of: Vec<VertexId> = (0..qrg.graph().vertex_count())
        .map(|qv| {
            g.vertex_index(qrg.graph().vertex_name(qv))
                .expect("quotient vertices keep their names")
        })
        .collect();
    let xq: Vec<i64> =
        qrg.relset_ordered().iter().map(|&qv| value_at[&original_of[qv]]).collect();

    let w = WitnessIndex::new(&qrg, &xq)?;
    let (v_hat, p_hat, _u_hat) = build_vpu(&qrg, &w);
    let relabel = |qv: VertexId| original_of[qv];
    let v_hat = v_hat.relabel(&relabel);
    let p_hat = p_hat.relabel(&relabel);

    let vstar = v_hat.adjoint();
    let defect_up = &p_hat - &(&v_hat * &vstar);
    let defect_down = &p_hat - &(&vstar * &v_hat);

    let ideal_position: HashMap<VertexId, usize> = dec
        .ideal_vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let up = extract_ideal_class(g, p, &ideal_position, &defect_up)?;
    let down = extract_ideal_class(g, p, &ideal_position, &defect_down)?;
    Ok(up.into_iter().zip(down).map(|(a, b)| a - b).collect())
}
