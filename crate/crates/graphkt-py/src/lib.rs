//! Python bindings: graphs, ideal lattices, K-groups, six-term reports, and
//! the symbolic index-map oracle.
//!
//! Structured results (six-term and witness reports) are returned as JSON
//! strings in the same schema the CLI emits; small results use native Python
//! types.

use graphkt::report::six_term_report;
use graphkt::sixterm::decompose;
use graphkt::toeplitz::{build_vpu, gap_residue, index_oracle, witness_report, WitnessIndex};
use graphkt::{
    build_six_term, cone_generators, kernel_basis, kgroups, verify_exactness, AdmissiblePair,
    FgGroup, Graph, Multiplicity, RelativeGraph, VertexSet,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum MultArg {
    #[pyo3(transparent)]
    Count(u64),
    #[pyo3(transparent)]
    Token(String),
}

impl MultArg {
    fn into_multiplicity(self) -> PyResult<Multiplicity> {
        match self {
            MultArg::Count(n) => Ok(Multiplicity::Finite(n)),
            MultArg::Token(s) if s == "inf" => Ok(Multiplicity::Infinite),
            MultArg::Token(s) => Err(err(format!(
                "multiplicity must be a nonnegative integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// A finite directed graph with edge multiplicities in ℕ ∪ {"inf"}.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

impl PyGraph {
    fn vertex_set(&self, names: Vec<String>) -> PyResult<VertexSet> {
        names
            .into_iter()
            .map(|n| {
                self.inner
                    .vertex_index(&n)
                    .ok_or_else(|| err(format!("unknown vertex {n:?}")))
            })
            .collect()
    }

    fn pair(&self, h: Vec<String>, s: Vec<String>) -> PyResult<AdmissiblePair> {
        AdmissiblePair::new(&self.inner, self.vertex_set(h)?, self.vertex_set(s)?).map_err(err)
    }

    fn names(&self, ids: impl IntoIterator<Item = usize>) -> Vec<String> {
        ids.into_iter()
            .map(|v| self.inner.vertex_name(v).to_string())
            .collect()
    }

    fn relative(&self, relset: Option<Vec<String>>) -> PyResult<RelativeGraph> {
        match relset {
            None => Ok(RelativeGraph::full(self.inner.clone())),
            Some(names) => {
                RelativeGraph::new(self.inner.clone(), self.vertex_set(names)?).map_err(err)
            }
        }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, MultArg)>) -> PyResult<Self> {
        let parsed: Vec<(String, String, Multiplicity)> = edges
            .into_iter()
            .map(|(s, t, m)| Ok((s, t, m.into_multiplicity()?)))
            .collect::<PyResult<_>>()?;
        let borrowed: Vec<(&str, &str, Multiplicity)> =
            parsed.iter().map(|(s, t, m)| (s.as_str(), t.as_str(), *m)).collect();
        Ok(PyGraph { inner: Graph::from_edges(vertices, &borrowed).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertex_names().to_vec()
    }

    /// Multiplicity of the edge pair, or None for infinitely many.
    fn multiplicity(&self, source: &str, target: &str) -> PyResult<Option<u64>> {
        let s = self.inner.vertex_index(source).ok_or_else(|| err("unknown source"))?;
        let t = self.inner.vertex_index(target).ok_or_else(|| err("unknown target"))?;
        Ok(self.inner.multiplicity(s, t).finite())
    }

    fn regular_vertices(&self) -> Vec<String> {
        self.names(self.inner.regular_vertices())
    }

    fn singular_vertices(&self) -> Vec<String> {
        self.names(self.inner.singular_vertices())
    }

    fn condition_k(&self) -> bool {
        self.inner.condition_k()
    }

    fn saturate(&self, h0: Vec<String>) -> PyResult<Vec<String>> {
        let set = self.vertex_set(h0)?;
        Ok(self.names(self.inner.saturate(&set).map_err(err)?))
    }

    fn breaking_vertices(&self, h: Vec<String>) -> PyResult<Vec<String>> {
        let set = self.vertex_set(h)?;
        Ok(self.names(self.inner.breaking_vertices(&set).map_err(err)?))
    }

    /// All admissible pairs as (H, S) name lists, in canonical order.
    fn admissible_pairs(&self) -> Vec<(Vec<String>, Vec<String>)> {
        self.inner
            .admissible_pairs()
            .into_iter()
            .map(|p| {
                (
                    self.names(p.h().iter().copied()),
                    self.names(p.s().iter().copied()),
                )
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={:?})", self.inner.vertex_names())
    }
}

/// (invariant_factors, free_rank) of a presented group.
type GroupData = (Vec<i64>, usize);

fn group_tuple(g: &FgGroup) -> PyResult<GroupData> {
    let factors = g
        .invariant_factors()
        .iter()
        .map(i64::try_from)
        .collect::<Result<_, _>>()
        .map_err(|_| err("invariant factor exceeds i64"))?;
    Ok((factors, g.free_rank()))
}

/// K₀ and K₁ of the (relative) graph algebra as (invariant_factors, free_rank)
/// pairs. The relative set defaults to all regular vertices.
#[pyfunction]
#[pyo3(signature = (graph, relset=None))]
fn kgroups_of(graph: &PyGraph, relset: Option<Vec<String>>) -> PyResult<(GroupData, GroupData)> {
    let kg = kgroups(&graph.relative(relset)?);
    Ok((group_tuple(&kg.k0)?, group_tuple(&kg.k1)?))
}

/// Full six-term report (groups, maps, exactness, summary) as a JSON string.
#[pyfunction]
#[pyo3(signature = (graph, h, s=vec![]))]
fn six_term(graph: &PyGraph, h: Vec<String>, s: Vec<String>) -> PyResult<String> {
    let pair = graph.pair(h, s)?;
    let seq = build_six_term(&graph.inner, &pair).map_err(err)?;
    let exact = verify_exactness(&seq).map_err(err)?;
    let report = six_term_report(&seq, &exact).map_err(err)?;
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

/// True when the sequence is exact at all six nodes with ∂₀ = 0.
#[pyfunction]
#[pyo3(signature = (graph, h, s=vec![]))]
fn sequence_is_exact(graph: &PyGraph, h: Vec<String>, s: Vec<String>) -> PyResult<bool> {
    let pair = graph.pair(h, s)?;
    let seq = build_six_term(&graph.inner, &pair).map_err(err)?;
    Ok(verify_exactness(&seq).map_err(err)?.all_exact())
}

/// Compares the index-map matrix with the symbolic defect computation over
/// every kernel basis vector of the quotient; true when they agree.
#[pyfunction]
#[pyo3(signature = (graph, h, s=vec![]))]
fn oracle_agrees(graph: &PyGraph, h: Vec<String>, s: Vec<String>) -> PyResult<bool> {
    let pair = graph.pair(h, s)?;
    let dec = decompose(&graph.inner, &pair).map_err(err)?;
    let kernel = kernel_basis(&dec.quotient_matrix());
    let k0_ideal = FgGroup::cokernel(dec.ideal_matrix());
    let index_matrix = dec.index_map_matrix();
    for j in 0..kernel.cols() {
        let col = kernel.column(j);
        let x: Vec<i64> = col
            .iter()
            .map(i64::try_from)
            .collect::<Result<_, _>>()
            .map_err(|_| err("kernel vector exceeds i64"))?;
        let matrix_class = index_matrix.mul_vec(&col);
        let oracle_class = index_oracle(&graph.inner, &pair, &x).map_err(err)?;
        if k0_ideal.reduce(&matrix_class) != k0_ideal.reduce(&oracle_class) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Witness report (index sets, h, gap residue) for a kernel vector over the
/// relative set, as a JSON string. `x` follows the order of `relset`.
#[pyfunction]
fn witness(graph: &PyGraph, relset: Vec<String>, x: Vec<i64>) -> PyResult<String> {
    if relset.len() != x.len() {
        return Err(err("x must have one coordinate per relset vertex"));
    }
    let ids = graph.vertex_set(relset.clone())?;
    if ids.len() != relset.len() {
        return Err(err("relset contains duplicates"));
    }
    let mut by_vertex = std::collections::BTreeMap::new();
    for (name, &value) in relset.iter().zip(&x) {
        by_vertex.insert(graph.inner.vertex_index(name).unwrap(), value);
    }
    let rg = RelativeGraph::new(graph.inner.clone(), ids).map_err(err)?;
    let ordered: Vec<i64> = rg.relset_ordered().iter().map(|v| by_vertex[v]).collect();
    let w = WitnessIndex::new(&rg, &ordered).map_err(err)?;
    let (v_mat, p_mat, _u) = build_vpu(&rg, &w);
    let residue = gap_residue(&rg, &w, &v_mat, &p_mat).map_err(err)?;
    let report = witness_report(rg.graph(), &w, &residue, None);
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

/// Positive-cone generators of K₀ in the ambient of the presentation, with
/// the edge-set size capped by `bound`.
#[pyfunction]
#[pyo3(signature = (graph, bound, relset=None))]
fn cone(graph: &PyGraph, bound: u64, relset: Option<Vec<String>>) -> PyResult<Vec<Vec<i64>>> {
    let rg = graph.relative(relset)?;
    let cone = cone_generators(&rg, bound);
    cone.vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(i64::try_from)
                .collect::<Result<Vec<i64>, _>>()
                .map_err(|_| err("cone entry exceeds i64"))
        })
        .collect()
}

/// The worked example families.
#[pyfunction]
fn family_e(x: u64, y: u64, z: u64) -> PyGraph {
    PyGraph { inner: graphkt::corpus::family_e(x, y, z) }
}

#[pyfunction]
fn family_f(y: u64, z: u64) -> PyGraph {
    PyGraph { inner: graphkt::corpus::family_f(y, z) }
}

#[pymodule]
fn graphkt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(kgroups_of, m)?)?;
    m.add_function(wrap_pyfunction!(six_term, m)?)?;
    m.add_function(wrap_pyfunction!(sequence_is_exact, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_agrees, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(cone, m)?)?;
    m.add_function(wrap_pyfunction!(family_e, m)?)?;
    m.add_function(wrap_pyfunction!(family_f, m)?)?;
    Ok(())
}
