//! Shared corpus and oracle helpers for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use graphkt::corpus;
use graphkt::sixterm::decompose;
use graphkt::toeplitz::WitnessIndex;
use graphkt::{
    AdmissiblePair, AlgebraElement, Edge, Graph, Multiplicity, Path, PathTerm, VertexId,
    VertexSet,
};
use num_bigint::BigInt;
use rand::Rng;

/// Random corpus plus the example families.
pub fn corpus_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut graphs = corpus::example_family_instances();
    graphs.extend(corpus::sample_graphs(seed, count, 4));
    graphs
}

/// A (graph, admissible pair, quotient kernel vector) triple; the raw
/// material of the index-map and witness suites.
pub struct WitnessTriple {
    pub graph: Graph,
    pub pair: AdmissiblePair,
    /// Kernel vector of the quotient presentation matrix, in decomposition
    /// coordinates (regular-quotient vertices first, then S).
    pub x: Vec<i64>,
}

fn small_i64(v: &BigInt) -> Option<i64> {
    i64::try_from(v).ok().filter(|k| k.abs() <= 12)
}

/// Harvests at least `min` witness triples from the corpus, starting with
/// the example families. Deterministic for a fixed seed.
pub fn harvest_witness_triples(seed: u64, min: usize) -> Vec<WitnessTriple> {
    let mut triples = Vec::new();
    for g in corpus_graphs(seed, 600) {
        if triples.len() >= min {
            break;
        }
        for pair in g.admissible_pairs() {
            let Ok(dec) = decompose(&g, &pair) else { continue };
            let kernel = graphkt::kernel_basis(&dec.quotient_matrix());
            for j in 0..kernel.cols() {
                let col = kernel.column(j);
                let Some(x) = col.iter().map(small_i64).collect::<Option<Vec<i64>>>() else {
                    continue;
                };
                // keep the symbolic side tractable
                let qrg = g.quotient_relative_graph(&pair);
                let xq = reorder_to_relset(&g, &qrg, &dec.quotient_domain(), &x);
                match WitnessIndex::new(&qrg, &xq) {
                    Ok(w) if w.h() <= 60 => {
                        triples.push(WitnessTriple { graph: g.clone(), pair: pair.clone(), x });
                    }
                    _ => continue,
                }
            }
        }
    }
    assert!(
        triples.len() >= min,
        "harvested only {} witness triples, expected at least {min}",
        triples.len()
    );
    triples
}

/// Reorders a vector indexed by decomposition coordinates (original vertex
/// ids in `domain`) to the relative-set order of `rg`, matching vertices by
/// name.
pub fn reorder_to_relset(g: &Graph, rg: &graphkt::RelativeGraph, domain: &[VertexId], x: &[i64]) -> Vec<i64> {
    rg.relset_ordered()
        .iter()
        .map(|&qv| {
            let orig = g.vertex_index(rg.graph().vertex_name(qv)).unwrap();
            let k = domain.iter().position(|&d| d == orig).unwrap();
            x[k]
        })
        .collect()
}

/// The forward-closure of a vertex set: the smallest hereditary superset.
pub fn hereditary_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let mut h = seed.clone();
    let mut stack: Vec<VertexId> = h.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for w in 0..g.vertex_count() {
            if !g.multiplicity(v, w).is_zero() && h.insert(w) {
                stack.push(w);
            }
        }
    }
    h
}

/// A random backward path of the requested length ending at `range`, if the
/// graph supports one. Parallel-edge copies are capped so infinite
/// multiplicities stay usable.
pub fn random_path_into(
    rng: &mut impl Rng,
    g: &Graph,
    range: VertexId,
    len: usize,
) -> Option<Path> {
    if len == 0 {
        return Some(Path::vertex(range));
    }
    let mut edges = Vec::with_capacity(len);
    let mut cur = range;
    for _ in 0..len {
        let sources: Vec<VertexId> = (0..g.vertex_count())
            .filter(|&w| !g.multiplicity(w, cur).is_zero())
            .collect();
        if sources.is_empty() {
            return None;
        }
        let w = sources[rng.gen_range(0..sources.len())];
        let cap = match g.multiplicity(w, cur) {
            Multiplicity::Finite(m) => m.min(3),
            Multiplicity::Infinite => 3,
        };
        let copy = rng.gen_range(1..=cap);
        edges.push(Edge { source: w, target: cur, copy });
        cur = w;
    }
    edges.reverse();
    Some(Path::from_edges(edges))
}

/// A random nonzero basis term `c · s_α s_β*` over the graph.
pub fn random_basis_term(rng: &mut impl Rng, g: &Graph) -> AlgebraElement {
    loop {
        let range = rng.gen_range(0..g.vertex_count());
        let la = rng.gen_range(0..=2);
        let lb = rng.gen_range(0..=2);
        let (Some(alpha), Some(beta)) = (
            random_path_into(rng, g, range, la),
            random_path_into(rng, g, range, lb),
        ) else {
            continue;
        };
        let coeff = *[-2i64, -1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
        return AlgebraElement::from_term(PathTerm::new(alpha, beta), coeff);
    }
}
