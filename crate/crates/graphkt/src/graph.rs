//! Directed multigraphs with multiplicities in ℕ ∪ {∞}, and the vertex-set
//! combinatorics that parametrizes gauge-invariant ideals: hereditary and
//! saturated subsets, breaking vertices, admissible pairs, and the
//! subgraph/quotient constructions attached to an admissible pair.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub type VertexId = usize;
pub type VertexSet = BTreeSet<VertexId>;

/// Edge multiplicity: a finite count or ∞.
///
/// ∞ is absorbing under addition. Any operation that would have to enumerate
/// infinitely many edges individually reports an error instead; call sites
/// that rely on finiteness document why it is guaranteed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_zero(self) -> bool {
        self == Multiplicity::Finite(0)
    }

    pub fn is_infinite(self) -> bool {
        self == Multiplicity::Infinite
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

impl std::ops::Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl From<u64> for Multiplicity {
    fn from(n: u64) -> Self {
        Multiplicity::Finite(n)
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => serializer.serialize_u64(*n),
            Multiplicity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Token(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Count(n) => Ok(Multiplicity::Finite(n)),
            Raw::Token(s) if s == "inf" => Ok(Multiplicity::Infinite),
            Raw::Token(s) => Err(D::Error::custom(format!(
                "multiplicity must be a nonnegative integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// An edge of the graph, identified canonically as the `copy`-th parallel
/// edge (1-based) from `source` to `target`. This realizes the edge set
/// wherever finite enumeration is valid.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub copy: u64,
}

#[derive(Debug, Clone, Error)]
pub enum GraphError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge entry for ({0:?}, {1:?})")]
    DuplicateEdgeEntry(String, String),
    #[error("vertex set is not hereditary: {inside:?} reaches {outside:?}")]
    NotHereditary { inside: String, outside: String },
    #[error("vertex set is not saturated: every edge from the regular vertex {0:?} ends inside the set")]
    NotSaturated(String),
    #[error("{0:?} is not a breaking vertex for this hereditary set")]
    NotBreaking(String),
    #[error("cannot enumerate the edges of the infinite emitter {0:?}")]
    InfiniteEnumeration(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String, Multiplicity)>,
}

/// A finite directed graph with parallel-edge multiplicities.
///
/// Vertices keep the order in which they were listed; every matrix produced
/// downstream is reproducible bit-for-bit from that order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    adjacency: Vec<Vec<Multiplicity>>, // adjacency[v][w] = #edges v -> w
}

impl Graph {
    pub fn from_adjacency(
        vertices: Vec<String>,
        adjacency: Vec<Vec<Multiplicity>>,
    ) -> Result<Graph, GraphError> {
        let n = vertices.len();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        assert_eq!(adjacency.len(), n, "adjacency row count mismatch");
        assert!(
            adjacency.iter().all(|row| row.len() == n),
            "adjacency column count mismatch"
        );
        Ok(Graph { vertices, adjacency })
    }

    /// Convenience constructor from (source, target, multiplicity) entries.
    pub fn from_edges(
        vertices: Vec<String>,
        edges: &[(&str, &str, Multiplicity)],
    ) -> Result<Graph, GraphError> {
        let n = vertices.len();
        let mut g = Graph::from_adjacency(vertices, vec![vec![Multiplicity::Finite(0); n]; n])?;
        for (src, tgt, m) in edges {
            let s = g
                .vertex_index(src)
                .ok_or_else(|| GraphError::UnknownVertex(src.to_string()))?;
            let t = g
                .vertex_index(tgt)
                .ok_or_else(|| GraphError::UnknownVertex(tgt.to_string()))?;
            if !g.adjacency[s][t].is_zero() {
                return Err(GraphError::DuplicateEdgeEntry(src.to_string(), tgt.to_string()));
            }
            g.adjacency[s][t] = *m;
        }
        Ok(g)
    }

    pub fn from_json(input: &str) -> Result<Graph, GraphError> {
        let raw: GraphJson =
            serde_json::from_str(input).map_err(|e| GraphError::Json(e.to_string()))?;
        let n = raw.vertices.len();
        let mut g = Graph::from_adjacency(
            raw.vertices,
            vec![vec![Multiplicity::Finite(0); n]; n],
        )?;
        let mut seen = BTreeSet::new();
        for (src, tgt, m) in &raw.edges {
            let s = g
                .vertex_index(src)
                .ok_or_else(|| GraphError::UnknownVertex(src.clone()))?;
            let t = g
                .vertex_index(tgt)
                .ok_or_else(|| GraphError::UnknownVertex(tgt.clone()))?;
            if !seen.insert((s, t)) {
                return Err(GraphError::DuplicateEdgeEntry(src.clone(), tgt.clone()));
            }
            g.adjacency[s][t] = *m;
        }
        Ok(g)
    }

    /// Serializes in the interchange format: one edge entry per vertex pair
    /// with nonzero multiplicity, ordered by (source, target).
    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for v in 0..self.vertex_count() {
            for w in 0..self.vertex_count() {
                if !self.adjacency[v][w].is_zero() {
                    edges.push((
                        self.vertices[v].clone(),
                        self.vertices[w].clone(),
                        self.adjacency[v][w],
                    ));
                }
            }
        }
        serde_json::to_string_pretty(&GraphJson {
            vertices: self.vertices.clone(),
            edges,
        })
        .expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn multiplicity(&self, v: VertexId, w: VertexId) -> Multiplicity {
        self.adjacency[v][w]
    }

    pub fn out_degree(&self, v: VertexId) -> Multiplicity {
        self.adjacency[v]
            .iter()
            .fold(Multiplicity::Finite(0), |acc, m| acc + *m)
    }

    /// Regular means finite nonzero out-degree; sinks and infinite emitters
    /// are singular.
    pub fn is_regular(&self, v: VertexId) -> bool {
        matches!(self.out_degree(v), Multiplicity::Finite(n) if n > 0)
    }

    pub fn is_singular(&self, v: VertexId) -> bool {
        !self.is_regular(v)
    }

    /// Partition of the vertices into (regular, singular), in vertex order.
    pub fn classify_vertices(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        (0..self.vertex_count()).partition(|&v| self.is_regular(v))
    }

    pub fn regular_vertices(&self) -> Vec<VertexId> {
        self.classify_vertices().0
    }

    pub fn singular_vertices(&self) -> Vec<VertexId> {
        self.classify_vertices().1
    }

    /// The edges emitted by `v`, in canonical (target, copy) order. Errors
    /// if `v` is an infinite emitter.
    pub fn out_edges(&self, v: VertexId) -> Result<Vec<Edge>, GraphError> {
        let mut edges = Vec::new();
        for w in 0..self.vertex_count() {
            match self.adjacency[v][w] {
                Multiplicity::Finite(m) => {
                    for copy in 1..=m {
                        edges.push(Edge { source: v, target: w, copy });
                    }
                }
                Multiplicity::Infinite => {
                    return Err(GraphError::InfiniteEnumeration(self.vertices[v].clone()))
                }
            }
        }
        Ok(edges)
    }

    /// The edges from `v` whose targets satisfy the filter. Errors if there
    /// are infinitely many of them.
    pub fn out_edges_into(
        &self,
        v: VertexId,
        keep: impl Fn(VertexId) -> bool,
    ) -> Result<Vec<Edge>, GraphError> {
        let mut edges = Vec::new();
        for w in 0..self.vertex_count() {
            if !keep(w) {
                continue;
            }
            match self.adjacency[v][w] {
                Multiplicity::Finite(m) => {
                    for copy in 1..=m {
                        edges.push(Edge { source: v, target: w, copy });
                    }
                }
                Multiplicity::Infinite => {
                    return Err(GraphError::InfiniteEnumeration(self.vertices[v].clone()))
                }
            }
        }
        Ok(edges)
    }

    /// Is the set closed under following edges forward?
    pub fn is_hereditary(&self, set: &VertexSet) -> bool {
        set.iter().all(|&v| {
            (0..self.vertex_count())
                .all(|w| self.adjacency[v][w].is_zero() || set.contains(&w))
        })
    }

    /// Does the set contain every regular vertex all of whose edges end
    /// inside it?
    pub fn is_saturated(&self, set: &VertexSet) -> bool {
        (0..self.vertex_count()).all(|v| {
            set.contains(&v)
                || !self.is_regular(v)
                || (0..self.vertex_count())
                    .any(|w| !self.adjacency[v][w].is_zero() && !set.contains(&w))
        })
    }

    /// Smallest saturated superset of a hereditary set: the fixpoint of
    /// adding regular vertices whose edges all end inside.
    pub fn saturate(&self, h0: &VertexSet) -> Result<VertexSet, GraphError> {
        self.require_hereditary(h0)?;
        let mut h = h0.clone();
        loop {
            let mut grew = false;
            for v in 0..self.vertex_count() {
                if h.contains(&v) || !self.is_regular(v) {
                    continue;
                }
                let all_inside = (0..self.vertex_count())
                    .all(|w| self.adjacency[v][w].is_zero() || h.contains(&w));
                if all_inside {
                    h.insert(v);
                    grew = true;
                }
            }
            if !grew {
                return Ok(h);
            }
        }
    }

    fn require_hereditary(&self, set: &VertexSet) -> Result<(), GraphError> {
        for &v in set {
            for w in 0..self.vertex_count() {
                if !self.adjacency[v][w].is_zero() && !set.contains(&w) {
                    return Err(GraphError::NotHereditary {
                        inside: self.vertices[v].clone(),
                        outside: self.vertices[w].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn require_saturated_hereditary(&self, set: &VertexSet) -> Result<(), GraphError> {
        self.require_hereditary(set)?;
        for v in 0..self.vertex_count() {
            if set.contains(&v) || !self.is_regular(v) {
                continue;
            }
            let all_inside = (0..self.vertex_count())
                .all(|w| self.adjacency[v][w].is_zero() || set.contains(&w));
            if all_inside {
                return Err(GraphError::NotSaturated(self.vertices[v].clone()));
            }
        }
        Ok(())
    }

    /// The breaking vertices of a saturated hereditary set: infinite
    /// emitters with finitely many, but at least one, edges landing outside
    /// `h`.
    pub fn breaking_vertices(&self, h: &VertexSet) -> Result<VertexSet, GraphError> {
        self.require_saturated_hereditary(h)?;
        let mut out = VertexSet::new();
        for v in 0..self.vertex_count() {
            if !self.out_degree(v).is_infinite() {
                continue;
            }
            let escaping = (0..self.vertex_count())
                .filter(|w| !h.contains(w))
                .fold(Multiplicity::Finite(0), |acc, w| acc + self.adjacency[v][w]);
            if let Multiplicity::Finite(n) = escaping {
                if n > 0 {
                    out.insert(v);
                }
            }
        }
        Ok(out)
    }

    /// All admissible pairs, ordered lexicographically by (H, S) as sorted
    /// index sequences. Enumerates all `2^n` vertex subsets and filters;
    /// intended for desk-scale graphs (n ≲ 16).
    pub fn admissible_pairs(&self) -> Vec<AdmissiblePair> {
        let n = self.vertex_count();
        assert!(n < usize::BITS as usize, "graph too large for subset enumeration");
        let mut pairs = Vec::new();
        for mask in 0..(1usize << n) {
            let h: VertexSet = (0..n).filter(|v| mask & (1 << v) != 0).collect();
            if !self.is_hereditary(&h) || !self.is_saturated(&h) {
                continue;
            }
            let breaking: Vec<VertexId> =
                self.breaking_vertices(&h).expect("set was checked").into_iter().collect();
            let b = breaking.len();
            for smask in 0..(1usize << b) {
                let s: VertexSet = breaking
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| smask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                pairs.push(AdmissiblePair { h: h.clone(), s });
            }
        }
        pairs.sort_by(|a, b| {
            let ka: (Vec<_>, Vec<_>) = (a.h.iter().collect(), a.s.iter().collect());
            let kb: (Vec<_>, Vec<_>) = (b.h.iter().collect(), b.s.iter().collect());
            ka.cmp(&kb)
        });
        pairs
    }

    /// Condition (K): no vertex is the base point of exactly one simple
    /// cycle. A simple cycle based at `v` is a return path that does not
    /// pass through `v` in between; its interior may revisit other vertices,
    /// so the count is computed by cycle detection plus path counting rather
    /// than naive enumeration. Parallel edges count as distinct cycles and
    /// an ∞ multiplicity counts as at least two.
    pub fn condition_k(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.simple_cycle_count_at(v) != CycleCount::One)
    }

    /// How many simple cycles are based at `v`: zero, one, or at least two.
    pub fn simple_cycle_count_at(&self, v: VertexId) -> CycleCount {
        let n = self.vertex_count();
        // Vertices on some return path at v, excluding v itself.
        let reach_out = self.reachable_avoiding(v, false);
        let reach_in = self.reachable_avoiding(v, true);
        let relevant: Vec<VertexId> = (0..n)
            .filter(|&u| u != v && reach_out[u] && reach_in[u])
            .collect();

        // A cycle among the relevant vertices pumps to infinitely many
        // simple cycles at v.
        if self.has_cycle_within(&relevant) {
            return CycleCount::TwoOrMore;
        }

        // Otherwise the relevant subgraph is acyclic: count return paths by
        // dynamic programming, saturating at two.
        let mut ways: Vec<Option<Sat2>> = vec![None; n];
        let mut count = sat2_from(self.adjacency[v][v]);
        for &u in &relevant {
            let w = self.count_ways(u, v, &relevant, &mut ways);
            count = count.saturating_add(sat2_from(self.adjacency[v][u]).saturating_mul(w));
        }
        match count {
            Sat2::Zero => CycleCount::Zero,
            Sat2::One => CycleCount::One,
            Sat2::TwoOrMore => CycleCount::TwoOrMore,
        }
    }

    /// Paths from `u` back to `v` through relevant vertices only (memoized;
    /// the relevant subgraph is acyclic when this is called).
    fn count_ways(
        &self,
        u: VertexId,
        v: VertexId,
        relevant: &[VertexId],
        memo: &mut Vec<Option<Sat2>>,
    ) -> Sat2 {
        if let Some(w) = memo[u] {
            return w;
        }
        let mut total = sat2_from(self.adjacency[u][v]);
        for &t in relevant {
            if self.adjacency[u][t].is_zero() {
                continue;
            }
            let sub = self.count_ways(t, v, relevant, memo);
            total = total.saturating_add(sat2_from(self.adjacency[u][t]).saturating_mul(sub));
        }
        memo[u] = Some(total);
        total
    }

    /// Vertices reachable from the out-neighbors (or, reversed, the
    /// in-neighbors) of `v` without passing through `v`.
    fn reachable_avoiding(&self, v: VertexId, reversed: bool) -> Vec<bool> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack: Vec<VertexId> = (0..n)
            .filter(|&u| u != v && !self.step(v, u, reversed).is_zero())
            .collect();
        for &u in &stack {
            seen[u] = true;
        }
        while let Some(u) = stack.pop() {
            let next: Vec<VertexId> = (0..n)
                .filter(|&t| t != v && !seen[t] && !self.step(u, t, reversed).is_zero())
                .collect();
            for t in next {
                seen[t] = true;
                stack.push(t);
            }
        }
        seen
    }

    fn step(&self, from: VertexId, to: VertexId, reversed: bool) -> Multiplicity {
        if reversed {
            self.adjacency[to][from]
        } else {
            self.adjacency[from][to]
        }
    }

    fn has_cycle_within(&self, vertices: &[VertexId]) -> bool {
        // three-color DFS on the induced subgraph
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let allowed: VertexSet = vertices.iter().copied().collect();
        let mut color = vec![WHITE; self.vertex_count()];
        for &start in vertices {
            if color[start] != WHITE {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = GRAY;
            while let Some(&mut (u, ref mut next)) = stack.last_mut() {
                let mut advanced = false;
                while *next < self.vertex_count() {
                    let t = *next;
                    *next += 1;
                    if !allowed.contains(&t) || self.adjacency[u][t].is_zero() {
                        continue;
                    }
                    match color[t] {
                        GRAY => return true,
                        WHITE => {
                            color[t] = GRAY;
                            stack.push((t, 0));
                            advanced = true;
                            break;
                        }
                        _ => {}
                    }
                }
                if !advanced && stack.last().map(|&(u2, n2)| (u2, n2)) == Some((u, self.vertex_count())) {
                    color[u] = BLACK;
                    stack.pop();
                }
            }
        }
        false
    }

    /// The ideal subgraph `E_(H,S)`: vertices `H ∪ S`, edges those of `E`
    /// sourced in `H` together with the edges from `S` into `H`. Vertices
    /// are listed as `H` (input order) followed by `S` (input order), so the
    /// K-group presentation of the result lines up row-for-row with the
    /// ideal entries of the six-term sequence.
    pub fn ideal_subgraph(&self, pair: &AdmissiblePair) -> RelativeGraph {
        let order: Vec<VertexId> = pair.h.iter().chain(pair.s.iter()).copied().collect();
        let names: Vec<String> = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let adjacency: Vec<Vec<Multiplicity>> = order
            .iter()
            .map(|&v| {
                order
                    .iter()
                    .map(|&w| {
                        let keep = if pair.h.contains(&v) {
                            true // edges out of H stay in H by hereditarity
                        } else {
                            pair.h.contains(&w) // from S keep only edges into H
                        };
                        if keep {
                            self.adjacency[v][w]
                        } else {
                            Multiplicity::Finite(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let graph = Graph { vertices: names, adjacency };
        let relset: VertexSet = order
            .iter()
            .enumerate()
            .filter(|(_, &v)| pair.h.contains(&v) && self.is_regular(v))
            .map(|(i, _)| i)
            .collect();
        RelativeGraph::new(graph, relset).expect("ideal subgraph relset is regular")
    }

    /// The quotient graph `E ∖ H` with the relative set `(E⁰_reg ∖ H) ∪ S`:
    /// vertices `E⁰ ∖ H` in input order, keeping exactly the edges whose
    /// range stays outside `H`. Saturation of `H` and the breaking-vertex
    /// property of `S` guarantee every relative-set vertex is regular here.
    pub fn quotient_relative_graph(&self, pair: &AdmissiblePair) -> RelativeGraph {
        let order: Vec<VertexId> =
            (0..self.vertex_count()).filter(|v| !pair.h.contains(v)).collect();
        let names: Vec<String> = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let adjacency: Vec<Vec<Multiplicity>> = order
            .iter()
            .map(|&v| order.iter().map(|&w| self.adjacency[v][w]).collect())
            .collect();
        let graph = Graph { vertices: names, adjacency };
        let relset: VertexSet = order
            .iter()
            .enumerate()
            .filter(|(_, &v)| self.is_regular(v) || pair.s.contains(&v))
            .map(|(i, _)| i)
            .collect();
        RelativeGraph::new(graph, relset).expect("quotient relset is regular")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ vertices: {:?}, adjacency: [", self.vertices)?;
        for (i, row) in self.adjacency.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, m) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{m}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "] }}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CycleCount {
    Zero,
    One,
    TwoOrMore,
}

/// Counting saturated at two; all Condition (K) needs is 0 / 1 / ≥2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sat2 {
    Zero,
    One,
    TwoOrMore,
}

fn sat2_from(m: Multiplicity) -> Sat2 {
    match m {
        Multiplicity::Finite(0) => Sat2::Zero,
        Multiplicity::Finite(1) => Sat2::One,
        _ => Sat2::TwoOrMore,
    }
}

impl Sat2 {
    fn saturating_add(self, other: Sat2) -> Sat2 {
        match (self, other) {
            (Sat2::Zero, x) | (x, Sat2::Zero) => x,
            (Sat2::One, Sat2::One) => Sat2::TwoOrMore,
            _ => Sat2::TwoOrMore,
        }
    }

    fn saturating_mul(self, other: Sat2) -> Sat2 {
        match (self, other) {
            (Sat2::Zero, _) | (_, Sat2::Zero) => Sat2::Zero,
            (Sat2::One, x) | (x, Sat2::One) => x,
            _ => Sat2::TwoOrMore,
        }
    }
}

/// An admissible pair `(H, S)`: a saturated hereditary vertex set together
/// with a subset of its breaking vertices. Parametrizes the gauge-invariant
/// ideals of the graph algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissiblePair {
    h: VertexSet,
    s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(graph: &Graph, h: VertexSet, s: VertexSet) -> Result<AdmissiblePair, GraphError> {
        let breaking = graph.breaking_vertices(&h)?;
        for &v in &s {
            if !breaking.contains(&v) {
                return Err(GraphError::NotBreaking(graph.vertex_name(v).to_string()));
            }
        }
        Ok(AdmissiblePair { h, s })
    }

    /// The trivial pair (∅, ∅).
    pub fn trivial() -> AdmissiblePair {
        AdmissiblePair { h: VertexSet::new(), s: VertexSet::new() }
    }

    pub fn h(&self) -> &VertexSet {
        &self.h
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    /// Re-checks validity against a graph.
    pub fn validate(&self, graph: &Graph) -> Result<(), GraphError> {
        AdmissiblePair::new(graph, self.h.clone(), self.s.clone()).map(|_| ())
    }

    /// The ideal-lattice order: `(H, S) ≤ (H', S')` iff `H ⊆ H'` and
    /// `S ⊆ H' ∪ S'`.
    pub fn le(&self, other: &AdmissiblePair) -> bool {
        self.h.is_subset(&other.h)
            && self.s.iter().all(|v| other.h.contains(v) || other.s.contains(v))
    }
}

/// A graph together with a relative set of regular vertices; the data
/// defining a relative graph algebra `C*(E, V)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelativeGraph {
    graph: Graph,
    relset: VertexSet,
}

impl RelativeGraph {
    pub fn new(graph: Graph, relset: VertexSet) -> Result<RelativeGraph, GraphError> {
        for &v in &relset {
            if !graph.is_regular(v) {
                return Err(GraphError::NotBreaking(graph.vertex_name(v).to_string()));
            }
        }
        Ok(RelativeGraph { graph, relset })
    }

    /// The full relative set: every regular vertex, giving `C*(E)` itself.
    pub fn full(graph: Graph) -> RelativeGraph {
        let relset = graph.regular_vertices().into_iter().collect();
        RelativeGraph { graph, relset }
    }

    /// The empty relative set, giving the Toeplitz algebra.
    pub fn toeplitz(graph: Graph) -> RelativeGraph {
        RelativeGraph { graph, relset: VertexSet::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn relset(&self) -> &VertexSet {
        &self.relset
    }

    /// Relative-set vertices in graph order (the coordinate order of kernel
    /// vectors and K-group domains).
    pub fn relset_ordered(&self) -> Vec<VertexId> {
        self.relset.iter().copied().collect()
    }
}
