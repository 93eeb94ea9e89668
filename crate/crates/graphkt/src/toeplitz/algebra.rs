use crate::graph::{Edge, Graph, GraphError, VertexId};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A finite edge path. Vertices are paths of length zero with
/// `r(v) = s(v) = v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    start: VertexId,
    edges: Vec<Edge>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    pub fn from_edges(edges: Vec<Edge>) -> Path {
        assert!(!edges.is_empty(), "use Path::vertex for length-zero paths");
        for pair in edges.windows(2) {
            assert_eq!(pair[0].target, pair[1].source, "edges do not compose");
        }
        Path { start: edges[0].source, edges }
    }

    pub fn single(e: Edge) -> Path {
        Path { start: e.source, edges: vec![e] }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self) -> VertexId {
        self.edges.last().map_or(self.start, |e| e.target)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// If `prefix` is an initial segment of this path, the remaining suffix.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.start != self.start || prefix.len() > self.len() {
            return None;
        }
        if self.edges[..prefix.len()] != prefix.edges[..] {
            return None;
        }
        let edges: Vec<Edge> = self.edges[prefix.len()..].to_vec();
        let start = edges.first().map_or(self.range(), |e| e.source);
        Some(Path { start, edges })
    }

    pub fn concat(&self, other: &Path) -> Path {
        assert_eq!(self.range(), other.source(), "paths do not compose");
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { start: self.start, edges }
    }

    fn relabel(&self, f: &impl Fn(VertexId) -> VertexId) -> Path {
        Path {
            start: f(self.start),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { source: f(e.source), target: f(e.target), copy: e.copy })
                .collect(),
        }
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "({})", self.start);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{}-{}:{}", e.source, e.target, e.copy)?;
        }
        Ok(())
    }
}

/// A basis monomial `s_α s_β*` with `r(α) = r(β)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathTerm {
    alpha: Path,
    beta: Path,
}

impl PathTerm {
    pub fn new(alpha: Path, beta: Path) -> PathTerm {
        assert_eq!(alpha.range(), beta.range(), "ranges of alpha and beta differ");
        PathTerm { alpha, beta }
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    /// `Some(v)` when the term is the vertex projection `p_v`.
    pub fn as_vertex_projection(&self) -> Option<VertexId> {
        (self.alpha.is_empty() && self.beta.is_empty()).then_some(self.alpha.start)
    }

    /// `Some(e)` when the term is the range projection `s_e s_e*`.
    pub fn as_edge_projection(&self) -> Option<Edge> {
        (self.alpha.len() == 1 && self.alpha == self.beta).then(|| self.alpha.edges[0])
    }

    fn adjoint(&self) -> PathTerm {
        PathTerm { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    /// Product of basis monomials:
    /// `(s_α s_β*)(s_γ s_δ*) = s_{αγ′} s_δ*` when `γ = βγ′`,
    /// `s_α s_{δβ′}*` when `β = γβ′`, and `0` otherwise.
    fn multiply(&self, other: &PathTerm) -> Option<PathTerm> {
        if let Some(gamma_tail) = other.alpha.strip_prefix(&self.beta) {
            Some(PathTerm::new(self.alpha.concat(&gamma_tail), other.beta.clone()))
        } else {
            self.beta.strip_prefix(&other.alpha).map(|beta_tail| {
                PathTerm::new(self.alpha.clone(), other.beta.concat(&beta_tail))
            })
        }
    }
}

impl fmt::Debug for PathTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[{:?}]s*[{:?}]", self.alpha, self.beta)
    }
}

/// A finite integer combination of basis monomials `s_α s_β*`, kept in
/// normal form (terms sorted, zero coefficients dropped). Equality is
/// term-multiset equality, which is exact equality in the Toeplitz algebra
/// because the monomials are linearly independent there.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<PathTerm, i64>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The vertex projection `p_v`.
    pub fn vertex_projection(v: VertexId) -> AlgebraElement {
        AlgebraElement::from_term(PathTerm::new(Path::vertex(v), Path::vertex(v)), 1)
    }

    /// The edge partial isometry `s_e`.
    pub fn edge_isometry(e: Edge) -> AlgebraElement {
        AlgebraElement::from_term(PathTerm::new(Path::single(e), Path::vertex(e.target)), 1)
    }

    /// The adjoint `s_e*`.
    pub fn edge_coisometry(e: Edge) -> AlgebraElement {
        AlgebraElement::from_term(PathTerm::new(Path::vertex(e.target), Path::single(e)), 1)
    }

    /// The range projection `s_e s_e*`.
    pub fn edge_projection(e: Edge) -> AlgebraElement {
        AlgebraElement::from_term(PathTerm::new(Path::single(e), Path::single(e)), 1)
    }

    pub fn from_term(term: PathTerm, coeff: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_term(term, coeff);
        out
    }

    /// The unit `Σ_v p_v` of the Toeplitz algebra of a finite graph.
    pub fn unit(graph: &Graph) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for v in 0..graph.vertex_count() {
            out.add_term(PathTerm::new(Path::vertex(v), Path::vertex(v)), 1);
        }
        out
    }

    /// The gap element `g_v = p_v − Σ_{s(e)=v} s_e s_e*` over all edges of
    /// the graph; requires `v` to emit finitely many edges.
    pub fn gap_element(graph: &Graph, v: VertexId) -> Result<AlgebraElement, GraphError> {
        let mut out = AlgebraElement::vertex_projection(v);
        for e in graph.out_edges(v)? {
            out.add_term(PathTerm::new(Path::single(e), Path::single(e)), -1);
        }
        Ok(out)
    }

    /// The gap projection `p_v − Σ_{s(e)=v, keep(r(e))} s_e s_e*` restricted
    /// to edges whose range satisfies the filter; the filtered edge set must
    /// be finite.
    pub fn gap_projection(
        graph: &Graph,
        v: VertexId,
        keep: impl Fn(VertexId) -> bool,
    ) -> Result<AlgebraElement, GraphError> {
        let mut out = AlgebraElement::vertex_projection(v);
        for e in graph.out_edges_into(v, keep)? {
            out.add_term(PathTerm::new(Path::single(e), Path::single(e)), -1);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, term: PathTerm, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(term);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().checked_add(coeff).expect("coefficient overflow");
                if merged == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathTerm, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (t, k) in self.terms() {
            out.add_term(t.clone(), k.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    /// The *-involution: swaps α and β in every term.
    pub fn adjoint(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (t, c) in self.terms() {
            out.add_term(t.adjoint(), c);
        }
        out
    }

    pub fn relabel(&self, f: &impl Fn(VertexId) -> VertexId) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (t, c) in self.terms() {
            out.add_term(
                PathTerm::new(t.alpha.relabel(f), t.beta.relabel(f)),
                c,
            );
        }
        out
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (t, c) in rhs.terms() {
            out.add_term(t.clone(), c);
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (t, c) in rhs.terms() {
            out.add_term(t.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement::zero() - self
    }
}

impl Sub<&AlgebraElement> for AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        &self - rhs
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                if let Some(t) = a.multiply(b) {
                    out.add_term(t, ca.checked_mul(cb).expect("coefficient overflow"));
                }
            }
        }
        out
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{t:?}")?;
        }
        Ok(())
    }
}

/// A square matrix over the symbolic algebra. Matrix units are implicit in
/// the positions.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgMatrix {
    size: usize,
    entries: Vec<AlgebraElement>,
}

impl AlgMatrix {
    pub fn zeros(size: usize) -> AlgMatrix {
        AlgMatrix { size, entries: vec![AlgebraElement::zero(); size * size] }
    }

    /// Diagonal matrix with every entry the given element (the unit matrix
    /// when passed [`AlgebraElement::unit`]).
    pub fn scalar(size: usize, elem: &AlgebraElement) -> AlgMatrix {
        let mut m = AlgMatrix::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = elem.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.size + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, elem: &AlgebraElement) {
        let idx = i * self.size + j;
        self.entries[idx] = &self.entries[idx] + elem;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> AlgMatrix {
        let mut out = AlgMatrix::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                out.entries[j * self.size + i] = self.get(i, j).adjoint();
            }
        }
        out
    }

    pub fn relabel(&self, f: &impl Fn(VertexId) -> VertexId) -> AlgMatrix {
        AlgMatrix {
            size: self.size,
            entries: self.entries.iter().map(|e| e.relabel(f)).collect(),
        }
    }
}

impl Mul for &AlgMatrix {
    type Output = AlgMatrix;

    fn mul(self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = AlgMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k).is_zero() {
                    continue;
                }
                for j in 0..n {
                    if rhs.get(k, j).is_zero() {
                        continue;
                    }
                    let prod = self.get(i, k) * rhs.get(k, j);
                    out.add_at(i, j, &prod);
                }
            }
        }
        out
    }
}

impl Add for &AlgMatrix {
    type Output = AlgMatrix;

    fn add(self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.size, rhs.size);
        let mut out = self.clone();
        for i in 0..self.size {
            for j in 0..self.size {
                out.add_at(i, j, rhs.get(i, j));
            }
        }
        out
    }
}

impl Sub for &AlgMatrix {
    type Output = AlgMatrix;

    fn sub(self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.size, rhs.size);
        let mut out = self.clone();
        for i in 0..self.size {
            for j in 0..self.size {
                let diff = out.get(i, j) - rhs.get(i, j);
                out.entries[i * out.size + j] = diff;
            }
        }
        out
    }
}

impl fmt::Debug for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgMatrix {}x{} [", self.size, self.size)?;
        for i in 0..self.size {
            write!(f, "  [")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
