use super::normal_form::{
    column_hermite_form, kernel_basis, smith_normal_form, solve_columns, SmithDecomposition,
};
use super::{AbelianError, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A finitely generated abelian group presented as `Zⁿ / ⟨columns of R⟩`.
///
/// The canonical form (invariant factors plus free rank) is computed once at
/// construction from the Smith normal form of the relation matrix; the
/// unimodular change of basis is kept so elements can be reduced to canonical
/// coordinates.
#[derive(Clone, Debug)]
pub struct FgGroup {
    ambient_rank: usize,
    relations: IntMatrix,
    snf: SmithDecomposition,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    unit_count: usize,
}

impl FgGroup {
    /// The cokernel `Zⁿ / im M` of a matrix with `n` rows, with the
    /// projection rule `x ↦ x + im M`.
    pub fn cokernel(relations: IntMatrix) -> FgGroup {
        let ambient_rank = relations.rows();
        let snf = smith_normal_form(&relations);
        let diag = snf.nonzero_diagonal();
        let unit_count = diag.iter().filter(|d| d.abs().is_one()).count();
        let invariant_factors: Vec<BigInt> =
            diag.iter().filter(|d| !d.abs().is_one()).cloned().collect();
        let free_rank = ambient_rank - diag.len();
        FgGroup {
            ambient_rank,
            relations,
            snf,
            invariant_factors,
            free_rank,
            unit_count,
        }
    }

    /// Free abelian group of the given rank (no relations).
    pub fn free(rank: usize) -> FgGroup {
        FgGroup::cokernel(IntMatrix::zeros(rank, 0))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Invariant factors d₁ | d₂ | ⋯, each ≥ 2 (units are dropped).
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Number of canonical coordinates (torsion followed by free).
    pub fn canonical_rank(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Canonical coordinates of the class of an ambient vector.
    ///
    /// Torsion coordinates are reduced into `[0, dᵢ)`; two ambient vectors
    /// represent the same element iff their reductions are equal.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank, "ambient vector length mismatch");
        let y = self.snf.u.mul_vec(x);
        let mut out = Vec::with_capacity(self.canonical_rank());
        for (k, d) in self.invariant_factors.iter().enumerate() {
            out.push(y[self.unit_count + k].mod_floor(d));
        }
        let rank = self.unit_count + self.invariant_factors.len();
        for item in y.iter().take(self.ambient_rank).skip(rank) {
            out.push(item.clone());
        }
        out
    }

    /// Does the ambient vector represent the zero class?
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(|c| c.is_zero())
    }

    /// Ambient representative of the canonical generator with index `idx`
    /// (torsion generators first, then free generators).
    pub fn canonical_generator(&self, idx: usize) -> Vec<BigInt> {
        assert!(idx < self.canonical_rank());
        let snf_index = if idx < self.invariant_factors.len() {
            self.unit_count + idx
        } else {
            self.unit_count + self.invariant_factors.len() + (idx - self.invariant_factors.len())
        };
        self.snf.u_inv.column(snf_index)
    }

    /// Change of basis from ambient to SNF coordinates.
    pub fn basis(&self) -> &IntMatrix {
        &self.snf.u
    }

    pub fn basis_inverse(&self) -> &IntMatrix {
        &self.snf.u_inv
    }

    fn unit_count(&self) -> usize {
        self.unit_count
    }

    /// Two presentations are structurally equal when they share the ambient
    /// rank and the exact relation matrix.
    pub fn same_presentation(&self, other: &FgGroup) -> bool {
        self.ambient_rank == other.ambient_rank && self.relations == other.relations
    }
}

/// A homomorphism between presented groups, stored as an integer lift
/// between the free covers.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgGroup,
    target: FgGroup,
    lift: IntMatrix,
}

/// Builds the homomorphism induced by `lift` if it is well defined, i.e. if
/// the lift maps every relation of the source into the relation subgroup of
/// the target.
pub fn make_hom(lift: IntMatrix, source: &FgGroup, target: &FgGroup) -> Result<GroupHom, AbelianError> {
    if lift.rows() != target.ambient_rank() || lift.cols() != source.ambient_rank() {
        return Err(AbelianError::Dimension(format!(
            "lift is {}x{}, expected {}x{}",
            lift.rows(),
            lift.cols(),
            target.ambient_rank(),
            source.ambient_rank()
        )));
    }
    let mapped = &lift * source.relations();
    for col in 0..mapped.cols() {
        if solve_columns(target.relations(), &mapped.column(col)).is_none() {
            return Err(AbelianError::NotWellDefined { column: col });
        }
    }
    Ok(GroupHom {
        source: source.clone(),
        target: target.clone(),
        lift,
    })
}

impl GroupHom {
    pub fn source(&self) -> &FgGroup {
        &self.source
    }

    pub fn target(&self) -> &FgGroup {
        &self.target
    }

    pub fn lift(&self) -> &IntMatrix {
        &self.lift
    }

    pub fn zero(source: &FgGroup, target: &FgGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            lift: IntMatrix::zeros(target.ambient_rank(), source.ambient_rank()),
        }
    }

    pub fn identity(group: &FgGroup) -> GroupHom {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            lift: IntMatrix::identity(group.ambient_rank()),
        }
    }

    /// Image of an ambient vector of the source in the ambient of the target.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.lift.mul_vec(x)
    }

    /// `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, AbelianError> {
        if !self.target.same_presentation(&other.source) {
            return Err(AbelianError::NotComposable);
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            lift: &other.lift * &self.lift,
        })
    }

    /// Is this the zero homomorphism (every generator mapped to the zero
    /// class)?
    pub fn is_zero_hom(&self) -> bool {
        (0..self.lift.cols()).all(|j| self.target.is_zero_element(&self.lift.column(j)))
    }

    /// The matrix of the homomorphism in the canonical (SNF) coordinate
    /// systems of source and target. Rows and columns corresponding to unit
    /// invariant factors are dropped; torsion rows are reduced modulo their
    /// factor.
    ///
    /// For maps between free groups this is well defined up to unimodular
    /// equivalence; when torsion is present it depends on the stored bases.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let raw = &(self.target.basis() * &self.lift) * self.source.basis_inverse();
        let keep_rows: Vec<usize> =
            (self.target.unit_count()..self.target.ambient_rank()).collect();
        let keep_cols: Vec<usize> =
            (self.source.unit_count()..self.source.ambient_rank()).collect();
        let mut m = raw.select_rows(&keep_rows).select_cols(&keep_cols);
        for (k, d) in self.target.invariant_factors().iter().enumerate() {
            for j in 0..m.cols() {
                let v = m.get(k, j).mod_floor(d);
                m.set(k, j, v);
            }
        }
        m
    }

    /// Invariant factors (SNF diagonal, units included, zeros dropped) of the
    /// canonical-coordinate matrix.
    pub fn canonical_factors(&self) -> Vec<BigInt> {
        smith_normal_form(&self.canonical_matrix()).nonzero_diagonal()
    }
}

/// Is the pair `(f, g)` exact at the middle group, i.e. `im f = ker g`?
///
/// Both subgroups are compared inside the free cover of the middle group:
/// the image side is spanned by the lift columns of `f` together with the
/// middle relations, while the kernel side is the preimage lattice
/// `{x : lift(g)·x ∈ relations of target(g)}`. Equality is decided through
/// the canonical column Hermite form.
pub fn exactness_at(f: &GroupHom, g: &GroupHom) -> Result<bool, AbelianError> {
    if !f.target().same_presentation(g.source()) {
        return Err(AbelianError::NotComposable);
    }
    let middle = f.target();
    let image = IntMatrix::hstack(&[f.lift(), middle.relations()]);

    // Kernel of [lift(g) | relations(target g)], projected to the middle
    // coordinates, spans the preimage lattice.
    let stacked = IntMatrix::hstack(&[g.lift(), g.target().relations()]);
    let ker = kernel_basis(&stacked);
    let preimage_rows: Vec<usize> = (0..middle.ambient_rank()).collect();
    let preimage = ker.select_rows(&preimage_rows);

    Ok(column_hermite_form(&image) == column_hermite_form(&preimage))
}
