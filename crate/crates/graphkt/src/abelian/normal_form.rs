use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Smith normal form `U * M * V = D` together with the inverses of the
/// unimodular transforms.
///
/// `D` is diagonal with nonnegative entries satisfying the divisibility chain
/// d₁ | d₂ | ⋯. The inverses are tracked through the elimination so callers
/// can move between ambient and canonical coordinates without re-solving.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d.get(i, i).is_zero()).count()
    }

    /// Diagonal entries, including units and excluding trailing zeros.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct SnfCalc {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfCalc {
    fn new(m: &IntMatrix) -> Self {
        SnfCalc {
            d: m.clone(),
            u: IntMatrix::identity(m.rows()),
            u_inv: IntMatrix::identity(m.rows()),
            v: IntMatrix::identity(m.cols()),
            v_inv: IntMatrix::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.d.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// row_i += c * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        self.d.add_row_multiple(i, j, c);
        self.u.add_row_multiple(i, j, c);
        self.u_inv.add_col_multiple(j, i, &-c);
    }

    /// col_i += c * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        self.d.add_col_multiple(i, j, c);
        self.v.add_col_multiple(i, j, c);
        self.v_inv.add_row_multiple(j, i, &-c);
    }

    /// Position of the entry of smallest nonzero magnitude in the trailing
    /// submatrix starting at (k, k).
    fn smallest_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                let v = self.d.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn process(&mut self) {
        let steps = self.d.rows().min(self.d.cols());
        for k in 0..steps {
            'pivot: loop {
                let Some((pi, pj)) = self.smallest_pivot(k) else {
                    return; // trailing submatrix is zero; done
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                if self.d.get(k, k).is_negative() {
                    self.negate_row(k);
                }

                // Clear the rest of column k and row k by Euclidean steps.
                let mut clean = true;
                for i in k + 1..self.d.rows() {
                    if !self.d.get(i, k).is_zero() {
                        let q = self.d.get(i, k).div_floor(self.d.get(k, k));
                        self.add_row_multiple(i, k, &-q);
                        if !self.d.get(i, k).is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in k + 1..self.d.cols() {
                    if !self.d.get(k, j).is_zero() {
                        let q = self.d.get(k, j).div_floor(self.d.get(k, k));
                        self.add_col_multiple(j, k, &-q);
                        if !self.d.get(k, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue; // remainders left; smaller pivot now exists
                }

                // Divisibility sweep: the pivot must divide every entry of
                // the trailing submatrix before we move on.
                for i in k + 1..self.d.rows() {
                    for j in k + 1..self.d.cols() {
                        if !self.d.get(i, j).mod_floor(self.d.get(k, k)).is_zero() {
                            self.add_row_multiple(k, i, &BigInt::from(1));
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }
    }
}

/// Smith normal form with tracked unimodular transforms: `U * M * V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut calc = SnfCalc::new(m);
    calc.process();
    debug_assert_eq!(&(&calc.u * m) * &calc.v, calc.d);
    SmithDecomposition {
        u: calc.u,
        u_inv: calc.u_inv,
        d: calc.d,
        v: calc.v,
        v_inv: calc.v_inv,
    }
}

/// Canonical column-style Hermite form of the lattice spanned by the columns
/// of `m`.
///
/// The result has one column per lattice basis vector, pivots (first nonzero
/// entry of each column) positive with strictly increasing pivot rows, and in
/// each pivot row the entries of the earlier columns reduced into
/// `[0, pivot)`. Two matrices span the same column lattice iff their forms
/// are equal.
pub fn column_hermite_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let rows = h.rows();
    let mut pivot_col = 0;
    for row in 0..rows {
        if pivot_col == h.cols() {
            break;
        }
        // Euclidean reduction of the entries of this row across the
        // candidate columns until at most one survives.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..h.cols() {
                if h.get(row, j).is_zero() {
                    continue;
                }
                match best {
                    Some(b) if h.get(row, b).abs() <= h.get(row, j).abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap_cols(pivot_col, b);
            let mut finished = true;
            for j in pivot_col + 1..h.cols() {
                if !h.get(row, j).is_zero() {
                    let q = h.get(row, j).div_floor(h.get(row, pivot_col));
                    h.add_col_multiple(j, pivot_col, &-q);
                    if !h.get(row, j).is_zero() {
                        finished = false;
                    }
                }
            }
            if finished {
                break;
            }
        }
        if h.get(row, pivot_col).is_zero() {
            continue; // no pivot in this row
        }
        if h.get(row, pivot_col).is_negative() {
            h.negate_col(pivot_col);
        }
        // Normalize earlier columns in the pivot row into [0, pivot).
        for j in 0..pivot_col {
            let q = h.get(row, j).div_floor(h.get(row, pivot_col));
            if !q.is_zero() {
                h.add_col_multiple(j, pivot_col, &-q);
            }
        }
        pivot_col += 1;
    }
    // Everything right of the last pivot column is zero by construction.
    IntMatrix::from_fn(rows, pivot_col, |i, j| h.get(i, j).clone())
}

/// Do the columns of `a` and `b` span the same subgroup of Zⁿ?
pub fn same_column_span(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows(), "ambient rank mismatch");
    column_hermite_form(a) == column_hermite_form(b)
}

/// A lattice basis of `ker(M : Zᶜ → Zʳ)`, one basis vector per column.
///
/// Every integer solution of `M x = 0` is an integer combination of the
/// returned columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let cols: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| snf.v.column(j)).collect();
    IntMatrix::from_columns(m.cols(), &cols)
}

/// Solves `M y = t` over the integers, if a solution exists.
pub fn solve_columns(m: &IntMatrix, t: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(t.len(), m.rows(), "right-hand side length mismatch");
    let snf = smith_normal_form(m);
    let ut = snf.u.mul_vec(t);
    let mut z = vec![BigInt::zero(); m.cols()];
    let diag = m.rows().min(m.cols());
    for i in 0..m.rows() {
        let d = if i < diag { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !ut[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ut[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    Some(snf.v.mul_vec(&z))
}
