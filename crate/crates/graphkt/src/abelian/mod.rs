//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything downstream (K-groups, connecting maps, exactness checks) is
//! phrased in terms of cokernels and kernels of integer matrices, so this
//! module is deliberately exact: entries are `BigInt`, normal forms come with
//! the unimodular transforms that realize them, and subgroup comparisons go
//! through a canonical column-style Hermite form.

mod group;
mod matrix;
mod normal_form;

pub use group::{exactness_at, make_hom, FgGroup, GroupHom};
pub use matrix::IntMatrix;
pub use normal_form::{
    column_hermite_form, kernel_basis, same_column_span, smith_normal_form, solve_columns,
    SmithDecomposition,
};

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum AbelianError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix does not induce a homomorphism: relation column {column} is not mapped into the target relation subgroup")]
    NotWellDefined { column: usize },
    #[error("homomorphisms are not composable: target of the first differs from source of the second")]
    NotComposable,
}
