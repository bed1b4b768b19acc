//! Exact linear algebra: dense matrices over F_p and integer Hermite/Smith
//! normal forms.

mod fp;
mod int;

pub use fp::{add_mod, inv_mod, mul_mod, pow_mod, reduce, sub_mod, FpMatrix, RowSpace};
pub use int::{hnf, in_column_lattice, int_kernel, row_hnf, snf, IntMatrix};
pub use num_bigint::BigInt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
}
