//! Superclass-function checks: effectivity, the Borel–Smith conditions,
//! lattice comparison against a proposed basis, and subgroup pairs that no
//! Borel–Smith function separates.

mod conditions;
mod csv_io;
mod lattice;

pub use conditions::{is_borel_smith, is_effective, BorelSmithReport, Congruence, CongruenceSource, Constraints, RankTwoRelation, Violation};
pub use csv_io::{functions_from_csv, functions_to_csv};
pub use lattice::{borel_smith_lattice, verify_basis, BasisReport};
pub use ttk_group::SuperclassFunction;

use ttk_group::SubgroupClassTable;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BorelError {
    #[error("basis element {index} is not Borel-Smith: {witnesses}")]
    NotBorelSmith { index: usize, witnesses: String },
    #[error("basis is dependent: rank {rank} for {size} functions")]
    Dependent { rank: usize, size: usize },
    #[error("lattice mismatch: constraint lattice HNF {expected:?}, basis HNF {found:?}")]
    BasisMismatch { expected: Vec<Vec<i64>>, found: Vec<Vec<i64>> },
    #[error("shape: {0}")]
    Shape(String),
    #[error("function file: {0}")]
    Csv(String),
}

/// Unordered pairs of distinct classes on which every basis function agrees.
pub fn indistinguishable_pairs(table: &SubgroupClassTable, basis: &[SuperclassFunction]) -> Vec<(usize, usize)> {
    let n = table.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if basis.iter().all(|f| f[i] == f[j]) {
                out.push((i, j));
            }
        }
    }
    out
}
