//! Bounded chain complexes of permutation modules k[G/K] over a finite
//! p-group, their fixed-point evaluations and endotriviality data.

use std::collections::BTreeMap;

mod builders;
mod chainmap;
mod complex;
mod ctx;
mod dense;
mod eliminate;
mod endotrivial;
mod entry;
mod evaluate;
mod iota;
mod json;
mod realize;
mod resolution;
mod sphere;
mod tensor;

pub use builders::{
    builder_dihedral, builder_inflate, builder_periodic, builder_u, is_dihedral, via_quotient,
};
pub use chainmap::{chain_map_space, fixed_cycle_dimension, orbit_sum_image_general};
pub use complex::{GradedMap, Morphism, OrbitComplex};
pub use ctx::{Cosets, GroupCtx, PairOrbits};
pub use dense::{fixed_cosets, DenseComplex};
pub use eliminate::{
    eliminate_contractibles, has_contractible_summand, minimize, orbit_sum_image, EquivalenceData,
    Tracking,
};
pub use entry::Entry;
pub use evaluate::Evaluation;
pub use iota::ChainMapFromUnit;
pub use json::{complex_from_json, complex_to_json, h_marks_to_csv};
pub use realize::{realize_basis, standard_complexes, RealizedElement};
pub use resolution::{act, free_map_matrix, min_resolution, FreeResolution};
pub use sphere::builder_sphere;
pub use tensor::{tensor, tensor_tracked, TensorProduct, TensorSummand};

#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error("d∘d is nonzero at degree {0}")]
    NotAComplex(i32),
    #[error("entry in degree {degree} from summand {from} to {to} is not fixed by the source stabilizer")]
    StabilizerViolation { degree: i32, from: usize, to: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("pivot at degree {degree} ({from} -> {to}) is not invertible")]
    PivotInversionFailure { degree: i32, from: usize, to: usize },
    #[error("homotopy equivalence check failed: {0}")]
    EquivalenceFailure(String),
    #[error("operation needs orbit-map entries")]
    GeneralEntries,
    #[error("builder precondition: {0}")]
    BuilderPrecondition(String),
    #[error("fixed points at subgroup class {class} have homology {dims:?}")]
    NotEndotrivial {
        class: usize,
        dims: BTreeMap<i32, usize>,
    },
    #[error("fixed points have homology {dims:?}")]
    NotEndotrivialAt { dims: BTreeMap<i32, usize> },
    #[error("homology degree differs within subgroup class {class}")]
    NonConstantHMark { class: usize },
    #[error("no summand in degree {degree} carries the fixed-point homology")]
    NoQualifyingSummand { degree: i32 },
    #[error(
        "summands {first} and {second} in degree {degree} both carry the fixed-point homology"
    )]
    AmbiguousIota {
        degree: i32,
        first: usize,
        second: usize,
    },
    #[error("h-mark mismatch: {0}")]
    HMarkMismatch(String),
    #[error("json: {0}")]
    Json(String),
}
