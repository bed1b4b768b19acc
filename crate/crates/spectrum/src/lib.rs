//! Closed-point shadows of the spectrum: residue tests for maps out of the
//! unit, membership of closed points in the opens U(H), membership in the
//! comparison-map image, and witnesses separating subgroup classes.

mod comp;
mod matrix;
mod witness;

pub use comp::{comp_membership, comp_membership_with, is_maximal_ideal_member};
pub use matrix::{closed_points, residue_iso, u_membership_matrix, ClosedPoint, Coverage, MembershipMatrix};
pub use witness::{separation_witness, Witness};

use ttk_complex::ComplexError;
use ttk_twisted::TwistedError;

#[derive(Debug, thiserror::Error)]
pub enum SpectrumError {
    #[error("basis elements without a realizing complex: {missing:?}")]
    UnrealizedBasisElement { missing: Vec<usize> },
    #[error("no realized basis element separates {h} from {k}")]
    NoWitnessFound { h: String, k: String },
    #[error("class {0} given twice")]
    SameClass(usize),
    #[error("matrix file: {0}")]
    Csv(String),
    #[error("witness file: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
}
