//! Maps from the unit to shifted tensor powers of basis endotrivials, with
//! their products and images in the cohomology of Weyl groups.

mod cohomology;
mod memo;
mod ring;
mod twist;

pub use cohomology::{is_nilpotent_class, lift_cocycle, yoneda, CohomologyClass};
pub use ring::{BasisComplex, TwistedElement, TwistedRing};
pub use twist::Twist;

use ttk_complex::ComplexError;

#[derive(Debug, thiserror::Error)]
pub enum TwistedError {
    #[error("basis element {0} has no realizing complex")]
    UnrealizedBasisElement(usize),
    #[error("twist has {found} entries, expected {expected}")]
    TwistLength { expected: usize, found: usize },
    #[error("no pinned chain isomorphism between minimal models")]
    TransportFailure,
    #[error("lifting system has no solution at subgroup class {class}")]
    LiftFailure { class: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
