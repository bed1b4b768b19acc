//! Character tables of p-groups computed modulo a splitting prime, with
//! Frobenius–Schur indicators and fixed-point dimension functions of the
//! real irreducibles.

mod classes;
mod csv_io;
mod dixon;
mod real;

pub use classes::{element_classes, ElementClasses};
pub use csv_io::{table_from_csv, table_to_csv};
pub use dixon::{dixon_character_table, frobenius_schur, splitting_prime, CharacterTable};
pub use real::{real_dimension_functions, real_irreducibles, DimensionFunctions, RealIrreducible};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CharTableError {
    #[error("no splitting prime below the search limit")]
    NoSuitablePrime,
    #[error("inconsistent character table: {0}")]
    Inconsistent(String),
    #[error("indicator does not lift to -1, 0 or 1")]
    LiftAmbiguity,
    #[error("fixed-point dimension residue {0} out of range")]
    LiftOutOfRange(u32),
    #[error("character table file: {0}")]
    Csv(String),
}
