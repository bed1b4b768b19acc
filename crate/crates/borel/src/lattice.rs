use num_traits::ToPrimitive;
use ttk_group::SuperclassFunction;
use ttk_linalg::{hnf, int_kernel, IntMatrix};

use crate::conditions::{is_borel_smith, Constraints};
use crate::BorelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub rank: usize,
    /// columns of the common Hermite normal form
    pub hnf_columns: Vec<Vec<i64>>,
}

fn columns(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.cols()).map(|c| m.column_vec(c).iter().map(|x| x.to_i64().expect("small entries")).collect()).collect()
}

/// Generators (as columns) of the lattice of integer Borel–Smith functions.
/// Each congruence gets its own auxiliary integer variable.
pub fn borel_smith_lattice(constraints: &Constraints) -> IntMatrix {
    let n = constraints.classes;
    let aux = constraints.congruences.len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (a, c) in constraints.congruences.iter().enumerate() {
        let mut r = vec![0i64; n + aux];
        r[c.upper] += 1;
        r[c.lower] -= 1;
        r[n + a] = -c.modulus;
        rows.push(r);
    }
    for rel in &constraints.relations {
        let mut r = rel.coefficients(n);
        r.resize(n + aux, 0);
        rows.push(r);
    }
    if rows.is_empty() {
        return IntMatrix::identity(n);
    }
    let k = int_kernel(&IntMatrix::from_rows(&rows).expect("rectangular"));
    let mut proj = IntMatrix::zeros(n, k.cols());
    for c in 0..k.cols() {
        for r in 0..n {
            proj.set(r, c, k.get(r, c).clone());
        }
    }
    hnf(&proj)
}

/// Check that `basis` consists of Borel–Smith functions, is independent and
/// spans the full lattice.
pub fn verify_basis(constraints: &Constraints, basis: &[SuperclassFunction]) -> Result<BasisReport, BorelError> {
    for (i, f) in basis.iter().enumerate() {
        let rep = is_borel_smith(constraints, f);
        if !rep.holds {
            return Err(BorelError::NotBorelSmith { index: i, witnesses: format!("{:?}", rep.witnesses) });
        }
    }
    let n = constraints.classes;
    let cols: Vec<Vec<i64>> = basis.iter().map(|f| f.values().to_vec()).collect();
    let span = hnf(&IntMatrix::from_columns(n, &cols).map_err(|e| BorelError::Shape(e.to_string()))?);
    if span.cols() != basis.len() {
        return Err(BorelError::Dependent { rank: span.cols(), size: basis.len() });
    }
    let full = borel_smith_lattice(constraints);
    if full != span {
        return Err(BorelError::BasisMismatch { expected: columns(&full), found: columns(&span) });
    }
    Ok(BasisReport { rank: span.cols(), hnf_columns: columns(&span) })
}
