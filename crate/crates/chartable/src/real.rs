use ttk_group::{SubgroupClassTable, SuperclassFunction};
use ttk_linalg::{add_mod, inv_mod, mul_mod};

use crate::dixon::{frobenius_schur, CharacterTable};
use crate::CharTableError;

/// One real irreducible representation: its dimension function and the
/// multiplicity with which it occurs in the real regular representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealIrreducible {
    pub function: SuperclassFunction,
    pub regular_multiplicity: u32,
    pub indicator: i32,
}

/// Deduplicated dimension functions, sorted by value vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionFunctions {
    pub functions: Vec<SuperclassFunction>,
    /// index of the all-ones function
    pub trivial: Option<usize>,
}

fn fixed_dims(table: &CharacterTable, subs: &SubgroupClassTable, chi: &[u32]) -> Result<Vec<i64>, CharTableError> {
    let l = table.modulus;
    let bound = 2 * table.group_order as u32;
    subs.classes()
        .iter()
        .map(|c| {
            let h = &c.representative;
            let mut s = 0;
            for &x in h.elements() {
                s = add_mod(s, chi[table.classes.class_of[x as usize]], l);
            }
            let v = mul_mod(s, inv_mod(h.order() as u32 % l, l), l);
            if v > bound {
                Err(CharTableError::LiftOutOfRange(v))
            } else {
                Ok(v as i64)
            }
        })
        .collect()
}

/// Real irreducibles in character order (one per complex conjugate pair).
pub fn real_irreducibles(table: &CharacterTable, subs: &SubgroupClassTable) -> Result<Vec<RealIrreducible>, CharTableError> {
    let l = table.modulus;
    let mut out = Vec::new();
    let mut used = vec![false; table.len()];
    for (a, chi) in table.characters.iter().enumerate() {
        if used[a] {
            continue;
        }
        used[a] = true;
        let nu = frobenius_schur(table, chi)?;
        let (values, mult) = match nu {
            1 => (chi.clone(), table.degrees[a]),
            0 => {
                let bar = table.conjugate(chi);
                let b = table.characters.iter().position(|c| *c == bar).ok_or_else(|| CharTableError::Inconsistent("conjugate character missing".into()))?;
                used[b] = true;
                (chi.iter().zip(&bar).map(|(&x, &y)| add_mod(x, y, l)).collect(), table.degrees[a])
            }
            _ => (chi.iter().map(|&x| add_mod(x, x, l)).collect(), table.degrees[a] / 2),
        };
        out.push(RealIrreducible { function: SuperclassFunction::new(fixed_dims(table, subs, &values)?), regular_multiplicity: mult, indicator: nu });
    }
    Ok(out)
}

pub fn real_dimension_functions(table: &CharacterTable, subs: &SubgroupClassTable) -> Result<DimensionFunctions, CharTableError> {
    let mut functions: Vec<SuperclassFunction> = real_irreducibles(table, subs)?.into_iter().map(|r| r.function).collect();
    functions.sort();
    functions.dedup();
    let trivial = functions.iter().position(|f| f.values().iter().all(|&v| v == 1));
    Ok(DimensionFunctions { functions, trivial })
}
