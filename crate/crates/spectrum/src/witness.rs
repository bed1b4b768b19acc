use serde::{Deserialize, Serialize};
use ttk_complex::RealizedElement;
use ttk_group::SubgroupClassTable;

use crate::matrix::residue_iso;
use crate::SpectrumError;

/// A basis element C whose ι at H is not a residue isomorphism at K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub h: String,
    pub k: String,
    pub basis_index: usize,
    pub origin: Option<String>,
    pub function: Vec<i64>,
    pub h_mark_at_h: i64,
    pub h_mark_at_k: i64,
}

impl Witness {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Witness, SpectrumError> {
        serde_json::from_str(text).map_err(|e| SpectrumError::Json(e.to_string()))
    }
}

/// First realized basis element separating the closed point of K from U(H).
pub fn separation_witness(
    table: &SubgroupClassTable,
    realized: &[RealizedElement],
    h: usize,
    k: usize,
) -> Result<Witness, SpectrumError> {
    if h == k {
        return Err(SpectrumError::SameClass(h));
    }
    for (i, e) in realized.iter().enumerate() {
        let Some(c) = &e.complex else { continue };
        let iota = c.iota(table.representative(h))?;
        if !residue_iso(c, &iota, table, k) {
            return Ok(Witness {
                h: table.label(h),
                k: table.label(k),
                basis_index: i,
                origin: e.origin.clone(),
                function: e.function.values().to_vec(),
                h_mark_at_h: e.function[h],
                h_mark_at_k: e.function[k],
            });
        }
    }
    Err(SpectrumError::NoWitnessFound { h: table.label(h), k: table.label(k) })
}
