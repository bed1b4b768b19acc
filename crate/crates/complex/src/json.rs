use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use ttk_group::{Subgroup, SubgroupClassTable, SuperclassFunction};

use crate::complex::{Morphism, OrbitComplex};
use crate::ctx::GroupCtx;
use crate::entry::Entry;
use crate::ComplexError;

/// One source summand: for each target summand, its (coset rep, coeff) terms.
type Column = Vec<Vec<(u32, u32)>>;

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    group: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    general: bool,
    /// degree -> stabilizer generators per summand
    degrees: BTreeMap<i32, Vec<Vec<u32>>>,
    differentials: BTreeMap<i32, Vec<Column>>,
}

pub fn complex_to_json(c: &OrbitComplex) -> String {
    let degrees = c
        .modules
        .iter()
        .map(|(&i, v)| (i, v.iter().map(|k| k.generators().to_vec()).collect()))
        .collect();
    let differentials = c
        .diffs
        .iter()
        .map(|(&i, d)| {
            let cols = d
                .cols
                .iter()
                .map(|col| {
                    (0..d.targets)
                        .map(|t| col.get(&t).map(|e| e.terms().to_vec()).unwrap_or_default())
                        .collect()
                })
                .collect();
            (i, cols)
        })
        .collect();
    let file = ComplexFile {
        group: c.group().name().to_string(),
        general: c.is_general(),
        degrees,
        differentials,
    };
    serde_json::to_string_pretty(&file).expect("plain data")
}

pub fn complex_from_json(ctx: &Arc<GroupCtx>, text: &str) -> Result<OrbitComplex, ComplexError> {
    let file: ComplexFile =
        serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
    let g = ctx.group();
    let p = ctx.prime();
    let in_range = |x: u32| (x as usize) < g.order();
    let mut modules = BTreeMap::new();
    for (&i, gens) in &file.degrees {
        let mut v = Vec::new();
        for gs in gens {
            if !gs.iter().copied().all(in_range) {
                return Err(ComplexError::Json(format!(
                    "element out of range in degree {i}"
                )));
            }
            v.push(Subgroup::generated_by(g, gs));
        }
        modules.insert(i, v);
    }
    let mut diffs = BTreeMap::new();
    for (&i, cols) in &file.differentials {
        let (Some(src), Some(tgt)) = (modules.get(&i), modules.get(&(i - 1))) else {
            return Err(ComplexError::Shape(format!(
                "differential {i} has no source or target"
            )));
        };
        if cols.len() != src.len() {
            return Err(ComplexError::Shape(format!(
                "differential {i} has {} columns, expected {}",
                cols.len(),
                src.len()
            )));
        }
        let mut m = Morphism::zero(src.len(), tgt.len());
        for (s, col) in cols.iter().enumerate() {
            if col.len() != tgt.len() {
                return Err(ComplexError::Shape(format!(
                    "differential {i} column {s} has {} targets, expected {}",
                    col.len(),
                    tgt.len()
                )));
            }
            for (t, (terms, k)) in col.iter().zip(tgt).enumerate() {
                if !terms.iter().all(|&(x, _)| in_range(x)) {
                    return Err(ComplexError::Json(format!(
                        "element out of range in differential {i}"
                    )));
                }
                let cs = ctx.cosets(k);
                let e =
                    Entry::from_terms(terms.iter().map(|&(x, c)| (cs.rep(x), c % p)).collect(), p);
                m.add_entry(s, t, &e, p);
            }
        }
        diffs.insert(i, m);
    }
    let c = OrbitComplex::from_parts_unchecked(ctx, modules, diffs, file.general);
    c.validate()?;
    Ok(c)
}

/// One row per named function, columns headed by class labels.
pub fn h_marks_to_csv(table: &SubgroupClassTable, rows: &[(String, SuperclassFunction)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["name".to_string()];
    header.extend((0..table.len()).map(|i| table.label(i)));
    w.write_record(&header).expect("in-memory write");
    for (name, f) in rows {
        let mut rec = vec![name.clone()];
        rec.extend(f.values().iter().map(|v| v.to_string()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
