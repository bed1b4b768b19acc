use ttk_group::Group;
use ttk_linalg::reduce;

use crate::classes::element_classes;
use crate::dixon::{splitting_prime, square_classes, CharacterTable};
use crate::CharTableError;

/// Text form: "# modulus l", a header of class sizes, then one row per
/// character (residues modulo l).
pub fn table_to_csv(table: &CharacterTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(table.classes.sizes.iter().map(|s| s.to_string())).expect("in-memory write");
    for chi in &table.characters {
        w.write_record(chi.iter().map(|v| v.to_string())).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("flush")).expect("ascii");
    format!("# modulus {}\n{}", table.modulus, body)
}

/// Read a table computed elsewhere. Columns follow `element_classes(g)`.
/// Without a modulus line the entries must be rational integers and are
/// reduced modulo the default splitting prime.
pub fn table_from_csv(g: &Group, text: &str) -> Result<CharacterTable, CharTableError> {
    let bad = |m: &str| CharTableError::Csv(m.to_string());
    let mut modulus = None;
    let mut body = String::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix('#') {
            if let Some(m) = rest.trim().strip_prefix("modulus") {
                modulus = Some(m.trim().parse::<u32>().map_err(|_| bad("modulus"))?);
            }
        } else if !t.is_empty() {
            body.push_str(t);
            body.push('\n');
        }
    }
    let modulus = match modulus {
        Some(m) => m,
        None => splitting_prime(g.order(), g.exponent())?,
    };
    if (modulus as u64 - 1) % g.exponent() as u64 != 0 || modulus as usize <= 2 * g.order() {
        return Err(bad("modulus is not a splitting prime for this group"));
    }
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(body.as_bytes());
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| CharTableError::Csv(e.to_string()))?;
        rows.push(rec.iter().map(|f| f.parse::<i64>().map_err(|_| bad(f))).collect::<Result<_, _>>()?);
    }
    let classes = element_classes(g);
    let header = rows.first().ok_or_else(|| bad("empty table"))?;
    if header.iter().map(|&s| s as usize).collect::<Vec<_>>() != classes.sizes {
        return Err(bad("class sizes do not match the group"));
    }
    let characters: Vec<Vec<u32>> = rows[1..].iter().map(|r| r.iter().map(|&v| reduce(v, modulus)).collect()).collect();
    if characters.iter().any(|c| c.len() != classes.len()) {
        return Err(bad("row length"));
    }
    let degrees = characters.iter().map(|c| c[0]).collect();
    let table = CharacterTable { modulus, group_order: g.order(), squares: square_classes(g, &classes), classes, characters, degrees };
    table.check()?;
    Ok(table)
}
