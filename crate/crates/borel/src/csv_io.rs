use ttk_group::{SubgroupClassTable, SuperclassFunction};

use crate::BorelError;

/// Header row of class labels, then one row per function.
pub fn functions_to_csv(table: &SubgroupClassTable, functions: &[SuperclassFunction]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record((0..table.len()).map(|i| table.label(i))).expect("in-memory write");
    for f in functions {
        w.write_record(f.values().iter().map(|v| v.to_string())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
}

pub fn functions_from_csv(table: &SubgroupClassTable, text: &str) -> Result<Vec<SuperclassFunction>, BorelError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| BorelError::Csv(e.to_string()))?.clone();
    let labels: Vec<String> = (0..table.len()).map(|i| table.label(i)).collect();
    if header.iter().collect::<Vec<_>>() != labels.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(BorelError::Csv(format!("header {:?} does not match classes {:?}", header, labels)));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| BorelError::Csv(e.to_string()))?;
        let vals = rec.iter().map(|x| x.parse::<i64>().map_err(|_| BorelError::Csv(format!("bad entry {x:?}")))).collect::<Result<Vec<_>, _>>()?;
        out.push(SuperclassFunction::new(vals));
    }
    Ok(out)
}
