//! File formats owned by the command line: each has an emitter and a parser
//! with emit(parse(emit(x))) == emit(x).

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use ttk_group::SuperclassFunction;
use ttk_twisted::{Twist, TwistedElement};

fn csv_text<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn csv_rows<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize().map(|x| x.context("malformed row")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRow {
    pub label: String,
    pub order: usize,
    pub conjugates: usize,
    pub normal: bool,
    pub generators: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub index: usize,
    pub borel_smith: bool,
    pub effective: bool,
    pub violations: String,
}

pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> String {
    csv_text(rows)
}

pub fn rows_from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv_rows(text)
}

/// "name,label..." then one row per named function.
pub fn named_functions_from_csv(text: &str) -> Result<(Vec<String>, Vec<(String, SuperclassFunction)>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.get(0) != Some("name") {
        bail!("first column must be 'name'");
    }
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let vals = rec.iter().skip(1).map(|x| x.parse::<i64>().with_context(|| format!("bad value {x:?}"))).collect::<Result<Vec<_>>>()?;
        rows.push((rec.get(0).unwrap_or_default().to_string(), SuperclassFunction::new(vals)));
    }
    Ok((labels, rows))
}

pub fn named_functions_to_csv(labels: &[String], rows: &[(String, SuperclassFunction)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["name".to_string()];
    header.extend(labels.iter().cloned());
    w.write_record(&header).expect("in-memory write");
    for (name, f) in rows {
        let mut rec = vec![name.clone()];
        rec.extend(f.values().iter().map(|v| v.to_string()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// Component dimensions: rows are shifts, columns twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsTable {
    pub twists: Vec<Twist>,
    pub shifts: Vec<i32>,
    pub dims: Vec<Vec<usize>>,
}

fn parse_twist(s: &str) -> Result<Twist> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.is_empty() {
        return Ok(Twist(vec![]));
    }
    Ok(Twist(inner.split(',').map(|x| x.trim().parse::<u32>().with_context(|| format!("bad twist {s:?}"))).collect::<Result<_>>()?))
}

pub fn twist_from_arg(s: &str) -> Result<Twist> {
    parse_twist(s)
}

impl DimsTable {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["s".to_string()];
        header.extend(self.twists.iter().map(|q| q.to_string()));
        w.write_record(&header).expect("in-memory write");
        for (s, row) in self.shifts.iter().zip(&self.dims) {
            let mut rec = vec![s.to_string()];
            rec.extend(row.iter().map(|d| d.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn from_csv(text: &str) -> Result<DimsTable> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers()?.clone();
        if header.get(0) != Some("s") {
            bail!("first column must be 's'");
        }
        let twists = header.iter().skip(1).map(parse_twist).collect::<Result<Vec<_>>>()?;
        let mut shifts = Vec::new();
        let mut dims = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            shifts.push(rec.get(0).unwrap_or_default().parse()?);
            dims.push(rec.iter().skip(1).map(|x| x.parse::<usize>().map_err(Into::into)).collect::<Result<Vec<_>>>()?);
        }
        Ok(DimsTable { twists, shifts, dims })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub shift: i32,
    pub twist: Vec<u32>,
    pub coeffs: Vec<u32>,
}

impl From<&TwistedElement> for ElementRecord {
    fn from(f: &TwistedElement) -> Self {
        ElementRecord { shift: f.shift, twist: f.twist.0.clone(), coeffs: f.coeffs.clone() }
    }
}

impl From<&ElementRecord> for TwistedElement {
    fn from(r: &ElementRecord) -> Self {
        TwistedElement { shift: r.shift, twist: Twist(r.twist.clone()), coeffs: r.coeffs.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub class: String,
    pub degree: usize,
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaRecord {
    pub class: String,
    pub degree: i32,
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipRecord {
    pub class: String,
    pub member: Vec<bool>,
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("plain data");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).context("malformed json")
}
