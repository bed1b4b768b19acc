use ttk_complex::{ChainMapFromUnit, OrbitComplex, RealizedElement};
use ttk_group::SubgroupClassTable;

use crate::SpectrumError;

/// The closed point attached to a subgroup class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPoint {
    pub class: usize,
}

pub fn closed_points(table: &SubgroupClassTable) -> Vec<ClosedPoint> {
    (0..table.len()).map(|class| ClosedPoint { class }).collect()
}

/// Whether `m` becomes a quasi-isomorphism over k after taking fixed points
/// at the class representative.
pub fn residue_iso(c: &OrbitComplex, m: &ChainMapFromUnit, table: &SubgroupClassTable, class: usize) -> bool {
    c.residue_iso(m, table.representative(class))
}

/// Whether every basis element must carry a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Full,
    Partial,
}

/// Entry (H, K) says whether the closed point of K lies in U(H).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<bool>>,
    pub partial: bool,
}

impl MembershipMatrix {
    pub fn is_conjugacy_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(h, row)| row.iter().enumerate().all(|(k, &x)| x == (h == k)))
    }

    /// First cell holds the coverage mode; rows are H, columns K.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mode = if self.partial { "partial" } else { "full" };
        let mut header = vec![mode.to_string()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).expect("write to memory");
        for (label, row) in self.labels.iter().zip(&self.entries) {
            let mut rec = vec![label.clone()];
            rec.extend(row.iter().map(|&x| if x { "1" } else { "0" }.to_string()));
            w.write_record(&rec).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn from_csv(text: &str) -> Result<MembershipMatrix, SpectrumError> {
        let err = |m: String| SpectrumError::Csv(m);
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
        let mut rows = r.records();
        let header = rows.next().ok_or_else(|| err("empty file".into()))?.map_err(|e| err(e.to_string()))?;
        let partial = match header.get(0) {
            Some("partial") => true,
            Some("full") => false,
            other => return Err(err(format!("unknown mode {other:?}"))),
        };
        let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut entries = Vec::new();
        for (i, rec) in rows.enumerate() {
            let rec = rec.map_err(|e| err(e.to_string()))?;
            if rec.get(0) != labels.get(i).map(String::as_str) || rec.len() != labels.len() + 1 {
                return Err(err(format!("row {i} does not match the header")));
            }
            let row = rec
                .iter()
                .skip(1)
                .map(|x| match x {
                    "1" => Ok(true),
                    "0" => Ok(false),
                    _ => Err(err(format!("bad entry {x:?} in row {i}"))),
                })
                .collect::<Result<Vec<bool>, _>>()?;
            entries.push(row);
        }
        if entries.len() != labels.len() {
            return Err(err("matrix is not square".into()));
        }
        Ok(MembershipMatrix { labels, entries, partial })
    }
}

/// AND over realized basis elements C of residue_iso(ι^H_C, K). Under
/// `Coverage::Full` an unrealized element is an error.
pub fn u_membership_matrix(
    table: &SubgroupClassTable,
    realized: &[RealizedElement],
    coverage: Coverage,
) -> Result<MembershipMatrix, SpectrumError> {
    let missing: Vec<usize> = realized
        .iter()
        .enumerate()
        .filter(|(_, e)| e.complex.is_none())
        .map(|(i, _)| i)
        .collect();
    if coverage == Coverage::Full && !missing.is_empty() {
        return Err(SpectrumError::UnrealizedBasisElement { missing });
    }
    let n = table.len();
    let mut entries = vec![vec![true; n]; n];
    for c in realized.iter().filter_map(|e| e.complex.as_ref()) {
        for (h, row) in entries.iter_mut().enumerate() {
            let iota = c.iota(table.representative(h))?;
            for (k, x) in row.iter_mut().enumerate() {
                if *x && !residue_iso(c, &iota, table, k) {
                    *x = false;
                }
            }
        }
    }
    Ok(MembershipMatrix {
        labels: (0..n).map(|i| table.label(i)).collect(),
        entries,
        partial: !missing.is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let m = MembershipMatrix {
            labels: vec!["1_0".into(), "2_0".into()],
            entries: vec![vec![true, false], vec![true, true]],
            partial: true,
        };
        let text = m.to_csv();
        assert_eq!(MembershipMatrix::from_csv(&text).unwrap(), m);
        assert!(!m.is_conjugacy_diagonal());
        assert!(MembershipMatrix::from_csv("full,a\nb,1\n").is_err());
    }
}
