use std::path::Path;
use std::process::Command;

use ttk_borel::functions_from_csv;
use ttk_chartable::{table_from_csv, table_to_csv};
use ttk_cli::report::*;
use ttk_complex::{complex_from_json, complex_to_json, GroupCtx};
use ttk_group::{catalog, SubgroupClassTable};
use ttk_spectrum::{MembershipMatrix, Witness};

fn ttk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ttk")).args(args).output().expect("spawn ttk");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = ttk(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spec_examples() {
    let basis = ok(&["bsbasis", "--group", "C2"]);
    assert_eq!(basis.lines().count(), 3, "{basis}");

    let pairs = ok(&["indist", "--group", "SG32_43"]);
    assert_eq!(rows_from_csv::<PairRow>(&pairs).unwrap().len(), 1);
    for name in ["C2", "C4", "E2r3", "C9", "E3r2", "D8", "Q8"] {
        let pairs = ok(&["indist", "--group", name]);
        assert!(rows_from_csv::<PairRow>(&pairs).unwrap().is_empty(), "{name}");
    }

    let m = MembershipMatrix::from_csv(&ok(&["spectrum", "umatrix", "--group", "E2r2"])).unwrap();
    assert_eq!(m.labels.len(), 5);
    assert!(m.is_conjugacy_diagonal() && !m.partial);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ttk(&["bsbasis", "--group", "C6"]).0, 2);
    assert_eq!(ttk(&["bsbasis", "--group", "C2", "--prime", "3"]).0, 2);
    assert_eq!(ttk(&["bsbasis", "--group", "C2", "--format", "json"]).0, 2);
    assert_eq!(ttk(&["twisted", "dims", "--group", "C2", "--max-shift", "0"]).0, 2);
    assert_eq!(ttk(&["nonsense"]).0, 2);
    assert_eq!(ttk(&["--help"]).0, 0);

    // kG alone in degree 0 is not endotrivial
    let free = r#"{"group":"C2","degrees":{"0":[[]]},"differentials":{}}"#;
    let path = write(dir.path(), "free.json", free);
    assert_eq!(ttk(&["complex", "validate", "--group", "C2", "--file", &path]).0, 0);
    assert_eq!(ttk(&["complex", "hmarks", "--group", "C2", "--file", &path]).0, 3);
    let bad = write(dir.path(), "bad.json", "{");
    assert_eq!(ttk(&["complex", "validate", "--group", "C2", "--file", &bad]).0, 2);

    assert_eq!(ttk(&["spectrum", "umatrix", "--group", "SG32_43"]).0, 3);
    let partial = ok(&["spectrum", "umatrix", "--group", "SG32_43", "--partial"]);
    assert!(partial.starts_with("partial,"));
}

#[test]
fn group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "klein.txt", "degree 4\n(1 2)(3 4)\n(1 3)(2 4)\n");
    let from_file = ok(&["subgroups", "--group", &path]);
    let from_catalog = ok(&["subgroups", "--group", "E2r2"]);
    assert_eq!(rows_from_csv::<SubgroupRow>(&from_file).unwrap().len(), 5);
    assert_eq!(from_file.lines().count(), from_catalog.lines().count());
}

#[test]
fn deterministic_output() {
    for args in [
        &["subgroups", "--group", "D16"][..],
        &["chartable", "--group", "Q8"],
        &["twisted", "dims", "--group", "E2r2", "--max-twist", "2"],
        &["spectrum", "umatrix", "--group", "D8"],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

/// Every emitted file parses back and re-emits byte-identically.
#[test]
fn round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let g = catalog("C3").unwrap();
    let table = SubgroupClassTable::new(&g);
    let ctx = GroupCtx::new(g.clone());

    let text = ok(&["subgroups", "--group", "C3"]);
    assert_eq!(rows_to_csv(&rows_from_csv::<SubgroupRow>(&text).unwrap()), text);
    let text = ok(&["subgroups", "--group", "C3", "--format", "json"]);
    assert_eq!(to_json(&from_json::<Vec<SubgroupRow>>(&text).unwrap()), text);

    let text = ok(&["chartable", "--group", "C3"]);
    assert_eq!(table_to_csv(&table_from_csv(&g, &text).unwrap()), text);

    let text = ok(&["bsbasis", "--group", "C3"]);
    let fns = functions_from_csv(&table, &text).unwrap();
    assert_eq!(ttk_borel::functions_to_csv(&table, &fns), text);
    let fpath = write(d, "fns.csv", &text);
    let text = ok(&["bscheck", &fpath, "--group", "C3"]);
    let rows: Vec<CheckRow> = rows_from_csv(&text).unwrap();
    assert!(rows.iter().all(|r| r.borel_smith && r.effective));
    assert_eq!(rows_to_csv(&rows), text);

    let text = ok(&["indist", "--group", "SG32_43", "--format", "json"]);
    assert_eq!(to_json(&from_json::<Vec<PairRow>>(&text).unwrap()), text);

    let u = ok(&["complex", "build", "--kind", "u", "--sub", "1_0", "--group", "C3"]);
    assert_eq!(complex_to_json(&complex_from_json(&ctx, &u).unwrap()), u);
    let upath = write(d, "u.json", &u);
    assert_eq!(ok(&["complex", "validate", "--group", "C3", "--file", &upath]), u);
    assert_eq!(ok(&["complex", "minimize", "--group", "C3", "--file", &upath]), u);
    let marks = ok(&["complex", "hmarks", "--group", "C3", "--file", &upath]);
    let (labels, rows) = named_functions_from_csv(&marks).unwrap();
    assert_eq!(rows[0].1.values(), &[2, 0]);
    assert_eq!(named_functions_to_csv(&labels, &rows), marks);
    let iota = ok(&["complex", "iota", "--group", "C3", "--file", &upath, "--sub", "1_0"]);
    let rec: IotaRecord = from_json(&iota).unwrap();
    assert_eq!(rec.degree, 2);
    assert_eq!(to_json(&rec), iota);

    let dims = ok(&["twisted", "dims", "--group", "C3", "--max-shift", "4", "--max-twist", "2"]);
    let t = DimsTable::from_csv(&dims).unwrap();
    assert_eq!(t.to_csv(), dims);
    assert_eq!(t.dims[0][0], 1);

    let basis = ok(&["twisted", "basis", "--group", "C3", "--twist", "1", "--shift", "-1"]);
    let elems: Vec<ElementRecord> = from_json(&basis).unwrap();
    assert_eq!(elems.len(), 1);
    assert_eq!(to_json(&elems), basis);
    let bpath = write(d, "b.json", &basis);
    let prod = ok(&["twisted", "multiply", "--group", "C3", "--left", &bpath, "--right", &bpath]);
    let p: Vec<ElementRecord> = from_json(&prod).unwrap();
    assert_eq!((p[0].shift, p[0].twist.clone()), (-2, vec![2]));
    assert!(p[0].coeffs.iter().all(|&c| c == 0), "odd classes square to zero");
    assert_eq!(to_json(&p), prod);
    let img = ok(&["twisted", "psihat", "--group", "C3", "--file", &bpath, "--sub", "1_0"]);
    let imgs: Vec<ImageRecord> = from_json(&img).unwrap();
    assert_eq!(imgs[0].degree, 1);
    assert_eq!(to_json(&imgs), img);
    let member = ok(&["spectrum", "compmember", "--group", "C3", "--file", &bpath, "--sub", "3_0"]);
    let rec: MembershipRecord = from_json(&member).unwrap();
    assert_eq!(rec.member, vec![true]);
    assert_eq!(to_json(&rec), member);

    let text = ok(&["spectrum", "umatrix", "--group", "C3"]);
    assert_eq!(MembershipMatrix::from_csv(&text).unwrap().to_csv(), text);
    let text = ok(&["spectrum", "witness", "--group", "C3", "--h", "1_0", "--k", "3_0"]);
    let w = Witness::from_json(&text).unwrap();
    assert_eq!(format!("{}\n", w.to_json()), text);
}

/// The missing SG32_43 element realized by a sphere complex given on the
/// command line.
#[test]
fn user_supplied_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let g = catalog("SG32_43").unwrap();
    let table = SubgroupClassTable::new(&g);
    let labels: Vec<String> = (0..table.len()).map(|i| table.label(i)).collect();
    let mut found = None;
    'search: for l in labels.iter().filter(|l| l.starts_with("8_")) {
        for k in labels.iter().filter(|k| k.starts_with("4_")) {
            let (code, out, _) = ttk(&["complex", "build", "--kind", "sphere", "--group", "SG32_43", "--sub", l, "--kernel", k]);
            if code != 0 {
                continue;
            }
            let path = write(dir.path(), "sphere.json", &out);
            let marks = ok(&["complex", "hmarks", "--group", "SG32_43", "--file", &path]);
            let (_, rows) = named_functions_from_csv(&marks).unwrap();
            if rows[0].1.values()[..6] == [4, 2, 2, 2, 2, 0] {
                found = Some(path);
                break 'search;
            }
        }
    }
    let path = found.expect("a sphere with the missing h-marks");
    let m = MembershipMatrix::from_csv(&ok(&["spectrum", "umatrix", "--group", "SG32_43", "--with", &path])).unwrap();
    assert!(!m.partial);
    assert!(m.is_conjugacy_diagonal());
}
