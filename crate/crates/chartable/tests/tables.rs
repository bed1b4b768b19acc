use ttk_chartable::{
    dixon_character_table, element_classes, frobenius_schur, real_dimension_functions, real_irreducibles, table_from_csv, table_to_csv,
};
use ttk_group::{catalog, Group, SubgroupClassTable};
use ttk_linalg::{add_mod, inv_mod, mul_mod, FpMatrix};

fn brute_class_count(g: &Group) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for x in g.elements() {
        if !seen[x as usize] {
            count += 1;
            for y in g.elements() {
                seen[g.conj(y, x) as usize] = true;
            }
        }
    }
    count
}

#[test]
fn class_counts() {
    for (name, n) in [("C2", 2), ("Q8", 5), ("D8", 5), ("E2r2", 4), ("D16", 7)] {
        let g = catalog(name).unwrap();
        assert_eq!(element_classes(&g).len(), n, "{name}");
        assert_eq!(brute_class_count(&g), n);
    }
}

#[test]
fn degrees() {
    let q8 = dixon_character_table(&catalog("Q8").unwrap()).unwrap();
    assert_eq!(q8.degrees, vec![1, 1, 1, 1, 2]);
    let v4 = dixon_character_table(&catalog("E2r2").unwrap()).unwrap();
    assert_eq!(v4.degrees, vec![1, 1, 1, 1]);
    for name in ["C8", "C9", "E3r2", "D16", "SG32_43", "C2xQ8", "C4xC4"] {
        let t = dixon_character_table(&catalog(name).unwrap()).unwrap();
        let sq: u32 = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sq as usize, t.group_order, "{name}");
        assert_eq!(t.characters[0], vec![1; t.classes.len()]);
    }
}

/// Sum of chi(g^2) over every element, divided by |G|.
fn indicator_by_elements(g: &Group, t: &ttk_chartable::CharacterTable, chi: &[u32]) -> u32 {
    let l = t.modulus;
    let mut s = 0;
    for x in g.elements() {
        s = add_mod(s, chi[t.classes.class_of[g.mul(x, x) as usize]], l);
    }
    mul_mod(s, inv_mod(g.order() as u32 % l, l), l)
}

#[test]
fn indicators() {
    let g = catalog("Q8").unwrap();
    let t = dixon_character_table(&g).unwrap();
    assert_eq!(frobenius_schur(&t, &t.characters[0]).unwrap(), 1);
    let two = t.degrees.iter().position(|&d| d == 2).unwrap();
    assert_eq!(t.degrees[two], 2);
    assert_eq!(frobenius_schur(&t, &t.characters[two]).unwrap(), -1);
    assert_eq!(indicator_by_elements(&g, &t, &t.characters[two]), t.modulus - 1);

    let c4 = catalog("C4").unwrap();
    let t = dixon_character_table(&c4).unwrap();
    let faithful: Vec<usize> = (0..t.len()).filter(|&a| t.characters[a].iter().filter(|&&v| v == 1).count() == 1).collect();
    assert_eq!(faithful.len(), 2);
    for a in faithful {
        assert_eq!(frobenius_schur(&t, &t.characters[a]).unwrap(), 0);
        assert_eq!(indicator_by_elements(&c4, &t, &t.characters[a]), 0);
    }
    for name in ["D8", "D16", "SG32_43", "C9"] {
        let g = catalog(name).unwrap();
        let t = dixon_character_table(&g).unwrap();
        for chi in &t.characters {
            let nu = frobenius_schur(&t, chi).unwrap();
            let want = match nu { 1 => 1, 0 => 0, _ => t.modulus - 1 };
            assert_eq!(indicator_by_elements(&g, &t, chi), want);
        }
    }
}

#[test]
fn dimension_functions_small() {
    for p in ["C3", "C5", "C7"] {
        let g = catalog(p).unwrap();
        let subs = SubgroupClassTable::new(&g);
        let t = dixon_character_table(&g).unwrap();
        let d = real_dimension_functions(&t, &subs).unwrap();
        let vals: Vec<Vec<i64>> = d.functions.iter().map(|f| f.values().to_vec()).collect();
        assert_eq!(vals, vec![vec![1, 1], vec![2, 0]], "{p}");
        assert_eq!(d.trivial, Some(0));
    }
    let g = catalog("E2r2").unwrap();
    let subs = SubgroupClassTable::new(&g);
    let d = real_dimension_functions(&dixon_character_table(&g).unwrap(), &subs).unwrap();
    assert_eq!(d.functions.len(), 4);
    let mut sign_like = 0;
    for f in &d.functions {
        let v = f.values();
        if v.iter().all(|&x| x == 1) {
            continue;
        }
        assert_eq!((v[0], v[4]), (1, 0));
        assert_eq!(v[1..4].iter().filter(|&&x| x == 1).count(), 1);
        assert_eq!(v[1..4].iter().filter(|&&x| x == 0).count(), 2);
        sign_like += 1;
    }
    assert_eq!(sign_like, 3);
}

#[test]
fn regular_representation_and_independence() {
    for name in ["C2", "C4", "C8", "E2r2", "E2r3", "C3", "C9", "E3r2", "D8", "D16", "Q8", "SG32_43"] {
        let g = catalog(name).unwrap();
        let subs = SubgroupClassTable::new(&g);
        let t = dixon_character_table(&g).unwrap();
        let reals = real_irreducibles(&t, &subs).unwrap();
        for c in 0..subs.len() {
            let total: i64 = reals.iter().map(|r| r.regular_multiplicity as i64 * r.function[c]).sum();
            assert_eq!(total as usize, g.order() / subs.class(c).order(), "{name}");
        }
        let d = real_dimension_functions(&t, &subs).unwrap();
        let rows: Vec<Vec<i64>> = d.functions.iter().map(|f| f.values().to_vec()).collect();
        // rank over a large prime equals rank over the rationals for small entries
        let m = FpMatrix::from_rows(1_000_003, &rows).unwrap();
        assert_eq!(m.rank(), rows.len(), "{name}");
    }
}

#[test]
fn csv_round_trip() {
    let g = catalog("D8").unwrap();
    let t = dixon_character_table(&g).unwrap();
    let text = table_to_csv(&t);
    assert_eq!(table_from_csv(&g, &text).unwrap(), t);
    let ints = "1,1,2,2,2\n1,1,1,1,1\n1,1,1,-1,-1\n";
    assert!(table_from_csv(&g, ints).is_err());
    let c2 = catalog("C2").unwrap();
    let t2 = table_from_csv(&c2, "1,1\n1,1\n1,-1\n").unwrap();
    assert_eq!(t2.characters, dixon_character_table(&c2).unwrap().characters);
}

#[test]
fn order_64() {
    for name in ["C2xD16xC2", "C4xC4xC4", "C2xSG32_43"] {
        let g = catalog(name).unwrap();
        let t = dixon_character_table(&g).unwrap();
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u32>() as usize, g.order());
    }
}
