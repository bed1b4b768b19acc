use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttk_chartable::{dixon_character_table, real_dimension_functions};
use ttk_complex::*;
use ttk_group::{catalog, Subgroup, SubgroupClassTable, SuperclassFunction};

fn setup(name: &str) -> (Arc<GroupCtx>, SubgroupClassTable) {
    let g = catalog(name).unwrap();
    let t = SubgroupClassTable::new(&g);
    (GroupCtx::new(g), t)
}

fn index_p_normals(t: &SubgroupClassTable) -> Vec<usize> {
    let g = t.group();
    t.normal_classes()
        .into_iter()
        .filter(|&i| t.class(i).order() * g.prime() as usize == g.order())
        .collect()
}

fn classes_below(t: &SubgroupClassTable, n: usize) -> Vec<bool> {
    (0..t.len()).map(|i| t.leq_up_to_conj(i, n)).collect()
}

fn all_homology(c: &OrbitComplex, t: &SubgroupClassTable) -> Vec<BTreeMap<i32, usize>> {
    t.classes()
        .iter()
        .map(|cl| c.dense_at(&cl.representative).homology_dims())
        .collect()
}

#[test]
fn validate_examples() {
    let (ctx, _) = setup("C3");
    let n = Subgroup::trivial();
    let u = builder_u(&ctx, &n).unwrap();
    assert!(u.validate().is_ok());
    assert_eq!(u.homology_dims(), BTreeMap::from([(2, 1)]));

    // k[G/G] -> k[G/1] along the base coset violates the stabilizer condition
    let whole = Subgroup::whole(ctx.group());
    let modules = BTreeMap::from([(1, vec![whole]), (0, vec![Subgroup::trivial()])]);
    let mut d = Morphism::zero(1, 1);
    d.cols[0].insert(0, Entry::scalar(1));
    let err = OrbitComplex::from_parts(&ctx, modules, BTreeMap::from([(1, d)])).unwrap_err();
    assert!(matches!(err, ComplexError::StabilizerViolation { .. }));

    // perturb d_2 of u_N by a scalar multiple of the identity coset
    let text = complex_to_json(&u);
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["differentials"]["2"][0][0] = serde_json::json!([[0, 1]]);
    let err = complex_from_json(&ctx, &v.to_string()).unwrap_err();
    assert!(matches!(err, ComplexError::NotAComplex(2)));
}

#[test]
fn evaluation_examples() {
    let (ctx, t) = setup("C4");
    let n = t.representative(1).clone();
    let u = builder_u(&ctx, &n).unwrap();
    let top = u.evaluate(&Subgroup::whole(ctx.group()));
    assert_eq!(top.complex.degrees().collect::<Vec<_>>(), vec![0]);
    let at_n = u.evaluate(&n);
    assert_eq!(at_n.weyl.group.order(), 2);
    assert_eq!(at_n.complex.summands(1).len(), 1);
    assert_eq!(at_n.complex.summands(1)[0].order(), 1);

    let free = OrbitComplex::from_parts(
        &ctx,
        BTreeMap::from([(0, vec![Subgroup::trivial()])]),
        BTreeMap::new(),
    )
    .unwrap();
    assert!(free.evaluate(&n).complex.is_zero());
    assert!(!free.is_endotrivial(&t));

    // dimension of evaluation equals the fixed coset count
    let (ctx, t) = setup("D8");
    for k in t.classes() {
        let c = OrbitComplex::from_parts(
            &ctx,
            BTreeMap::from([(0, vec![k.representative.clone()])]),
            BTreeMap::new(),
        )
        .unwrap();
        for h in t.classes() {
            let g = ctx.group();
            let brute = k
                .representative
                .left_transversal(g)
                .iter()
                .filter(|&&x| {
                    h.representative
                        .elements()
                        .iter()
                        .all(|&y| k.representative.contains(g.mul(g.mul(g.inv(x), y), x)))
                })
                .count();
            assert_eq!(c.dense_at(&h.representative).dim(0), brute);
        }
        assert_eq!(
            c.evaluate(&Subgroup::trivial()).complex.total_dim(),
            c.total_dim()
        );
    }
}

/// Criterion: u_N and dihedral complexes are endotrivial with h-marks among
/// the real dimension functions.
#[test]
fn builder_h_marks() {
    for name in [
        "C2", "C4", "C8", "E2r2", "E2r3", "C3", "C9", "E3r2", "D8", "D16", "Q8",
    ] {
        let (ctx, t) = setup(name);
        let dims =
            real_dimension_functions(&dixon_character_table(ctx.group()).unwrap(), &t).unwrap();
        let p = ctx.prime() as i64;
        for n in index_p_normals(&t) {
            let u = builder_u(&ctx, t.representative(n)).unwrap();
            assert!(u.is_endotrivial(&t), "{name}");
            let h = u.h_marks(&t).unwrap();
            let top = if p == 2 { 1 } else { 2 };
            let expect: Vec<i64> = classes_below(&t, n)
                .iter()
                .map(|&b| if b { top } else { 0 })
                .collect();
            assert_eq!(h.values(), &expect[..], "{name}");
            assert!(dims.functions.contains(&h), "{name}: {:?}", h.values());
            assert!(has_contractible_summand(&u).is_none());
        }
    }
    for name in ["D8", "D16"] {
        let (ctx, t) = setup(name);
        let dims =
            real_dimension_functions(&dixon_character_table(ctx.group()).unwrap(), &t).unwrap();
        let c = builder_dihedral(&ctx).unwrap();
        assert!(c.is_endotrivial(&t));
        assert!(has_contractible_summand(&c).is_none());
        let h = c.h_marks(&t).unwrap();
        assert!(dims.functions.contains(&h), "{name}");
        for (i, cl) in t.classes().iter().enumerate() {
            let want = match (cl.order(), cl.members.len()) {
                (1, _) => 2,
                (2, m) if m > 1 => 1,
                _ => 0,
            };
            assert_eq!(h[i], want, "{name} class {}", t.label(i));
        }
    }
}

#[test]
fn inflation() {
    let (ctx, t) = setup("C9");
    let n = t.representative(1).clone();
    let direct = builder_u(&ctx, &n).unwrap();
    let inflated = via_quotient(&ctx, &n, |q| builder_u(q, &Subgroup::trivial())).unwrap();
    assert_eq!(direct.h_marks(&t).unwrap(), inflated.h_marks(&t).unwrap());
    assert_eq!(direct.summands(2)[0].bits(), inflated.summands(2)[0].bits());
    let unit = via_quotient(&ctx, &n, |q| Ok(OrbitComplex::unit(q))).unwrap();
    assert_eq!(unit, OrbitComplex::unit(&ctx));

    let (ctx, t) = setup("Q8");
    let per = builder_periodic(&ctx, 8).unwrap();
    assert!(per.is_endotrivial(&t));
    assert_eq!(per.h_marks(&t).unwrap()[0], 4);
    assert_eq!(per.summands(4).len(), 1);
}

#[test]
fn tensor_and_dual() {
    let (ctx, t) = setup("C2");
    let free = OrbitComplex::from_parts(
        &ctx,
        BTreeMap::from([(0, vec![Subgroup::trivial()])]),
        BTreeMap::new(),
    )
    .unwrap();
    assert_eq!(tensor(&free, &free).summands(0).len(), 2);
    let u = builder_u(&ctx, &Subgroup::trivial()).unwrap();
    assert_eq!(tensor(&OrbitComplex::unit(&ctx), &u), u);
    assert_eq!(OrbitComplex::unit(&ctx).dual(), OrbitComplex::unit(&ctx));
    assert_eq!(u.shift(2).shift(-1), u.shift(1));
    let _ = t;

    for name in ["E2r2", "C9", "D8"] {
        let (ctx, t) = setup(name);
        let cs: Vec<OrbitComplex> = standard_complexes(&ctx, &t)
            .into_iter()
            .map(|x| x.1)
            .collect();
        for a in &cs {
            for b in &cs {
                let ab = tensor(a, b);
                ab.validate().unwrap();
                assert_eq!(
                    ab.h_marks(&t).unwrap(),
                    &a.h_marks(&t).unwrap() + &b.h_marks(&t).unwrap(),
                    "{name}"
                );
            }
            let ad = tensor(a, &a.dual());
            for h in all_homology(&ad, &t) {
                assert_eq!(h, BTreeMap::from([(0, 1)]), "{name}");
            }
        }
    }
}

/// Criterion: elimination on C plus cones, and on tensor squares.
#[test]
fn elimination() {
    let (ctx, _) = setup("C4");
    let k = Subgroup::trivial();
    let (cmin, _) =
        eliminate_contractibles(&OrbitComplex::cone_of_identity(&ctx, &k, 1), Tracking::Full)
            .unwrap();
    assert!(cmin.is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = ["C2", "C3", "C4", "E2r2", "D8", "Q8", "C9"];
    let setups: Vec<_> = names
        .iter()
        .map(|n| {
            let (ctx, t) = setup(n);
            let cs: Vec<OrbitComplex> = standard_complexes(&ctx, &t)
                .into_iter()
                .map(|x| x.1)
                .collect();
            (ctx, t, cs)
        })
        .collect();
    for trial in 0..100 {
        let (ctx, t, cs) = &setups[rng.gen_range(0..setups.len())];
        let base = &cs[rng.gen_range(0..cs.len())];
        let mut c = base.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let cl = t.class(rng.gen_range(0..t.len()));
            let k = &cl.members[rng.gen_range(0..cl.members.len())];
            let top = rng.gen_range(-1..=4);
            c = c.direct_sum(&OrbitComplex::cone_of_identity(ctx, k, top));
        }
        let (cmin, eq) = eliminate_contractibles(&c, Tracking::Full).unwrap();
        assert!(has_contractible_summand(&cmin).is_none(), "trial {trial}");
        eq.verify(&c, &cmin).unwrap();
        assert_eq!(all_homology(&cmin, t), all_homology(&c, t));
        assert_eq!(cmin.num_summands(), base.num_summands(), "trial {trial}");
    }
    for (_, t, cs) in &setups {
        for c in cs {
            let sq = tensor(c, c);
            let (cmin, eq) = eliminate_contractibles(&sq, Tracking::Full).unwrap();
            assert!(has_contractible_summand(&cmin).is_none());
            eq.verify(&sq, &cmin).unwrap();
            assert_eq!(all_homology(&cmin, t), all_homology(&sq, t));
        }
    }
}

fn iota_oracle(
    c: &OrbitComplex,
    t: &SubgroupClassTable,
    h: &SuperclassFunction,
    i: usize,
    j: usize,
) -> bool {
    (0..t.len())
        .any(|b| h[b] == h[i] && h[b] == h[j] && t.leq_up_to_conj(i, b) && t.leq_up_to_conj(j, b))
        && c.is_endotrivial(t)
}

/// Criterion: iota maps.
#[test]
fn iota_maps() {
    for name in [
        "C2", "C4", "C8", "E2r2", "E2r3", "C3", "C9", "E3r2", "D8", "D16", "Q8",
    ] {
        let (ctx, t) = setup(name);
        for (origin, c) in standard_complexes(&ctx, &t) {
            let h = c.h_marks(&t).unwrap();
            let maps: Vec<ChainMapFromUnit> = t
                .classes()
                .iter()
                .map(|cl| c.iota(&cl.representative).unwrap())
                .collect();
            for (i, cl) in t.classes().iter().enumerate() {
                assert_eq!(maps[i].degree as i64, h[i]);
                assert!(
                    c.residue_iso(&maps[i], &cl.representative),
                    "{name} {origin}"
                );
                for j in 0..t.len() {
                    let eq = c
                        .iota_equal(&cl.representative, t.representative(j))
                        .unwrap();
                    assert_eq!(eq, iota_oracle(&c, &t, &h, i, j), "{name} {origin} {i} {j}");
                }
            }
        }
        for n in index_p_normals(&t) {
            let u = builder_u(&ctx, t.representative(n)).unwrap();
            let top = u.hi().unwrap();
            for (i, cl) in t.classes().iter().enumerate() {
                let m = u.iota(&cl.representative).unwrap();
                if t.leq_up_to_conj(i, n) {
                    assert_eq!((m.degree, m.coeffs.clone()), (top, vec![1]));
                } else {
                    assert_eq!((m.degree, m.coeffs.clone()), (0, vec![1]));
                }
            }
        }
    }
    let (ctx, t) = setup("D16");
    let c = builder_dihedral(&ctx).unwrap();
    let refl: Vec<&Subgroup> = t
        .classes()
        .iter()
        .filter(|c| c.order() == 2 && c.members.len() > 1)
        .map(|c| &c.representative)
        .collect();
    let (h1, h2) = (refl[0], refl[1]);
    let i1 = c.iota(h1).unwrap();
    let i2 = c.iota(h2).unwrap();
    assert_ne!(i1, i2);
    assert!(c
        .orbit_sums_at(i2.degree, &i2.coeffs, h1)
        .iter()
        .all(|&x| x == 0));
    assert!(c
        .orbit_sums_at(i1.degree, &i1.coeffs, h2)
        .iter()
        .all(|&x| x == 0));
    assert!(!c.iota_equal(h1, h2).unwrap());
}

#[test]
fn hom_counting() {
    for name in ["C2", "C3", "E2r2", "C4"] {
        let (ctx, t) = setup(name);
        let cs: Vec<OrbitComplex> = standard_complexes(&ctx, &t)
            .into_iter()
            .map(|x| x.1)
            .collect();
        let mut models = cs.clone();
        for a in &cs {
            for b in &cs {
                models.push(minimize(&tensor(a, b)).unwrap());
            }
        }
        let unit = OrbitComplex::unit(&ctx);
        for c in models.iter().filter(|c| c.total_dim() <= 200) {
            for s in -6..=6 {
                let n = c.summands(-s).len();
                assert_eq!(fixed_cycle_dimension(c, -s), n, "{name}");
                assert_eq!(chain_map_space(&unit, &c.shift(s)).len(), n, "{name} s={s}");
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let (ctx, t) = setup("D8");
    for (_, c) in standard_complexes(&ctx, &t) {
        let text = complex_to_json(&c);
        let back = complex_from_json(&ctx, &text).unwrap();
        assert_eq!(back, c);
        assert_eq!(complex_to_json(&back), text);
    }
    let rows = vec![("u".to_string(), SuperclassFunction::new(vec![1; t.len()]))];
    let csv = h_marks_to_csv(&t, &rows);
    assert!(csv.starts_with("name,1_0,"));
}

/// Criterion: endotriviality agrees with C ⊗ C* ≃ k[0] at every evaluation.
#[test]
fn conservativity() {
    for name in ["C2", "C3", "C4", "E2r2", "D8", "Q8"] {
        let (ctx, t) = setup(name);
        let mut cs: Vec<OrbitComplex> = standard_complexes(&ctx, &t)
            .into_iter()
            .map(|x| x.1)
            .collect();
        for k in t.classes() {
            cs.push(
                OrbitComplex::from_parts(
                    &ctx,
                    BTreeMap::from([(0, vec![k.representative.clone()])]),
                    BTreeMap::new(),
                )
                .unwrap(),
            );
        }
        let extra: Vec<OrbitComplex> = cs
            .iter()
            .map(|c| c.direct_sum(&OrbitComplex::unit(&ctx)))
            .collect();
        cs.extend(extra);
        for c in &cs {
            let oracle = all_homology(&tensor(c, &c.dual()), &t)
                .iter()
                .all(|h| h == &BTreeMap::from([(0, 1)]));
            assert_eq!(c.is_endotrivial(&t), oracle, "{name}");
        }
    }
}

#[test]
fn realize_small() {
    for name in ["C4", "E2r2", "D16"] {
        let (ctx, t) = setup(name);
        let dims =
            real_dimension_functions(&dixon_character_table(ctx.group()).unwrap(), &t).unwrap();
        let r = realize_basis(&ctx, &t, &dims.functions, &[]).unwrap();
        for e in &r {
            let c = e
                .complex
                .as_ref()
                .unwrap_or_else(|| panic!("{name}: {:?} unrealized", e.function.values()));
            assert_eq!(c.h_marks(&t).unwrap(), e.function);
        }
    }
}

/// dim V^H for V induced from the sign character of L with kernel K: H-orbits
/// on lines gL whose stabilizer sits inside gKg^-1.
fn monomial_fixed_dim(g: &ttk_group::Group, l: &ttk_group::Subgroup, k: &ttk_group::Subgroup, h: &ttk_group::Subgroup) -> i64 {
    let lines = l.left_transversal(g);
    let mut seen = vec![false; lines.len()];
    let line_of = |x: u32| lines.iter().position(|&r| l.contains(g.mul(g.inv(r), x))).unwrap();
    let mut count = 0;
    for i in 0..lines.len() {
        if seen[i] {
            continue;
        }
        let mut ok = true;
        for &y in h.elements() {
            let j = line_of(g.mul(y, lines[i]));
            seen[j] = true;
            if j == i && !k.contains(g.mul(g.mul(g.inv(lines[i]), y), lines[i])) {
                ok = false;
            }
        }
        if ok {
            count += 1;
        }
    }
    count
}

#[test]
fn sphere_builder() {
    for name in ["C2", "C4", "D8", "Q8", "E2r2"] {
        let (ctx, t) = setup(name);
        let g = ctx.group().clone();
        let mut built = 0;
        for (_, l) in t.all_subgroups() {
            for (_, k) in t.all_subgroups() {
                if !k.is_subgroup_of(l) || l.order() != 2 * k.order() || g.order() / l.order() > 4 {
                    continue;
                }
                let c = builder_sphere(&ctx, l, k).unwrap();
                assert!(c.is_endotrivial(&t), "{name}");
                let oracle: Vec<i64> = t.classes().iter().map(|cl| monomial_fixed_dim(&g, l, k, &cl.representative)).collect();
                assert_eq!(c.h_marks(&t).unwrap().values(), &oracle[..], "{name}");
                built += 1;
            }
        }
        assert!(built > 0);
    }
    let (ctx, _) = setup("C3");
    let w = Subgroup::whole(ctx.group());
    assert!(builder_sphere(&ctx, &w, &Subgroup::trivial()).is_err());
}
