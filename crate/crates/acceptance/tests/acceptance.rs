use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ttk_borel::{indistinguishable_pairs, is_borel_smith, is_effective, verify_basis, Constraints};
use ttk_chartable::{dixon_character_table, real_dimension_functions};
use ttk_complex::{
    builder_dihedral, builder_sphere, builder_u, chain_map_space, eliminate_contractibles, has_contractible_summand, minimize,
    realize_basis, standard_complexes, tensor, GroupCtx, OrbitComplex, RealizedElement, Tracking,
};
use ttk_group::{catalog, Subgroup, SubgroupClassTable, SuperclassFunction};
use ttk_spectrum::{comp_membership, residue_iso, separation_witness, u_membership_matrix, Coverage};
use ttk_twisted::{yoneda, Twist, TwistedElement, TwistedRing};

type Outcome = Result<(), String>;

const CATALOG: [&str; 12] = ["C2", "C4", "C8", "E2r2", "E2r3", "C3", "C9", "E3r2", "D8", "D16", "Q8", "SG32_43"];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{what}: {e}")
}

struct Setup {
    ctx: Arc<GroupCtx>,
    table: SubgroupClassTable,
    functions: Vec<SuperclassFunction>,
}

fn setup(name: &str) -> Result<Setup, String> {
    let g = catalog(name).map_err(err(name))?;
    let table = SubgroupClassTable::new(&g);
    let chars = dixon_character_table(&g).map_err(err(name))?;
    let functions = real_dimension_functions(&chars, &table).map_err(err(name))?.functions;
    Ok(Setup { ctx: GroupCtx::new(g), table, functions })
}

impl Setup {
    fn realized(&self, user: &[OrbitComplex]) -> Result<Vec<RealizedElement>, String> {
        realize_basis(&self.ctx, &self.table, &self.functions, user).map_err(err("realize"))
    }

    fn ring(&self) -> Result<TwistedRing, String> {
        Ok(TwistedRing::from_realized(self.ctx.clone(), self.table.clone(), &self.realized(&[])?))
    }

    fn homology(&self, c: &OrbitComplex) -> Vec<BTreeMap<i32, usize>> {
        self.table.classes().iter().map(|cl| c.dense_at(&cl.representative).homology_dims()).collect()
    }
}

fn borel_smith_pipeline() -> Outcome {
    for name in CATALOG {
        let s = setup(name)?;
        let c = Constraints::new(&s.table);
        for f in &s.functions {
            ensure(is_effective(&s.table, f), || format!("{name}: {:?} not effective", f.values()))?;
            ensure(is_borel_smith(&c, f).holds, || format!("{name}: {:?} not Borel-Smith", f.values()))?;
        }
        verify_basis(&c, &s.functions).map_err(err(name))?;
    }
    Ok(())
}

fn indistinguishability() -> Outcome {
    for name in CATALOG {
        let s = setup(name)?;
        let g = s.ctx.group();
        let pairs = indistinguishable_pairs(&s.table, &s.functions);
        if name != "SG32_43" {
            ensure(pairs.is_empty(), || format!("{name}: {pairs:?}"))?;
            continue;
        }
        ensure(pairs.len() == 1, || format!("{name}: {pairs:?}"))?;
        let (a, b, c) = (g.generators()[0], g.generators()[1], g.generators()[2]);
        let a2 = g.mul(a, a);
        let h = Subgroup::generated_by(g, &[b, c]);
        let k = Subgroup::generated_by(g, &[g.mul(a2, b), g.mul(a2, c)]);
        let mut want = [s.table.class_of(&h), s.table.class_of(&k)];
        want.sort();
        ensure(pairs[0] == (want[0], want[1]) && h.order() == 4 && k.order() == 4, || format!("{name}: {pairs:?} vs {want:?}"))?;
    }
    Ok(())
}

fn index_p_normals(t: &SubgroupClassTable) -> Vec<usize> {
    let g = t.group();
    t.normal_classes().into_iter().filter(|&i| t.class(i).order() * g.prime() as usize == g.order()).collect()
}

fn endotrivial_builders() -> Outcome {
    for name in CATALOG {
        let s = setup(name)?;
        let p = s.ctx.prime() as i64;
        for n in index_p_normals(&s.table) {
            let u = builder_u(&s.ctx, s.table.representative(n)).map_err(err(name))?;
            ensure(u.is_endotrivial(&s.table), || format!("{name}: u_N not endotrivial"))?;
            let h = u.h_marks(&s.table).map_err(err(name))?;
            let top = if p == 2 { 1 } else { 2 };
            let expect: Vec<i64> = (0..s.table.len()).map(|i| if s.table.leq_up_to_conj(i, n) { top } else { 0 }).collect();
            ensure(h.values() == &expect[..], || format!("{name}: u_N marks {:?}", h.values()))?;
            ensure(s.functions.contains(&h), || format!("{name}: {:?} not a dimension function", h.values()))?;
        }
    }
    for name in ["D8", "D16"] {
        let s = setup(name)?;
        let c = builder_dihedral(&s.ctx).map_err(err(name))?;
        ensure(c.is_endotrivial(&s.table), || format!("{name}: dihedral not endotrivial"))?;
        let h = c.h_marks(&s.table).map_err(err(name))?;
        ensure(s.functions.contains(&h), || format!("{name}: dihedral marks {:?}", h.values()))?;
        for (i, cl) in s.table.classes().iter().enumerate() {
            let want = match (cl.order(), cl.members.len()) {
                (1, _) => 2,
                (2, m) if m > 1 => 1,
                _ => 0,
            };
            ensure(h[i] == want, || format!("{name}: h({}) = {}", s.table.label(i), h[i]))?;
        }
    }
    Ok(())
}

fn elimination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pools = Vec::new();
    for name in ["C2", "C3", "C4", "E2r2", "D8", "Q8", "C9"] {
        let s = setup(name)?;
        let cs: Vec<OrbitComplex> = standard_complexes(&s.ctx, &s.table).into_iter().map(|x| x.1).collect();
        pools.push((s, cs));
    }
    for trial in 0..100 {
        let (s, cs) = &pools[rng.gen_range(0..pools.len())];
        let base = &cs[rng.gen_range(0..cs.len())];
        let mut c = base.clone();
        for _ in 0..rng.gen_range(1..=3) {
            let cl = s.table.class(rng.gen_range(0..s.table.len()));
            let k = &cl.members[rng.gen_range(0..cl.members.len())];
            c = c.direct_sum(&OrbitComplex::cone_of_identity(&s.ctx, k, rng.gen_range(-1..=4)));
        }
        let (cmin, eq) = eliminate_contractibles(&c, Tracking::Full).map_err(err("eliminate"))?;
        ensure(has_contractible_summand(&cmin).is_none(), || format!("trial {trial}: contractible summand left"))?;
        eq.verify(&c, &cmin).map_err(err("equivalence"))?;
        ensure(s.homology(&cmin) == s.homology(&c), || format!("trial {trial}: homology changed"))?;
    }
    for (s, cs) in &pools {
        for c in cs {
            let sq = tensor(c, c);
            let (cmin, eq) = eliminate_contractibles(&sq, Tracking::Full).map_err(err("eliminate"))?;
            ensure(has_contractible_summand(&cmin).is_none(), || "tensor square not minimal".into())?;
            eq.verify(&sq, &cmin).map_err(err("equivalence"))?;
            ensure(s.homology(&cmin) == s.homology(&sq), || "tensor square homology changed".into())?;
        }
    }
    Ok(())
}

fn iota_maps() -> Outcome {
    for name in CATALOG {
        let s = setup(name)?;
        let t = &s.table;
        for (origin, c) in standard_complexes(&s.ctx, t) {
            let h = c.h_marks(t).map_err(err(name))?;
            for (i, cl) in t.classes().iter().enumerate() {
                let m = c.iota(&cl.representative).map_err(err(name))?;
                ensure(m.degree as i64 == h[i], || format!("{name} {origin}: iota degree"))?;
                ensure(c.residue_iso(&m, &cl.representative), || format!("{name} {origin}: cone of iota not exact"))?;
                for j in 0..t.len() {
                    let equal = c.iota_equal(&cl.representative, t.representative(j)).map_err(err(name))?;
                    let oracle = (0..t.len()).any(|b| h[b] == h[i] && h[b] == h[j] && t.leq_up_to_conj(i, b) && t.leq_up_to_conj(j, b));
                    ensure(equal == oracle, || format!("{name} {origin}: iota_equal({i}, {j})"))?;
                }
            }
        }
        for n in index_p_normals(t) {
            let u = builder_u(&s.ctx, t.representative(n)).map_err(err(name))?;
            let top = u.hi().unwrap_or(0);
            for (i, cl) in t.classes().iter().enumerate() {
                let m = u.iota(&cl.representative).map_err(err(name))?;
                let want = if t.leq_up_to_conj(i, n) { top } else { 0 };
                ensure(m.degree == want && m.coeffs == [1], || format!("{name}: a_N/b_N identification at {i}"))?;
            }
        }
    }
    let s = setup("D16")?;
    let c = builder_dihedral(&s.ctx).map_err(err("D16"))?;
    let refl: Vec<&Subgroup> =
        s.table.classes().iter().filter(|c| c.order() == 2 && c.members.len() > 1).map(|c| &c.representative).collect();
    let i1 = c.iota(refl[0]).map_err(err("D16"))?;
    let i2 = c.iota(refl[1]).map_err(err("D16"))?;
    let vanish = |m: &ttk_complex::ChainMapFromUnit, k: &Subgroup| c.orbit_sums_at(m.degree, &m.coeffs, k).iter().all(|&x| x == 0);
    ensure(vanish(&i2, refl[0]) && vanish(&i1, refl[1]) && i1 != i2, || "D16 reflection iota maps do not vanish".into())
}

fn hom_counting() -> Outcome {
    for name in ["C2", "C3", "E2r2", "C4"] {
        let s = setup(name)?;
        let r = s.ring()?;
        let unit = OrbitComplex::unit(&s.ctx);
        for q in Twist::enumerate(r.rank(), 3) {
            let m = r.minimal_model(&q).map_err(err(name))?;
            if m.total_dim() > 200 {
                continue;
            }
            for sh in -6..=6 {
                let brute = chain_map_space(&unit, &m.shift(sh)).len();
                let fast = r.hom_dimension(&q, sh).map_err(err(name))?;
                ensure(brute == fast, || format!("{name} q={q} s={sh}: {fast} vs {brute}"))?;
            }
        }
    }
    Ok(())
}

fn low_degree_basis(r: &TwistedRing, bound: u32) -> Result<Vec<TwistedElement>, String> {
    let mut out = Vec::new();
    for q in Twist::enumerate(r.rank(), bound) {
        for sh in -(bound as i32 - q.total() as i32)..=0 {
            out.extend(r.basis_of_component(&q, sh).map_err(err("component"))?);
        }
    }
    Ok(out)
}

fn degree(f: &TwistedElement) -> u32 {
    f.twist.total() + f.shift.unsigned_abs()
}

fn ring_structure() -> Outcome {
    for name in ["C2", "C3"] {
        let r = setup(name)?.ring()?;
        let p = r.prime();
        let elems = low_degree_basis(&r, 6)?;
        for f in &elems {
            for g in elems.iter().filter(|g| degree(f) + degree(g) <= 6) {
                let fg = r.multiply(f, g).map_err(err(name))?;
                let gf = r.multiply(g, f).map_err(err(name))?;
                let sign = if (f.shift * g.shift).rem_euclid(2) == 1 { p - 1 } else { 1 };
                ensure(fg == gf.scale(sign, p), || format!("{name}: commutativity {f:?} {g:?}"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rings: Vec<TwistedRing> = ["C2", "C3", "E2r2"].iter().map(|n| setup(n)?.ring()).collect::<Result<_, _>>()?;
    let pools: Vec<Vec<TwistedElement>> = rings.iter().map(|r| low_degree_basis(r, 2)).collect::<Result<_, _>>()?;
    for _ in 0..200 {
        let i = rng.gen_range(0..rings.len());
        let (r, elems) = (&rings[i], &pools[i]);
        let p = r.prime();
        let mut pick = || elems[rng.gen_range(0..elems.len())].scale(rng.gen_range(1..p), p);
        let (a, b, c) = (pick(), pick(), pick());
        let left = r.multiply(&r.multiply(&a, &b).map_err(err("multiply"))?, &c).map_err(err("multiply"))?;
        let right = r.multiply(&a, &r.multiply(&b, &c).map_err(err("multiply"))?).map_err(err("multiply"))?;
        ensure(left == right, || format!("associativity {a:?} {b:?} {c:?}"))?;
    }
    Ok(())
}

fn psi_hat_homomorphism() -> Outcome {
    for name in ["C2", "C3", "E2r2"] {
        let r = setup(name)?.ring()?;
        let p = r.prime();
        let t = r.table().clone();
        let elems = low_degree_basis(&r, 4)?;
        let psi = |f: &TwistedElement, class: usize| r.psi_hat(f, class).map_err(err(name));
        for class in 0..t.len() {
            for f in &elems {
                let a = psi(f, class)?;
                let n = r.h_mark(&f.twist, class) + f.shift as i64;
                ensure(if n < 0 { a.is_zero() } else { a.degree as i64 == n }, || format!("{name}: degree of {f:?}"))?;
                for g in elems.iter().filter(|g| (g.shift, &g.twist) == (f.shift, &f.twist)) {
                    let b = psi(g, class)?;
                    let sum: Vec<u32> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % p).collect();
                    ensure(psi(&f.add(g, p), class)?.coeffs == sum, || format!("{name}: additivity"))?;
                }
                for g in elems.iter().filter(|g| degree(f) + degree(g) <= 4) {
                    let b = psi(g, class)?;
                    let fg = psi(&r.multiply(f, g).map_err(err(name))?, class)?;
                    let nb = r.h_mark(&g.twist, class) + g.shift as i64;
                    let want_zero = n < 0 || nb < 0;
                    let ok = if want_zero { fg.is_zero() } else { fg == yoneda(&r.resolution(class, a.degree + b.degree + 1), &a, &b) };
                    ensure(ok, || format!("{name}: multiplicativity {f:?} {g:?} at {class}"))?;
                }
            }
        }
        let whole = t.whole_class();
        for j in 0..r.rank() {
            let a = psi(&r.iota_element(j, whole).map_err(err(name))?, 0)?;
            ensure(!a.is_zero() && a.degree as i64 == r.basis()[j].function[0], || format!("{name}: iota^G image at 1"))?;
        }
    }
    Ok(())
}

fn nilpotence() -> Outcome {
    for name in ["C2", "C3", "E2r2"] {
        let r = setup(name)?.ring()?;
        let p = r.prime() as usize;
        for q in Twist::enumerate(r.rank(), 2) {
            for sh in -4..=0 {
                let basis = r.basis_of_component(&q, sh).map_err(err(name))?;
                let n = basis.len();
                if n == 0 || n > 3 {
                    continue;
                }
                for code in 1..p.pow(n as u32) {
                    let coeffs: Vec<u32> = (0..n).map(|i| (code / p.pow(i as u32) % p) as u32).collect();
                    let f = TwistedElement { shift: sh, twist: q.clone(), coeffs };
                    let nil = r.is_nilpotent(&f).map_err(err(name))?;
                    let power = r.power_vanishes(&f).map_err(err(name))?;
                    ensure(nil == power, || format!("{name}: {f:?} is_nilpotent {nil}, f^8 = 0 {power}"))?;
                }
            }
        }
    }
    Ok(())
}

/// A sign-representation sphere with the given h-marks.
fn sphere_for(s: &Setup, target: &SuperclassFunction) -> Result<OrbitComplex, String> {
    for (_, l) in s.table.all_subgroups() {
        for (_, k) in s.table.all_subgroups() {
            if !k.is_subgroup_of(l) || l.order() != 2 * k.order() || s.ctx.group().order() / l.order() != target[0] as usize {
                continue;
            }
            let c = builder_sphere(&s.ctx, l, k).map_err(err("sphere"))?;
            if &c.h_marks(&s.table).map_err(err("sphere"))? == target {
                return minimize(&c).map_err(err("sphere"));
            }
        }
    }
    Err(format!("no sphere realizes {:?}", target.values()))
}

fn spectrum_shadow() -> Outcome {
    for name in ["E2r2", "E2r3", "C4", "D8", "D16", "Q8"] {
        let s = setup(name)?;
        let realized = s.realized(&[])?;
        let n = s.table.len();
        let m = u_membership_matrix(&s.table, &realized, Coverage::Full).map_err(err(name))?;
        ensure(m.is_conjugacy_diagonal(), || format!("{name}: matrix {:?}", m.entries))?;
        for h in 0..n {
            for k in (0..n).filter(|&k| k != h) {
                separation_witness(&s.table, &realized, h, k).map_err(err(name))?;
            }
        }
        let r = s.ring()?;
        let mut separated = vec![vec![false; n]; n];
        for j in 0..r.rank() {
            let c = r.basis()[j].complex.clone().ok_or_else(|| format!("{name}: unrealized"))?;
            for h in 0..n {
                let f = r.iota_element(j, h).map_err(err(name))?;
                let iota = c.iota(s.table.representative(h)).map_err(err(name))?;
                for (k, sep) in separated[h].iter_mut().enumerate() {
                    let member = comp_membership(&r, &f, k).map_err(err(name))?;
                    ensure(member != residue_iso(&c, &iota, &s.table, k), || format!("{name}: comp vs residue at {h},{k}"))?;
                    *sep |= member;
                }
            }
        }
        for (h, row) in separated.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                ensure(x == (h != k), || format!("{name}: comp_membership pattern at {h},{k}"))?;
            }
        }
    }
    let s = setup("SG32_43")?;
    let realized = s.realized(&[])?;
    let partial = u_membership_matrix(&s.table, &realized, Coverage::Partial).map_err(err("SG32_43"))?;
    ensure(partial.partial, || "SG32_43 matrix not labelled partial".into())?;
    let missing: Vec<&SuperclassFunction> = realized.iter().filter(|e| e.complex.is_none()).map(|e| &e.function).collect();
    let user = missing.iter().map(|f| sphere_for(&s, f)).collect::<Result<Vec<_>, _>>()?;
    let full = s.realized(&user)?;
    let m = u_membership_matrix(&s.table, &full, Coverage::Partial).map_err(err("SG32_43"))?;
    let n = s.table.len();
    for h in 0..n {
        for k in (h + 1)..n {
            if s.functions.iter().any(|f| f[h] != f[k]) {
                ensure(!m.entries[h][k] || !m.entries[k][h], || format!("SG32_43: {h},{k} not separated"))?;
            }
        }
    }
    Ok(())
}

fn conservativity() -> Outcome {
    for name in CATALOG.iter().filter(|n| **n != "SG32_43") {
        let s = setup(name)?;
        let mut cs: Vec<OrbitComplex> = standard_complexes(&s.ctx, &s.table).into_iter().map(|x| x.1).collect();
        for k in s.table.classes() {
            let single = OrbitComplex::from_parts(&s.ctx, BTreeMap::from([(0, vec![k.representative.clone()])]), BTreeMap::new());
            cs.push(single.map_err(err(name))?);
        }
        let extra: Vec<OrbitComplex> = cs.iter().map(|c| c.direct_sum(&OrbitComplex::unit(&s.ctx))).collect();
        cs.extend(extra);
        for c in &cs {
            let oracle = s.homology(&tensor(c, &c.dual())).iter().all(|h| h == &BTreeMap::from([(0, 1)]));
            ensure(c.is_endotrivial(&s.table) == oracle, || format!("{name}: endotriviality disagrees with C (x) C*"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("borel-smith pipeline", borel_smith_pipeline),
        ("indistinguishable pairs", indistinguishability),
        ("endotrivial builders", endotrivial_builders),
        ("elimination", elimination),
        ("iota maps", iota_maps),
        ("hom counting", hom_counting),
        ("ring structure", ring_structure),
        ("psi-hat homomorphism", psi_hat_homomorphism),
        ("nilpotence", nilpotence),
        ("spectrum shadow", spectrum_shadow),
        ("conservativity", conservativity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
