use std::collections::BTreeMap;
use std::sync::Arc;

use ttk_group::{quotient, Bits, Subgroup, SubgroupClassTable, WeylData};

use crate::complex::{Morphism, OrbitComplex};
use crate::ctx::GroupCtx;
use crate::entry::Entry;
use crate::resolution::min_resolution;
use crate::ComplexError;

/// Order of xN in G/N.
fn order_mod(ctx: &GroupCtx, x: u32, n: &Subgroup) -> usize {
    let g = ctx.group();
    let mut y = x;
    let mut k = 1;
    while !n.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// k[G/N] -(σ-1)-> k[G/N] -> k for N normal with G/N cyclic; for G/N of
/// order 2 just k[G/N] -> k.
pub fn builder_u(ctx: &Arc<GroupCtx>, n: &Subgroup) -> Result<OrbitComplex, ComplexError> {
    let g = ctx.group();
    let whole = Subgroup::whole(g);
    let index = g.order() / n.order();
    if !n.is_normal_in(g, &whole) || index == 1 {
        return Err(ComplexError::BuilderPrecondition(
            "subgroup must be proper and normal".into(),
        ));
    }
    let sigma = g
        .elements()
        .find(|&x| order_mod(ctx, x, n) == index)
        .ok_or_else(|| ComplexError::BuilderPrecondition("quotient is not cyclic".into()))?;
    let p = ctx.prime();
    let mut modules = BTreeMap::from([(0, vec![whole]), (1, vec![n.clone()])]);
    let mut aug = Morphism::zero(1, 1);
    aug.cols[0].insert(0, Entry::scalar(1));
    let mut diffs = BTreeMap::from([(1, aug)]);
    if index > 2 {
        modules.insert(2, vec![n.clone()]);
        let mut d2 = Morphism::zero(1, 1);
        let rep = ctx.cosets(n).rep(sigma);
        d2.cols[0].insert(0, Entry::from_terms(vec![(rep, 1), (0, p - 1)], p));
        diffs.insert(2, d2);
    }
    OrbitComplex::from_parts(ctx, modules, diffs)
}

/// Pull a complex over G/N back to G: summand K/N becomes K and coset
/// representatives are lifted.
pub fn builder_inflate(
    c: &OrbitComplex,
    ctx: &Arc<GroupCtx>,
    q: &WeylData,
) -> Result<OrbitComplex, ComplexError> {
    let g = ctx.group();
    if q.group.order() != c.group().order() {
        return Err(ComplexError::BuilderPrecondition(
            "quotient data does not match the complex".into(),
        ));
    }
    let preimage = |k: &Subgroup| {
        Subgroup::from_bits(
            g,
            Bits::from_iter(
                g.elements()
                    .filter(|&x| q.project(x).is_some_and(|w| k.contains(w))),
            ),
        )
    };
    let modules: BTreeMap<i32, Vec<Subgroup>> = c
        .modules
        .iter()
        .map(|(&i, v)| (i, v.iter().map(preimage).collect()))
        .collect();
    let p = ctx.prime();
    let mut diffs = BTreeMap::new();
    for (&i, d) in &c.diffs {
        let tg = &modules[&(i - 1)];
        let mut m = Morphism::zero(d.sources(), d.targets);
        for (s, col) in d.cols.iter().enumerate() {
            for (&t, e) in col {
                let ct = ctx.cosets(&tg[t]);
                let terms = e
                    .terms()
                    .iter()
                    .map(|&(y, coef)| (ct.rep(q.lifts[y as usize]), coef))
                    .collect();
                m.cols[s].insert(t, Entry::from_terms(terms, p));
            }
        }
        diffs.insert(i, m);
    }
    let out = OrbitComplex::from_parts_unchecked(ctx, modules, diffs, c.is_general());
    out.validate()?;
    Ok(out)
}

/// Build over G/N with `build` and inflate.
pub fn via_quotient(
    ctx: &Arc<GroupCtx>,
    n: &Subgroup,
    build: impl FnOnce(&Arc<GroupCtx>) -> Result<OrbitComplex, ComplexError>,
) -> Result<OrbitComplex, ComplexError> {
    let q = quotient(ctx.group(), n);
    let qctx = GroupCtx::new(q.group.clone());
    let c = build(&qctx)?;
    builder_inflate(&c, ctx, &q)
}

/// Dihedral 2-group of order at least 8, recognised by invariants:
/// exponent |G|/2 and |G|/2 + 1 involutions.
pub fn is_dihedral(ctx: &GroupCtx) -> bool {
    let g = ctx.group();
    let n = g.order();
    let involutions = g.elements().filter(|&x| g.element_order(x) == 2).count();
    g.prime() == 2 && n >= 8 && g.exponent() == n / 2 && involutions == n / 2 + 1
}

/// kG -> k[G/H1] ⊕ k[G/H2] -> k with H1, H2 representatives of the two
/// classes of noncentral involution subgroups.
pub fn builder_dihedral(ctx: &Arc<GroupCtx>) -> Result<OrbitComplex, ComplexError> {
    if !is_dihedral(ctx) {
        return Err(ComplexError::BuilderPrecondition(
            "group is not dihedral of order >= 8".into(),
        ));
    }
    let table = SubgroupClassTable::new(ctx.group());
    let refl: Vec<Subgroup> = table
        .classes()
        .iter()
        .filter(|c| c.order() == 2 && c.members.len() > 1)
        .map(|c| c.representative.clone())
        .collect();
    if refl.len() != 2 {
        return Err(ComplexError::BuilderPrecondition(
            "expected two classes of noncentral involutions".into(),
        ));
    }
    let g = ctx.group();
    let modules = BTreeMap::from([
        (2, vec![Subgroup::trivial()]),
        (1, refl.clone()),
        (0, vec![Subgroup::whole(g)]),
    ]);
    let mut d2 = Morphism::zero(1, 2);
    d2.cols[0].insert(0, Entry::scalar(1));
    d2.cols[0].insert(1, Entry::scalar(1));
    let mut d1 = Morphism::zero(2, 1);
    d1.cols[0].insert(0, Entry::scalar(1));
    d1.cols[1].insert(0, Entry::scalar(1));
    OrbitComplex::from_parts(ctx, modules, BTreeMap::from([(2, d2), (1, d1)]))
}

/// Truncated minimal resolution P_m -> ... -> P_0 -> k stopped where the
/// kernel becomes one dimensional. Free summands only.
pub fn builder_periodic(ctx: &Arc<GroupCtx>, max_len: usize) -> Result<OrbitComplex, ComplexError> {
    let g = ctx.group();
    if g.order() == 1 {
        return Err(ComplexError::BuilderPrecondition("trivial group".into()));
    }
    let r = min_resolution(g, max_len);
    let top = (0..=max_len)
        .find(|&i| r.matrices[i].cols() - r.matrices[i].rank() == 1)
        .ok_or_else(|| {
            ComplexError::BuilderPrecondition(
                "no periodic truncation within the length bound".into(),
            )
        })?;
    let n = g.order();
    let mut modules = BTreeMap::from([(0, vec![Subgroup::whole(g)])]);
    let mut diffs = BTreeMap::new();
    for i in 0..=top {
        modules.insert(i as i32 + 1, vec![Subgroup::trivial(); r.ranks[i]]);
        let mut m = Morphism::zero(r.ranks[i], if i == 0 { 1 } else { r.ranks[i - 1] });
        if i == 0 {
            m.cols[0].insert(0, Entry::scalar(1));
        } else {
            for (j, img) in r.images[i].iter().enumerate() {
                for t in 0..r.ranks[i - 1] {
                    let terms: Vec<(u32, u32)> = (0..n)
                        .filter(|&x| img[t * n + x] != 0)
                        .map(|x| (x as u32, img[t * n + x]))
                        .collect();
                    if !terms.is_empty() {
                        m.cols[j].insert(t, Entry(terms));
                    }
                }
            }
        }
        diffs.insert(i as i32 + 1, m);
    }
    OrbitComplex::from_parts(ctx, modules, diffs)
}
