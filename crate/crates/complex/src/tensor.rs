use std::collections::BTreeMap;

use ttk_group::Subgroup;

use crate::complex::{Morphism, OrbitComplex};
use crate::entry::Entry;

/// Where a summand of C ⊗ D came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorSummand {
    pub left_degree: i32,
    pub left: usize,
    pub right: usize,
    pub orbit: usize,
}

/// C ⊗ D together with the provenance of each summand.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub complex: OrbitComplex,
    pub index: BTreeMap<i32, Vec<TensorSummand>>,
    lookup: BTreeMap<(i32, i32, usize, usize), usize>,
}

impl TensorProduct {
    /// Position in the product's degree of the first orbit of a summand pair.
    pub fn offset(
        &self,
        left_degree: i32,
        right_degree: i32,
        left: usize,
        right: usize,
    ) -> Option<usize> {
        self.lookup
            .get(&(left_degree, right_degree, left, right))
            .copied()
    }
}

pub fn tensor(c: &OrbitComplex, d: &OrbitComplex) -> OrbitComplex {
    tensor_tracked(c, d).complex
}

/// Summands of degree n are ordered by left degree, left summand, right
/// summand, then double coset. d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy.
pub fn tensor_tracked(c: &OrbitComplex, d: &OrbitComplex) -> TensorProduct {
    let ctx = c.ctx().clone();
    let p = ctx.prime();
    let g = ctx.group();
    let mut modules: BTreeMap<i32, Vec<Subgroup>> = BTreeMap::new();
    let mut index: BTreeMap<i32, Vec<TensorSummand>> = BTreeMap::new();
    let mut lookup = BTreeMap::new();
    for i in c.degrees() {
        for j in d.degrees() {
            let n = i + j;
            for (a, sa) in c.summands(i).iter().enumerate() {
                for (b, sb) in d.summands(j).iter().enumerate() {
                    let po = ctx.pair_orbits(sa, sb);
                    let mods = modules.entry(n).or_default();
                    lookup.insert((i, j, a, b), mods.len());
                    for (o, (_, stab)) in po.orbits.iter().enumerate() {
                        mods.push(stab.clone());
                        index.entry(n).or_default().push(TensorSummand {
                            left_degree: i,
                            left: a,
                            right: b,
                            orbit: o,
                        });
                    }
                }
            }
        }
    }
    let mut diffs = BTreeMap::new();
    for (&n, summ) in &index {
        let Some(targets) = modules.get(&(n - 1)) else {
            continue;
        };
        let mut m = Morphism::zero(summ.len(), targets.len());
        for (src, ts) in summ.iter().enumerate() {
            let i = ts.left_degree;
            let j = n - i;
            let sa = &c.summands(i)[ts.left];
            let sb = &d.summands(j)[ts.right];
            let gr = ctx.pair_orbits(sa, sb).orbits[ts.orbit].0;
            // d on the left factor
            if let Some(dc) = c.d_ref(i) {
                for (&a2, e) in &dc.cols[ts.left] {
                    let sa2 = &c.summands(i - 1)[a2];
                    let po = ctx.pair_orbits(sa2, sb);
                    let ca2 = ctx.cosets(sa2);
                    let jb = ctx.cosets(sb).index_of(gr);
                    let base = lookup[&(i - 1, j, a2, ts.right)];
                    let mut acc: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
                    for &(y, coef) in e.terms() {
                        let (o, z) = po.lookup(ca2.index_of(y), jb);
                        acc.entry(base + o).or_default().push((z, coef));
                    }
                    for (t, terms) in acc {
                        m.add_entry(src, t, &Entry::from_terms(terms, p), p);
                    }
                }
            }
            // d on the right factor, with the Koszul sign
            if let Some(dd) = d.d_ref(j) {
                let sign = if i.rem_euclid(2) == 1 { p - 1 } else { 1 };
                for (&b2, e) in &dd.cols[ts.right] {
                    let sb2 = &d.summands(j - 1)[b2];
                    let po = ctx.pair_orbits(sa, sb2);
                    let cb2 = ctx.cosets(sb2);
                    let base = lookup[&(i, j - 1, ts.left, b2)];
                    let mut acc: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
                    for &(w, coef) in e.terms() {
                        let (o, z) = po.lookup(0, cb2.index_of(g.mul(gr, w)));
                        acc.entry(base + o).or_default().push((z, coef * sign % p));
                    }
                    for (t, terms) in acc {
                        m.add_entry(src, t, &Entry::from_terms(terms, p), p);
                    }
                }
            }
        }
        diffs.insert(n, m);
    }
    let complex =
        OrbitComplex::from_parts_unchecked(&ctx, modules, diffs, c.is_general() || d.is_general());
    TensorProduct {
        complex,
        index,
        lookup,
    }
}

impl OrbitComplex {
    /// C*_i = Hom(C_{-i}, k), differential the transpose times (-1)^i.
    /// Transposed orbit maps are transfers, so the result is flagged general.
    pub fn dual(&self) -> OrbitComplex {
        let ctx = self.ctx();
        let g = self.group();
        let p = self.prime();
        let modules: BTreeMap<i32, Vec<Subgroup>> =
            self.modules.iter().map(|(&i, v)| (-i, v.clone())).collect();
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            // d_i: C_i -> C_{i-1} dualises to C*_{-i+1} -> C*_{-i}
            let deg = 1 - i;
            let sign = if deg.rem_euclid(2) == 1 { p - 1 } else { 1 };
            let srcs = self.summands(i);
            let tgts = self.summands(i - 1);
            let mut m = Morphism::zero(tgts.len(), srcs.len());
            for (a, col) in d.cols.iter().enumerate() {
                let ca = ctx.cosets(&srcs[a]);
                for (&b, e) in col {
                    let cb = ctx.cosets(&tgts[b]);
                    let dense = e.to_dense(ctx, &tgts[b]);
                    // coefficient of B in the image of xA is e at x^-1 B
                    let terms: Vec<(u32, u32)> = ca
                        .reps
                        .iter()
                        .map(|&x| (x, dense[cb.index_of(g.inv(x))] * sign % p))
                        .filter(|t| t.1 != 0)
                        .collect();
                    m.cols[b].insert(a, Entry(terms));
                }
            }
            diffs.insert(deg, m);
        }
        OrbitComplex::from_parts_unchecked(ctx, modules, diffs, true)
    }
}
