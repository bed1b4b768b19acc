use std::collections::BTreeMap;
use std::sync::Arc;

use ttk_group::{weyl_group, Bits, Subgroup, WeylData};

use crate::complex::{Morphism, OrbitComplex};
use crate::ctx::GroupCtx;
use crate::dense::fixed_cosets;
use crate::entry::Entry;

/// C^H as a complex over W = N_G(H)/H, together with the Weyl data.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub weyl: WeylData,
    pub complex: OrbitComplex,
}

struct OrbitLabel {
    /// per summand of C_i: per coset index, (W-summand, W-coset rep) if fixed
    label: Vec<Vec<Option<(usize, u32)>>>,
    /// per W-summand: (C-summand, base coset rep in G, W-stabilizer)
    summands: Vec<(usize, u32, Subgroup)>,
}

fn label_degree(
    c: &OrbitComplex,
    i: i32,
    h: &Subgroup,
    weyl: &WeylData,
    wctx: &GroupCtx,
) -> OrbitLabel {
    let ctx = c.ctx();
    let g = c.group();
    let norm = &weyl.normalizer;
    let mut label = Vec::new();
    let mut summands = Vec::new();
    for (s, k) in c.summands(i).iter().enumerate() {
        let cs = ctx.cosets(k);
        let mut lab = vec![None; cs.len()];
        for j in fixed_cosets(ctx, k, h) {
            if lab[j].is_some() {
                continue;
            }
            let x0 = cs.reps[j];
            let x0i = g.inv(x0);
            let stab_w: Vec<u32> = norm
                .elements()
                .iter()
                .filter(|&&n| k.contains(g.mul(g.mul(x0i, n), x0)))
                .map(|&n| weyl.project(n).expect("in normalizer"))
                .collect();
            let stab = Subgroup::from_bits(wctx.group(), Bits::from_iter(stab_w));
            let ws = wctx.cosets(&stab);
            let idx = summands.len();
            for &n in norm.elements() {
                let jj = cs.index_of(g.mul(n, x0));
                if lab[jj].is_none() {
                    lab[jj] = Some((idx, ws.rep(weyl.project(n).expect("in normalizer"))));
                }
            }
            summands.push((s, x0, stab));
        }
        label.push(lab);
    }
    OrbitLabel { label, summands }
}

impl OrbitComplex {
    /// Modular fixed points at H: the N_G(H)-orbit decomposition of each
    /// (G/K)^H, viewed over the Weyl group.
    pub fn evaluate(&self, h: &Subgroup) -> Evaluation {
        let weyl = weyl_group(self.group(), h);
        let wctx = GroupCtx::new(weyl.group.clone());
        let complex = self.evaluate_with(h, &weyl, &wctx);
        Evaluation { weyl, complex }
    }

    pub(crate) fn evaluate_with(
        &self,
        h: &Subgroup,
        weyl: &WeylData,
        wctx: &Arc<GroupCtx>,
    ) -> OrbitComplex {
        let g = self.group();
        let p = self.prime();
        let labels: BTreeMap<i32, OrbitLabel> = self
            .degrees()
            .map(|i| (i, label_degree(self, i, h, weyl, wctx)))
            .collect();
        let modules: BTreeMap<i32, Vec<Subgroup>> = labels
            .iter()
            .map(|(&i, l)| (i, l.summands.iter().map(|s| s.2.clone()).collect()))
            .collect();
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            let (src, tgt) = (&labels[&i], &labels[&(i - 1)]);
            let mut m = Morphism::zero(src.summands.len(), tgt.summands.len());
            let tstabs = self.summands(i - 1);
            for (ws, (s, x0, _)) in src.summands.iter().enumerate() {
                let mut acc: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
                for (&t, e) in &d.cols[*s] {
                    let ct = self.ctx().cosets(&tstabs[t]);
                    for &(y, coef) in e.terms() {
                        if let Some((wt, wr)) = tgt.label[t][ct.index_of(g.mul(*x0, y))] {
                            acc.entry(wt).or_default().push((wr, coef));
                        }
                    }
                }
                for (wt, terms) in acc {
                    let e = Entry::from_terms(terms, p);
                    if !e.is_zero() {
                        m.cols[ws].insert(wt, e);
                    }
                }
            }
            diffs.insert(i, m);
        }
        OrbitComplex::from_parts_unchecked(wctx, modules, diffs, self.general)
    }
}
