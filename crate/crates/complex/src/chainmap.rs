use std::collections::BTreeMap;

use ttk_group::Subgroup;
use ttk_linalg::{mul_mod, sub_mod, FpMatrix};

use crate::complex::{GradedMap, Morphism, OrbitComplex};
use crate::ctx::GroupCtx;
use crate::entry::Entry;

/// Unknown: coefficient of one source-stabilizer orbit sum of cosets in the
/// entry from source summand to target summand in one degree.
#[derive(Clone, Debug)]
struct Unknown {
    degree: i32,
    source: usize,
    target: usize,
    orbit: Vec<u32>,
}

/// Orbits of A acting on G/B from the left, as lists of coset representatives.
fn coset_orbits(ctx: &GroupCtx, a: &Subgroup, b: &Subgroup) -> Vec<Vec<u32>> {
    let g = ctx.group();
    let cb = ctx.cosets(b);
    let mut seen = vec![false; cb.len()];
    let mut out = Vec::new();
    for j in 0..cb.len() {
        if seen[j] {
            continue;
        }
        let mut orbit = Vec::new();
        for &x in a.elements() {
            let k = cb.index_of(g.mul(x, cb.reps[j]));
            if !seen[k] {
                seen[k] = true;
                orbit.push(cb.reps[k]);
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Basis of the space of degree-0 chain maps E -> M of the underlying
/// complexes of kG-modules. Entries are invariant vectors, not orbit maps.
pub fn chain_map_space(e: &OrbitComplex, m: &OrbitComplex) -> Vec<GradedMap> {
    let ctx = e.ctx();
    let g = ctx.group();
    let p = ctx.prime();
    let mut unknowns = Vec::new();
    let mut index: BTreeMap<(i32, usize, usize), Vec<usize>> = BTreeMap::new();
    for i in e.degrees() {
        for (a, sa) in e.summands(i).iter().enumerate() {
            for (b, sb) in m.summands(i).iter().enumerate() {
                let ids: Vec<usize> = coset_orbits(ctx, sa, sb)
                    .into_iter()
                    .map(|orbit| {
                        unknowns.push(Unknown {
                            degree: i,
                            source: a,
                            target: b,
                            orbit,
                        });
                        unknowns.len() - 1
                    })
                    .collect();
                index.insert((i, a, b), ids);
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    // equation rows: (degree i, source a in E_i, target c in M_{i-1}, coset of G/C)
    let mut row_of: BTreeMap<(i32, usize, usize), usize> = BTreeMap::new();
    let mut nrows = 0;
    for i in e.degrees() {
        for a in 0..e.summands(i).len() {
            for (c, sc) in m.summands(i - 1).iter().enumerate() {
                row_of.insert((i, a, c), nrows);
                nrows += ctx.cosets(sc).len();
            }
        }
    }
    let mut mat = FpMatrix::zeros(nrows.max(1), unknowns.len(), p);
    for (col, u) in unknowns.iter().enumerate() {
        let i = u.degree;
        // d_M after f_i
        if let Some(dm) = m.d_ref(i) {
            for (&c, ent) in &dm.cols[u.target] {
                let sc = &m.summands(i - 1)[c];
                let cc = ctx.cosets(sc);
                let base = row_of[&(i, u.source, c)];
                for &y in &u.orbit {
                    for &(z, coef) in ent.terms() {
                        mat.add_at(base + cc.index_of(g.mul(y, z)), col, coef);
                    }
                }
            }
        }
        // minus f_{i-1}... contributes to equations of degree i+1 sources
        if let Some(de) = e.d_ref(i + 1) {
            let sc = &m.summands(i)[u.target];
            let cc = ctx.cosets(sc);
            for (a2, dcol) in de.cols.iter().enumerate() {
                if let Some(ent) = dcol.get(&u.source) {
                    let base = row_of[&(i + 1, a2, u.target)];
                    for &(w, coef) in ent.terms() {
                        for &y in &u.orbit {
                            let r = base + cc.index_of(g.mul(w, y));
                            let old = mat.get(r, col);
                            mat.set(r, col, sub_mod(old, coef, p));
                        }
                    }
                }
            }
        }
    }
    let ker = mat.kernel_basis();
    (0..ker.cols())
        .map(|k| {
            let v = ker.column(k);
            let mut maps: BTreeMap<i32, Morphism> = BTreeMap::new();
            for (&(i, a, b), ids) in &index {
                let terms: Vec<(u32, u32)> = ids
                    .iter()
                    .filter(|&&u| v[u] != 0)
                    .flat_map(|&u| {
                        let c = v[u];
                        unknowns[u].orbit.iter().map(move |&y| (y, c))
                    })
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                let mm = maps
                    .entry(i)
                    .or_insert_with(|| Morphism::zero(e.summands(i).len(), m.summands(i).len()));
                mm.cols[a].insert(b, Entry::from_terms(terms, p));
            }
            GradedMap { shift: 0, maps }
        })
        .collect()
}

/// Dimension of {v in C_i : v G-fixed and d v = 0}, computed on the full
/// underlying module.
pub fn fixed_cycle_dimension(c: &OrbitComplex, i: i32) -> usize {
    let ctx = c.ctx();
    let g = ctx.group();
    let p = ctx.prime();
    let dense = c.dense_at(&Subgroup::trivial());
    let n = dense.dim(i);
    if n == 0 {
        return 0;
    }
    let mut offsets = Vec::new();
    let mut off = 0;
    for k in c.summands(i) {
        offsets.push(off);
        off += ctx.cosets(k).len();
    }
    let mut blocks: Vec<FpMatrix> = Vec::new();
    for &x in g.generators() {
        let mut m = FpMatrix::zeros(n, n, p);
        for (s, k) in c.summands(i).iter().enumerate() {
            let cs = ctx.cosets(k);
            for (j, &r) in cs.reps.iter().enumerate() {
                let col = offsets[s] + j;
                let row = offsets[s] + cs.index_of(g.mul(x, r));
                m.add_at(row, col, 1);
                m.add_at(col, col, p - 1);
            }
        }
        blocks.push(m);
    }
    if let Some(d) = dense.d.get(&i) {
        blocks.push(d.clone());
    }
    let mut stacked = FpMatrix::zeros(0, n, p);
    for b in blocks {
        stacked = stacked.vstack(&b).expect("same width");
    }
    n - stacked.rank()
}

/// Image of orbit sums under a map whose entries may be arbitrary invariant
/// vectors: the coefficient of N_B is read off at the base coset of G/B.
pub fn orbit_sum_image_general(
    ctx: &GroupCtx,
    m: &Morphism,
    sources: &[Subgroup],
    targets: &[Subgroup],
    v: &[u32],
) -> Vec<u32> {
    let g = ctx.group();
    let p = ctx.prime();
    let mut out = vec![0u32; m.targets];
    for (s, col) in m.cols.iter().enumerate() {
        if v[s] == 0 {
            continue;
        }
        let ca = ctx.cosets(&sources[s]);
        for (&t, e) in col {
            let dense = e.to_dense(ctx, &targets[t]);
            let cb = ctx.cosets(&targets[t]);
            let mut acc = 0u32;
            for &x in &ca.reps {
                acc = (acc + dense[cb.index_of(g.inv(x))]) % p;
            }
            out[t] = (out[t] + mul_mod(acc, v[s], p)) % p;
        }
    }
    out
}
