use std::collections::{BTreeMap, BTreeSet};

use ttk_group::Subgroup;
use ttk_linalg::{mul_mod, FpMatrix};

use crate::complex::{GradedMap, Morphism, OrbitComplex};
use crate::ctx::GroupCtx;
use crate::entry::Entry;
use crate::ComplexError;

/// pi: C -> C_min, sigma: C_min -> C, h: C -> C of degree +1 with
/// pi sigma = id and id - sigma pi = dh + hd.
#[derive(Clone, Debug, Default)]
pub struct EquivalenceData {
    pub pi: GradedMap,
    pub sigma: GradedMap,
    pub homotopy: GradedMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tracking {
    /// projection, section and homotopy
    Full,
    /// projection only
    Projection,
}

/// Image of orbit sums: N_A goes to aug(e) [B:A] N_B along each entry.
pub fn orbit_sum_image(
    m: &Morphism,
    sources: &[Subgroup],
    targets: &[Subgroup],
    v: &[u32],
    p: u32,
) -> Vec<u32> {
    let mut out = vec![0u32; m.targets];
    for (s, col) in m.cols.iter().enumerate() {
        if v[s] == 0 {
            continue;
        }
        for (&t, e) in col {
            if targets[t].order() != sources[s].order() {
                continue; // index is a positive power of p
            }
            out[t] = (out[t] + mul_mod(v[s], e.augmentation(p), p)) % p;
        }
    }
    out
}

fn is_pivot(e: &Entry, a: &Subgroup, b: &Subgroup, p: u32) -> bool {
    a.order() == b.order() && e.augmentation(p) != 0
}

/// Some degree i and G-fixed vector v of C_i (orbit-sum coordinates) with
/// d_i v != 0.
pub fn has_contractible_summand(c: &OrbitComplex) -> Option<(i32, Vec<u32>)> {
    let p = c.prime();
    for (&i, d) in &c.diffs {
        let src = c.summands(i);
        let tgt = c.summands(i - 1);
        for (a, col) in d.cols.iter().enumerate() {
            if col.iter().any(|(&b, e)| is_pivot(e, &src[a], &tgt[b], p)) {
                let mut v = vec![0u32; src.len()];
                v[a] = 1;
                return Some((i, v));
            }
        }
    }
    None
}

/// Inverse of an isomorphism k[G/A] -> k[G/B], as an entry B -> A.
fn invert(ctx: &GroupCtx, e: &Entry, a: &Subgroup, b: &Subgroup) -> Option<Entry> {
    let g = ctx.group();
    let p = ctx.prime();
    let ca = ctx.cosets(a);
    let cb = ctx.cosets(b);
    if ca.len() != cb.len() {
        return None;
    }
    let n = ca.len();
    let mut m = FpMatrix::zeros(n, n, p);
    for (col, &x) in ca.reps.iter().enumerate() {
        for &(y, c) in e.terms() {
            m.add_at(cb.index_of(g.mul(x, y)), col, c);
        }
    }
    let inv = m.inverse()?;
    Some(Entry::from_dense(&inv.column(0), ctx, a))
}

type Sparse = Vec<BTreeMap<usize, Entry>>;

struct Work<'a> {
    c: &'a OrbitComplex,
    alive: BTreeMap<i32, Vec<bool>>,
    out: BTreeMap<i32, Sparse>,
    inn: BTreeMap<i32, Vec<BTreeSet<usize>>>,
    track: Option<Tracking>,
    pi: BTreeMap<i32, Sparse>,
    sigma: BTreeMap<i32, Sparse>,
    h: BTreeMap<i32, Morphism>,
}

impl<'a> Work<'a> {
    fn new(c: &'a OrbitComplex, track: Option<Tracking>) -> Work<'a> {
        let mut alive = BTreeMap::new();
        let mut out = BTreeMap::new();
        let mut inn: BTreeMap<i32, Vec<BTreeSet<usize>>> = BTreeMap::new();
        let mut pi = BTreeMap::new();
        let mut sigma = BTreeMap::new();
        for i in c.degrees() {
            let n = c.summands(i).len();
            alive.insert(i, vec![true; n]);
            inn.insert(i, vec![BTreeSet::new(); n]);
            let ident: Sparse = (0..n)
                .map(|k| BTreeMap::from([(k, Entry::scalar(1))]))
                .collect();
            if track.is_some() {
                pi.insert(i, ident.clone());
            }
            if track == Some(Tracking::Full) {
                sigma.insert(i, ident);
            }
        }
        for i in c.degrees() {
            let d = c.d(i);
            for (a, col) in d.cols.iter().enumerate() {
                for &b in col.keys() {
                    inn.get_mut(&(i - 1)).expect("target degree")[b].insert(a);
                }
            }
            out.insert(i, d.cols);
        }
        Work {
            c,
            alive,
            out,
            inn,
            track,
            pi,
            sigma,
            h: BTreeMap::new(),
        }
    }

    fn stab(&self, i: i32, k: usize) -> &Subgroup {
        &self.c.summands(i)[k]
    }

    fn find_pivot(&self) -> Option<(i32, usize, usize)> {
        let p = self.c.prime();
        for (&i, cols) in &self.out {
            for (a, col) in cols.iter().enumerate() {
                if !self.alive[&i][a] {
                    continue;
                }
                for (&b, e) in col {
                    if is_pivot(e, self.stab(i, a), self.stab(i - 1, b), p) {
                        return Some((i, a, b));
                    }
                }
            }
        }
        None
    }

    fn set_edge(&mut self, i: i32, a: usize, b: usize, e: Entry) {
        let col = &mut self.out.get_mut(&i).expect("degree")[a];
        if e.is_zero() {
            col.remove(&b);
            self.inn.get_mut(&(i - 1)).expect("degree")[b].remove(&a);
        } else {
            col.insert(b, e);
            self.inn.get_mut(&(i - 1)).expect("degree")[b].insert(a);
        }
    }

    fn step(&mut self, i: i32, a: usize, b: usize) -> Result<(), ComplexError> {
        let ctx = self.c.ctx().clone();
        let p = ctx.prime();
        let sa = self.stab(i, a).clone();
        let phi = self.out[&i][a][&b].clone();
        let phi_inv = invert(&ctx, &phi, &sa, self.stab(i - 1, b)).ok_or(
            ComplexError::PivotInversionFailure {
                degree: i,
                from: a,
                to: b,
            },
        )?;
        let xs: Vec<usize> = self.inn[&(i - 1)][b]
            .iter()
            .copied()
            .filter(|&x| x != a)
            .collect();
        let ys: Vec<(usize, Entry)> = self.out[&i][a]
            .iter()
            .filter(|(&y, _)| y != b)
            .map(|(&y, e)| (y, e.clone()))
            .collect();
        // beta_x then phi^-1, as maps x -> A
        let bx: Vec<(usize, Entry)> = xs
            .iter()
            .map(|&x| (x, self.out[&i][x][&b].then(&phi_inv, &ctx, &sa)))
            .collect();

        if self.track.is_some() {
            let row_b: Vec<(usize, Entry)> = self.pi[&(i - 1)][b]
                .iter()
                .map(|(&o, e)| (o, e.then(&phi_inv, &ctx, &sa)))
                .collect();
            if self.track == Some(Tracking::Full) {
                let col_a: Vec<(usize, Entry)> = self.sigma[&i][a]
                    .iter()
                    .map(|(&o, e)| (o, e.clone()))
                    .collect();
                let orig_i = self.c.summands(i);
                let orig_im1 = self.c.summands(i - 1);
                let h = self
                    .h
                    .entry(i - 1)
                    .or_insert_with(|| Morphism::zero(orig_im1.len(), orig_i.len()));
                for (o1, e1) in &row_b {
                    for (o2, e2) in &col_a {
                        h.add_entry(*o1, *o2, &e1.then(e2, &ctx, &orig_i[*o2]), p);
                    }
                }
                let sig = self.sigma.get_mut(&i).expect("degree");
                for (x, e) in &bx {
                    for (o, e2) in &col_a {
                        let delta = e.then(e2, &ctx, &orig_i[*o]).neg(p);
                        let col = &mut sig[*x];
                        let new = col.get(o).map_or(delta.clone(), |old| old.add(&delta, p));
                        if new.is_zero() {
                            col.remove(o);
                        } else {
                            col.insert(*o, new);
                        }
                    }
                }
                sig[a].clear();
                self.sigma.get_mut(&(i - 1)).expect("degree")[b].clear();
            }
            let pim = self.pi.get_mut(&(i - 1)).expect("degree");
            for (y, gy) in &ys {
                let sy = &self.c.summands(i - 1)[*y];
                for (o, e) in &row_b {
                    let delta = e.then(gy, &ctx, sy).neg(p);
                    let row = &mut pim[*y];
                    let new = row.get(o).map_or(delta.clone(), |old| old.add(&delta, p));
                    if new.is_zero() {
                        row.remove(o);
                    } else {
                        row.insert(*o, new);
                    }
                }
            }
            pim[b].clear();
            self.pi.get_mut(&i).expect("degree")[a].clear();
        }

        for (x, e) in &bx {
            for (y, gy) in &ys {
                let sy = self.stab(i - 1, *y).clone();
                let delta = e.then(gy, &ctx, &sy).neg(p);
                let new = self.out[&i][*x]
                    .get(y)
                    .map_or(delta.clone(), |old| old.add(&delta, p));
                self.set_edge(i, *x, *y, new);
            }
        }
        // disconnect a and b
        for (y, _) in self.out[&i][a].clone() {
            self.set_edge(i, a, y, Entry::zero());
        }
        for x in self.inn[&(i - 1)][b].clone() {
            self.set_edge(i, x, b, Entry::zero());
        }
        if let Some(srcs) = self.inn.get(&i).map(|v| v[a].clone()) {
            for s in srcs {
                self.set_edge(i + 1, s, a, Entry::zero());
            }
        }
        if self.out.contains_key(&(i - 1)) {
            for (t, _) in self.out[&(i - 1)][b].clone() {
                self.set_edge(i - 1, b, t, Entry::zero());
            }
        }
        self.alive.get_mut(&i).expect("degree")[a] = false;
        self.alive.get_mut(&(i - 1)).expect("degree")[b] = false;
        Ok(())
    }

    fn finish(self) -> (OrbitComplex, EquivalenceData) {
        let c = self.c;
        let mut renum: BTreeMap<i32, Vec<Option<usize>>> = BTreeMap::new();
        let mut modules = BTreeMap::new();
        for (&i, al) in &self.alive {
            let mut k = 0;
            let map: Vec<Option<usize>> = al
                .iter()
                .map(|&x| {
                    if x {
                        k += 1;
                        Some(k - 1)
                    } else {
                        None
                    }
                })
                .collect();
            modules.insert(
                i,
                c.summands(i)
                    .iter()
                    .zip(al)
                    .filter(|(_, &x)| x)
                    .map(|(s, _)| s.clone())
                    .collect::<Vec<_>>(),
            );
            renum.insert(i, map);
        }
        let mut diffs = BTreeMap::new();
        for (&i, cols) in &self.out {
            let Some(tmap) = renum.get(&(i - 1)) else {
                continue;
            };
            let mut m = Morphism::zero(modules[&i].len(), modules[&(i - 1)].len());
            for (a, col) in cols.iter().enumerate() {
                let Some(na) = renum[&i][a] else { continue };
                for (&b, e) in col {
                    m.cols[na].insert(
                        tmap[b].expect("edges only between live summands"),
                        e.clone(),
                    );
                }
            }
            diffs.insert(i, m);
        }
        let mut eq = EquivalenceData {
            pi: GradedMap::default(),
            sigma: GradedMap::default(),
            homotopy: GradedMap {
                shift: 1,
                maps: BTreeMap::new(),
            },
        };
        if self.track.is_some() {
            for (&i, rows) in &self.pi {
                let mut m = Morphism::zero(c.summands(i).len(), modules[&i].len());
                for (cur, row) in rows.iter().enumerate() {
                    let Some(nc) = renum[&i][cur] else { continue };
                    for (&o, e) in row {
                        m.cols[o].insert(nc, e.clone());
                    }
                }
                eq.pi.maps.insert(i, m);
            }
        }
        if self.track == Some(Tracking::Full) {
            for (&i, cols) in &self.sigma {
                let mut m = Morphism::zero(modules[&i].len(), c.summands(i).len());
                for (cur, col) in cols.iter().enumerate() {
                    let Some(nc) = renum[&i][cur] else { continue };
                    m.cols[nc] = col.clone();
                }
                eq.sigma.maps.insert(i, m);
            }
            eq.homotopy.maps = self.h;
            eq.homotopy.maps.retain(|_, m| !m.is_zero());
        }
        let cmin = OrbitComplex::from_parts_unchecked(c.ctx(), modules, diffs, false);
        (cmin, eq)
    }
}

/// Remove contractible summands by repeated Gaussian elimination.
pub fn eliminate_contractibles(
    c: &OrbitComplex,
    tracking: Tracking,
) -> Result<(OrbitComplex, EquivalenceData), ComplexError> {
    if c.is_general() {
        return Err(ComplexError::GeneralEntries);
    }
    let mut w = Work::new(c, Some(tracking));
    while let Some((i, a, b)) = w.find_pivot() {
        w.step(i, a, b)?;
    }
    Ok(w.finish())
}

/// The minimal model alone.
pub fn minimize(c: &OrbitComplex) -> Result<OrbitComplex, ComplexError> {
    if c.is_general() {
        return Err(ComplexError::GeneralEntries);
    }
    let mut w = Work::new(c, None);
    while let Some((i, a, b)) = w.find_pivot() {
        w.step(i, a, b)?;
    }
    Ok(w.finish().0)
}

impl EquivalenceData {
    /// Check the chain-map and homotopy identities exactly.
    pub fn verify(&self, c: &OrbitComplex, cmin: &OrbitComplex) -> Result<(), ComplexError> {
        let ctx = c.ctx();
        let p = c.prime();
        let fail = |what: &str| Err(ComplexError::EquivalenceFailure(what.to_string()));
        let dc = GradedMap::differential(c);
        let dm = GradedMap::differential(cmin);
        if self.pi.then(&dm, ctx, cmin).normalized() != dc.then(&self.pi, ctx, cmin).normalized() {
            return fail("pi is not a chain map");
        }
        if self.sigma.then(&dc, ctx, c).normalized() != dm.then(&self.sigma, ctx, c).normalized() {
            return fail("sigma is not a chain map");
        }
        if self.sigma.then(&self.pi, ctx, cmin).normalized()
            != GradedMap::identity(cmin).normalized()
        {
            return fail("pi sigma is not the identity");
        }
        let lhs = GradedMap::identity(c).add(&self.pi.then(&self.sigma, ctx, c).scale(p - 1, p), p);
        let rhs = dc
            .then(&self.homotopy, ctx, c)
            .add(&self.homotopy.then(&dc, ctx, c), p);
        if lhs.normalized() != rhs.normalized() {
            return fail("id - sigma pi differs from dh + hd");
        }
        Ok(())
    }
}
