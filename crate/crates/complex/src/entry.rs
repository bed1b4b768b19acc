use ttk_group::Subgroup;
use ttk_linalg::{add_mod, mul_mod};

use crate::ctx::GroupCtx;

/// Image of the base coset of a summand k[G/A] in a summand k[G/B]: a
/// combination of cosets yB, stored by minimal representative, sorted,
/// coefficients nonzero mod p.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Entry(pub Vec<(u32, u32)>);

impl Entry {
    pub fn zero() -> Entry {
        Entry(Vec::new())
    }

    /// The coset of the identity with coefficient c.
    pub fn scalar(c: u32) -> Entry {
        if c == 0 {
            Entry::zero()
        } else {
            Entry(vec![(0, c)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn augmentation(&self, p: u32) -> u32 {
        self.0.iter().fold(0, |s, &(_, c)| add_mod(s, c, p))
    }

    /// Build from unsorted terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(u32, u32)>, p: u32) -> Entry {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(terms.len());
        for (r, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == r => last.1 = add_mod(last.1, c, p),
                _ => out.push((r, c % p)),
            }
        }
        out.retain(|t| t.1 != 0);
        Entry(out)
    }

    pub fn add(&self, other: &Entry, p: u32) -> Entry {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let a = self.0.get(i);
            let b = other.0.get(j);
            match (a, b) {
                (Some(&(ra, ca)), Some(&(rb, cb))) if ra == rb => {
                    let c = add_mod(ca, cb, p);
                    if c != 0 {
                        out.push((ra, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ra, ca)), Some(&(rb, _))) if ra < rb => {
                    out.push((ra, ca));
                    i += 1;
                }
                (Some(&(ra, ca)), None) => {
                    out.push((ra, ca));
                    i += 1;
                }
                (_, Some(&(rb, cb))) => {
                    out.push((rb, cb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Entry(out)
    }

    pub fn scale(&self, s: u32, p: u32) -> Entry {
        let s = s % p;
        if s == 0 {
            return Entry::zero();
        }
        Entry(self.0.iter().map(|&(r, c)| (r, mul_mod(c, s, p))).collect())
    }

    pub fn neg(&self, p: u32) -> Entry {
        self.scale(p - 1, p)
    }

    /// x times this entry, as a vector in k[G/B].
    pub fn translate(&self, ctx: &GroupCtx, x: u32, target: &Subgroup) -> Entry {
        let g = ctx.group();
        let cb = ctx.cosets(target);
        Entry::from_terms(
            self.0
                .iter()
                .map(|&(y, c)| (cb.rep(g.mul(x, y)), c))
                .collect(),
            ctx.prime(),
        )
    }

    /// Composite A -> B -> C of `self` (A to B) followed by `next` (B to C).
    pub fn then(&self, next: &Entry, ctx: &GroupCtx, c_stab: &Subgroup) -> Entry {
        if self.is_zero() || next.is_zero() {
            return Entry::zero();
        }
        let g = ctx.group();
        let p = ctx.prime();
        let cc = ctx.cosets(c_stab);
        let mut terms = Vec::with_capacity(self.0.len() * next.0.len());
        for &(y, c) in &self.0 {
            for &(z, d) in &next.0 {
                terms.push((cc.rep(g.mul(y, z)), mul_mod(c, d, p)));
            }
        }
        Entry::from_terms(terms, p)
    }

    /// Dense column over the cosets of the target, indexed by coset number.
    pub fn to_dense(&self, ctx: &GroupCtx, target: &Subgroup) -> Vec<u32> {
        let cb = ctx.cosets(target);
        let mut v = vec![0u32; cb.len()];
        for &(y, c) in &self.0 {
            v[cb.index_of(y)] = c;
        }
        v
    }

    pub fn from_dense(v: &[u32], ctx: &GroupCtx, target: &Subgroup) -> Entry {
        let cb = ctx.cosets(target);
        Entry(
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (cb.reps[i], c))
                .collect(),
        )
    }
}
