use std::collections::BTreeMap;
use std::sync::Arc;

use ttk_group::{Group, Subgroup};

use crate::ctx::GroupCtx;
use crate::entry::Entry;
use crate::ComplexError;

/// A map between two lists of summands: `cols[source]` holds the nonzero
/// entries keyed by target summand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Morphism {
    pub targets: usize,
    pub cols: Vec<BTreeMap<usize, Entry>>,
}

impl Morphism {
    pub fn zero(sources: usize, targets: usize) -> Morphism {
        Morphism {
            targets,
            cols: vec![BTreeMap::new(); sources],
        }
    }

    pub fn identity(n: usize) -> Morphism {
        Morphism {
            targets: n,
            cols: (0..n)
                .map(|i| BTreeMap::from([(i, Entry::scalar(1))]))
                .collect(),
        }
    }

    pub fn sources(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, src: usize, tgt: usize) -> Option<&Entry> {
        self.cols[src].get(&tgt)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn add_entry(&mut self, src: usize, tgt: usize, e: &Entry, p: u32) {
        if e.is_zero() {
            return;
        }
        let col = &mut self.cols[src];
        let new = match col.get(&tgt) {
            Some(old) => old.add(e, p),
            None => e.clone(),
        };
        if new.is_zero() {
            col.remove(&tgt);
        } else {
            col.insert(tgt, new);
        }
    }

    pub fn add(&self, other: &Morphism, p: u32) -> Morphism {
        let mut out = self.clone();
        for (s, col) in other.cols.iter().enumerate() {
            for (&t, e) in col {
                out.add_entry(s, t, e, p);
            }
        }
        out
    }

    pub fn scale(&self, c: u32, p: u32) -> Morphism {
        let mut out = Morphism::zero(self.sources(), self.targets);
        for (s, col) in self.cols.iter().enumerate() {
            for (&t, e) in col {
                out.add_entry(s, t, &e.scale(c, p), p);
            }
        }
        out
    }

    /// `self` followed by `next`; `next_targets` are the stabilizers of the
    /// final summands.
    pub fn then(&self, next: &Morphism, ctx: &GroupCtx, next_targets: &[Subgroup]) -> Morphism {
        let p = ctx.prime();
        let mut out = Morphism::zero(self.sources(), next.targets);
        for (s, col) in self.cols.iter().enumerate() {
            for (&mid, e1) in col {
                for (&t, e2) in &next.cols[mid] {
                    out.add_entry(s, t, &e1.then(e2, ctx, &next_targets[t]), p);
                }
            }
        }
        out
    }
}

/// Degreewise maps X_i -> Y_{i + shift}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedMap {
    pub shift: i32,
    pub maps: BTreeMap<i32, Morphism>,
}

/// A bounded complex of free orbit-category modules. Each summand is a
/// stabilizer K standing for k[G/K]; `diffs[i]` is d_i from degree i to i-1.
#[derive(Clone, Debug)]
pub struct OrbitComplex {
    pub(crate) ctx: Arc<GroupCtx>,
    pub(crate) modules: BTreeMap<i32, Vec<Subgroup>>,
    pub(crate) diffs: BTreeMap<i32, Morphism>,
    /// entries are arbitrary invariant vectors rather than orbit maps
    pub(crate) general: bool,
}

impl PartialEq for OrbitComplex {
    fn eq(&self, other: &Self) -> bool {
        let same_mods = self.modules.len() == other.modules.len()
            && self
                .modules
                .iter()
                .zip(&other.modules)
                .all(|((i, a), (j, b))| {
                    i == j
                        && a.len() == b.len()
                        && a.iter().zip(b).all(|(x, y)| x.bits() == y.bits())
                });
        let nz = |m: &BTreeMap<i32, Morphism>| {
            m.iter()
                .filter(|(_, d)| !d.is_zero())
                .map(|(i, d)| (*i, d.clone()))
                .collect::<Vec<_>>()
        };
        self.ctx.group().order() == other.ctx.group().order()
            && same_mods
            && nz(&self.diffs) == nz(&other.diffs)
    }
}

impl OrbitComplex {
    pub fn zero(ctx: &Arc<GroupCtx>) -> OrbitComplex {
        OrbitComplex {
            ctx: ctx.clone(),
            modules: BTreeMap::new(),
            diffs: BTreeMap::new(),
            general: false,
        }
    }

    /// k = k[G/G] in degree 0.
    pub fn unit(ctx: &Arc<GroupCtx>) -> OrbitComplex {
        let mut c = OrbitComplex::zero(ctx);
        c.modules.insert(0, vec![Subgroup::whole(ctx.group())]);
        c
    }

    /// Assemble and validate.
    pub fn from_parts(
        ctx: &Arc<GroupCtx>,
        modules: BTreeMap<i32, Vec<Subgroup>>,
        diffs: BTreeMap<i32, Morphism>,
    ) -> Result<OrbitComplex, ComplexError> {
        let c = OrbitComplex::from_parts_unchecked(ctx, modules, diffs, false);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(
        ctx: &Arc<GroupCtx>,
        mut modules: BTreeMap<i32, Vec<Subgroup>>,
        mut diffs: BTreeMap<i32, Morphism>,
        general: bool,
    ) -> OrbitComplex {
        modules.retain(|_, v| !v.is_empty());
        diffs.retain(|i, d| {
            modules.contains_key(i) && modules.contains_key(&(i - 1)) && !d.is_zero()
        });
        OrbitComplex {
            ctx: ctx.clone(),
            modules,
            diffs,
            general,
        }
    }

    pub fn ctx(&self) -> &Arc<GroupCtx> {
        &self.ctx
    }

    pub fn group(&self) -> &Group {
        self.ctx.group()
    }

    pub fn prime(&self) -> u32 {
        self.ctx.prime()
    }

    /// True when entries are general invariant vectors (after dual()).
    pub fn is_general(&self) -> bool {
        self.general
    }

    pub fn summands(&self, i: i32) -> &[Subgroup] {
        self.modules.get(&i).map_or(&[], |v| v.as_slice())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.modules.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn lo(&self) -> Option<i32> {
        self.modules.keys().next().copied()
    }

    pub fn hi(&self) -> Option<i32> {
        self.modules.keys().next_back().copied()
    }

    /// d_i, or the zero map when absent.
    pub fn d(&self, i: i32) -> Morphism {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Morphism::zero(self.summands(i).len(), self.summands(i - 1).len()))
    }

    pub fn d_ref(&self, i: i32) -> Option<&Morphism> {
        self.diffs.get(&i)
    }

    pub fn entry(&self, i: i32, src: usize, tgt: usize) -> Option<&Entry> {
        self.diffs.get(&i).and_then(|d| d.get(src, tgt))
    }

    pub fn num_summands(&self) -> usize {
        self.modules.values().map(Vec::len).sum()
    }

    /// Total k-dimension of the underlying module.
    pub fn total_dim(&self) -> usize {
        let n = self.group().order();
        self.modules.values().flatten().map(|k| n / k.order()).sum()
    }

    /// C[n]_i = C_{i-n}.
    pub fn shift(&self, n: i32) -> OrbitComplex {
        let p = self.prime();
        let sign = if n.rem_euclid(2) == 1 { p - 1 } else { 1 };
        let modules = self
            .modules
            .iter()
            .map(|(i, v)| (i + n, v.clone()))
            .collect();
        // sign on the differential keeps C[1] = cone(C -> 0) conventions
        let diffs = self
            .diffs
            .iter()
            .map(|(i, d)| (i + n, d.scale(sign, p)))
            .collect();
        OrbitComplex {
            ctx: self.ctx.clone(),
            modules,
            diffs,
            general: self.general,
        }
    }

    pub fn direct_sum(&self, other: &OrbitComplex) -> OrbitComplex {
        let mut modules = self.modules.clone();
        for (i, v) in &other.modules {
            modules.entry(*i).or_default().extend(v.iter().cloned());
        }
        let mut diffs = BTreeMap::new();
        for (&i, mods) in &modules {
            if !modules.contains_key(&(i - 1)) {
                continue;
            }
            let (s1, t1) = (self.summands(i).len(), self.summands(i - 1).len());
            let mut d = Morphism::zero(mods.len(), modules[&(i - 1)].len());
            if let Some(a) = self.diffs.get(&i) {
                for (s, col) in a.cols.iter().enumerate() {
                    for (&t, e) in col {
                        d.cols[s].insert(t, e.clone());
                    }
                }
            }
            if let Some(b) = other.diffs.get(&i) {
                for (s, col) in b.cols.iter().enumerate() {
                    for (&t, e) in col {
                        d.cols[s1 + s].insert(t1 + t, e.clone());
                    }
                }
            }
            diffs.insert(i, d);
        }
        OrbitComplex::from_parts_unchecked(&self.ctx, modules, diffs, self.general || other.general)
    }

    /// cone(id) on k[G/K] placed in degrees `top` and `top - 1`.
    pub fn cone_of_identity(ctx: &Arc<GroupCtx>, k: &Subgroup, top: i32) -> OrbitComplex {
        let modules = BTreeMap::from([(top, vec![k.clone()]), (top - 1, vec![k.clone()])]);
        let diffs = BTreeMap::from([(top, Morphism::identity(1))]);
        OrbitComplex::from_parts_unchecked(ctx, modules, diffs, false)
    }

    /// Check d∘d = 0 and that each entry is a legal map out of its source.
    pub fn validate(&self) -> Result<(), ComplexError> {
        let g = self.group();
        for (&i, d) in &self.diffs {
            let src = self.summands(i);
            let tgt = self.summands(i - 1);
            if d.sources() != src.len() || d.targets != tgt.len() {
                return Err(ComplexError::Shape(format!(
                    "d_{i} has shape {}x{}",
                    d.targets,
                    d.sources()
                )));
            }
            for (s, col) in d.cols.iter().enumerate() {
                let a = &src[s];
                for (&t, e) in col {
                    let b = &tgt[t];
                    if self.general {
                        for &x in a.generators() {
                            if e.translate(&self.ctx, x, b) != *e {
                                return Err(ComplexError::StabilizerViolation {
                                    degree: i,
                                    from: s,
                                    to: t,
                                });
                            }
                        }
                    } else {
                        for &(y, _) in e.terms() {
                            let yi = g.inv(y);
                            if !a
                                .generators()
                                .iter()
                                .all(|&x| b.contains(g.mul(g.mul(yi, x), y)))
                            {
                                return Err(ComplexError::StabilizerViolation {
                                    degree: i,
                                    from: s,
                                    to: t,
                                });
                            }
                        }
                    }
                }
            }
            if let Some(d2) = self.diffs.get(&(i - 1)) {
                if !d.then(d2, &self.ctx, self.summands(i - 2)).is_zero() {
                    return Err(ComplexError::NotAComplex(i));
                }
            }
        }
        Ok(())
    }
}

impl GradedMap {
    /// self: X -> Y followed by next: Y -> Z.
    pub fn then(&self, next: &GradedMap, ctx: &GroupCtx, z: &OrbitComplex) -> GradedMap {
        let mut maps = BTreeMap::new();
        for (&i, m) in &self.maps {
            if let Some(n) = next.maps.get(&(i + self.shift)) {
                let c = m.then(n, ctx, z.summands(i + self.shift + next.shift));
                if !c.is_zero() {
                    maps.insert(i, c);
                }
            }
        }
        GradedMap {
            shift: self.shift + next.shift,
            maps,
        }
    }

    pub fn add(&self, other: &GradedMap, p: u32) -> GradedMap {
        assert_eq!(self.shift, other.shift);
        let mut maps = self.maps.clone();
        for (&i, m) in &other.maps {
            let sum = match maps.get(&i) {
                Some(a) => a.add(m, p),
                None => m.clone(),
            };
            maps.insert(i, sum);
        }
        maps.retain(|_, m| !m.is_zero());
        GradedMap {
            shift: self.shift,
            maps,
        }
    }

    pub fn scale(&self, c: u32, p: u32) -> GradedMap {
        let mut maps: BTreeMap<i32, Morphism> =
            self.maps.iter().map(|(&i, m)| (i, m.scale(c, p))).collect();
        maps.retain(|_, m| !m.is_zero());
        GradedMap {
            shift: self.shift,
            maps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(Morphism::is_zero)
    }

    /// Same map with zero components dropped, for comparisons.
    pub fn normalized(&self) -> GradedMap {
        let mut maps = self.maps.clone();
        maps.retain(|_, m| !m.is_zero());
        GradedMap {
            shift: self.shift,
            maps,
        }
    }

    pub fn identity(c: &OrbitComplex) -> GradedMap {
        GradedMap {
            shift: 0,
            maps: c
                .modules
                .iter()
                .map(|(&i, v)| (i, Morphism::identity(v.len())))
                .collect(),
        }
    }

    /// The differential of `c` as a degree -1 map.
    pub fn differential(c: &OrbitComplex) -> GradedMap {
        GradedMap {
            shift: -1,
            maps: c.diffs.clone(),
        }
    }
}
