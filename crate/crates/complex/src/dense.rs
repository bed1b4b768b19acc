use std::collections::BTreeMap;

use ttk_group::Subgroup;
use ttk_linalg::FpMatrix;

use crate::complex::OrbitComplex;
use crate::ctx::GroupCtx;

/// A complex of finite-dimensional vector spaces; `d[i]` has `dims[i-1]`
/// rows and `dims[i]` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseComplex {
    pub p: u32,
    pub dims: BTreeMap<i32, usize>,
    pub d: BTreeMap<i32, FpMatrix>,
}

impl DenseComplex {
    pub fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn rank_d(&self, i: i32) -> usize {
        self.d.get(&i).map_or(0, FpMatrix::rank)
    }

    /// dim ker d_i - rank d_{i+1}, nonzero degrees only.
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&i, &n) in &self.dims {
            let h = n - self.rank_d(i) - self.rank_d(i + 1);
            if h > 0 {
                out.insert(i, h);
            }
        }
        out
    }

    pub fn total_homology(&self) -> usize {
        self.homology_dims().values().sum()
    }

    /// Whether `v` (in degree i) is a boundary.
    pub fn is_boundary(&self, i: i32, v: &[u32]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        match self.d.get(&(i + 1)) {
            Some(m) => m.solve(v).expect("shape").is_some(),
            None => false,
        }
    }

    pub fn is_cycle(&self, i: i32, v: &[u32]) -> bool {
        match self.d.get(&i) {
            Some(m) => m.mul_vec(v).expect("shape").iter().all(|&x| x == 0),
            None => true,
        }
    }

    /// Mapping cone of the map k[n] -> self sending 1 to `v`.
    pub fn cone_of_vector(&self, n: i32, v: &[u32]) -> DenseComplex {
        let p = self.p;
        let mut dims = self.dims.clone();
        *dims.entry(n + 1).or_insert(0) += 1;
        let mut d = BTreeMap::new();
        let lo = *dims.keys().next().expect("nonempty");
        let hi = *dims.keys().next_back().expect("nonempty");
        for i in (lo + 1)..=hi {
            let (rows, cols) = (
                dims.get(&(i - 1)).copied().unwrap_or(0),
                dims.get(&i).copied().unwrap_or(0),
            );
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut m = FpMatrix::zeros(rows, cols, p);
            if let Some(old) = self.d.get(&i) {
                for r in 0..old.rows() {
                    for c in 0..old.cols() {
                        m.set(r, c, old.get(r, c));
                    }
                }
            }
            if i == n + 1 {
                // the extra basis vector is the last column
                for (r, &x) in v.iter().enumerate() {
                    m.set(r, cols - 1, x);
                }
            }
            d.insert(i, m);
        }
        DenseComplex { p, dims, d }
    }
}

/// Indices of the cosets xK fixed by H (x^-1 H x inside K).
pub fn fixed_cosets(ctx: &GroupCtx, k: &Subgroup, h: &Subgroup) -> Vec<usize> {
    let g = ctx.group();
    let cs = ctx.cosets(k);
    cs.reps
        .iter()
        .enumerate()
        .filter(|(_, &x)| {
            let xi = g.inv(x);
            h.generators()
                .iter()
                .all(|&y| k.contains(g.mul(g.mul(xi, y), x)))
        })
        .map(|(i, _)| i)
        .collect()
}

/// Basis of C^H in one degree: (summand, coset index) pairs, plus a lookup.
pub(crate) struct FixedBasis {
    pub cosets: Vec<(usize, usize)>,
    pub position: Vec<Vec<Option<usize>>>,
}

pub(crate) fn fixed_basis(c: &OrbitComplex, i: i32, h: &Subgroup) -> FixedBasis {
    let ctx = c.ctx();
    let mut cosets = Vec::new();
    let mut position = Vec::new();
    for (s, k) in c.summands(i).iter().enumerate() {
        let n = ctx.cosets(k).len();
        let mut pos = vec![None; n];
        for j in fixed_cosets(ctx, k, h) {
            pos[j] = Some(cosets.len());
            cosets.push((s, j));
        }
        position.push(pos);
    }
    FixedBasis { cosets, position }
}

impl OrbitComplex {
    /// Brauer quotient at H as a complex of vector spaces (H = 1 gives the
    /// underlying complex).
    pub fn dense_at(&self, h: &Subgroup) -> DenseComplex {
        let ctx = self.ctx();
        let g = self.group();
        let p = self.prime();
        let bases: BTreeMap<i32, FixedBasis> = self
            .degrees()
            .map(|i| (i, fixed_basis(self, i, h)))
            .collect();
        let dims: BTreeMap<i32, usize> = bases
            .iter()
            .map(|(&i, b)| (i, b.cosets.len()))
            .filter(|(_, n)| *n > 0)
            .collect();
        let mut d = BTreeMap::new();
        for (&i, dm) in &self.diffs {
            let (Some(src), Some(tgt)) = (bases.get(&i), bases.get(&(i - 1))) else {
                continue;
            };
            if src.cosets.is_empty() || tgt.cosets.is_empty() {
                continue;
            }
            let tstabs = self.summands(i - 1);
            let mut m = FpMatrix::zeros(tgt.cosets.len(), src.cosets.len(), p);
            for (col, &(s, j)) in src.cosets.iter().enumerate() {
                let x = ctx.cosets(&self.summands(i)[s]).reps[j];
                for (&t, e) in &dm.cols[s] {
                    let ct = ctx.cosets(&tstabs[t]);
                    for &(y, coef) in e.terms() {
                        if let Some(row) = tgt.position[t][ct.index_of(g.mul(x, y))] {
                            m.add_at(row, col, coef);
                        }
                    }
                }
            }
            d.insert(i, m);
        }
        DenseComplex { p, dims, d }
    }

    /// Homology of the underlying complex of k-vector spaces.
    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.dense_at(&Subgroup::trivial()).homology_dims()
    }

    /// Vector in C^H_i: each summand coefficient spread over its fixed cosets.
    pub fn orbit_sums_at(&self, i: i32, coeffs: &[u32], h: &Subgroup) -> Vec<u32> {
        let b = fixed_basis(self, i, h);
        b.cosets.iter().map(|&(s, _)| coeffs[s]).collect()
    }
}

impl OrbitComplex {
    /// The basis of C^H_i used by `dense_at`: (summand, coset representative).
    pub fn fixed_basis_cosets(&self, i: i32, h: &Subgroup) -> Vec<(usize, u32)> {
        let b = fixed_basis(self, i, h);
        b.cosets
            .iter()
            .map(|&(s, j)| (s, self.ctx().cosets(&self.summands(i)[s]).reps[j]))
            .collect()
    }
}
