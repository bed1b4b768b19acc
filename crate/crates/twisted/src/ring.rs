use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use ttk_complex::{
    chain_map_space, eliminate_contractibles, minimize, orbit_sum_image_general, tensor, tensor_tracked, FreeResolution,
    GradedMap, GroupCtx, OrbitComplex, RealizedElement, TensorProduct, Tracking,
};
use ttk_complex::min_resolution;
use ttk_group::{Subgroup, SubgroupClassTable, SuperclassFunction};
use ttk_linalg::{inv_mod, mul_mod, FpMatrix};

use crate::cohomology::{is_nilpotent_class, CohomologyClass};
use crate::memo::Memo;
use crate::twist::Twist;
use crate::TwistedError;

/// A basis dimension function and the endotrivial complex realizing it.
#[derive(Clone, Debug)]
pub struct BasisComplex {
    pub function: SuperclassFunction,
    pub complex: Option<OrbitComplex>,
}

/// A map k -> M(q)[s]: a fixed cycle of M(q)_{-s} in orbit-sum coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedElement {
    pub shift: i32,
    pub twist: Twist,
    pub coeffs: Vec<u32>,
}

impl TwistedElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &TwistedElement, p: u32) -> TwistedElement {
        assert_eq!((self.shift, &self.twist), (other.shift, &other.twist), "different components");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        TwistedElement { shift: self.shift, twist: self.twist.clone(), coeffs }
    }

    pub fn scale(&self, c: u32, p: u32) -> TwistedElement {
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect();
        TwistedElement { shift: self.shift, twist: self.twist.clone(), coeffs }
    }
}

/// How M(q1) ⊗ M(q2) reaches M(q1 + q2): projection onto its minimal model,
/// then (if that differs from the cached model) a pinned chain map.
struct Transport {
    product: TensorProduct,
    pi: GradedMap,
    reduced: OrbitComplex,
    chi: Option<GradedMap>,
}

pub struct TwistedRing {
    ctx: Arc<GroupCtx>,
    table: SubgroupClassTable,
    basis: Vec<BasisComplex>,
    models: Memo<Twist, OrbitComplex>,
    transports: Memo<(Twist, Twist), Transport>,
    denominators: Memo<(Twist, usize), TwistedElement>,
    resolutions: Mutex<HashMap<usize, Arc<FreeResolution>>>,
}

fn apply(ctx: &GroupCtx, map: &GradedMap, src: &OrbitComplex, dst: &OrbitComplex, degree: i32, v: &[u32]) -> Vec<u32> {
    match map.maps.get(&degree) {
        Some(m) => orbit_sum_image_general(ctx, m, src.summands(degree), dst.summands(degree + map.shift), v),
        None => vec![0; dst.summands(degree + map.shift).len()],
    }
}

/// f ⊗ g in orbit-sum coordinates of the tensor product: N_A ⊗ N_B is the
/// sum of the orbit sums of its double-coset summands.
fn tensor_vector(tp: &TensorProduct, left: &OrbitComplex, right: &OrbitComplex, i: i32, f: &[u32], j: i32, g: &[u32], p: u32) -> Vec<u32> {
    let ctx = left.ctx();
    let mut out = vec![0u32; tp.complex.summands(i + j).len()];
    for (a, &x) in f.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (b, &y) in g.iter().enumerate().filter(|(_, &y)| y != 0) {
            let base = tp.offset(i, j, a, b).expect("summand pair present");
            let orbits = ctx.pair_orbits(&left.summands(i)[a], &right.summands(j)[b]).orbits.len();
            for o in 0..orbits {
                out[base + o] = (out[base + o] + mul_mod(x, y, p)) % p;
            }
        }
    }
    out
}

impl TwistedRing {
    pub fn new(ctx: Arc<GroupCtx>, table: SubgroupClassTable, basis: Vec<BasisComplex>) -> TwistedRing {
        TwistedRing {
            ctx,
            table,
            basis,
            models: Memo::new(),
            transports: Memo::new(),
            denominators: Memo::new(),
            resolutions: Mutex::new(HashMap::new()),
        }
    }

    /// Use realized basis elements, dropping the constant function 1 (the
    /// shifted unit).
    pub fn from_realized(ctx: Arc<GroupCtx>, table: SubgroupClassTable, realized: &[RealizedElement]) -> TwistedRing {
        let basis = realized
            .iter()
            .filter(|e| !e.function.values().iter().all(|&v| v == 1))
            .map(|e| BasisComplex { function: e.function.clone(), complex: e.complex.clone() })
            .collect();
        TwistedRing::new(ctx, table, basis)
    }

    pub fn ctx(&self) -> &Arc<GroupCtx> {
        &self.ctx
    }

    pub fn table(&self) -> &SubgroupClassTable {
        &self.table
    }

    pub fn basis(&self) -> &[BasisComplex] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn prime(&self) -> u32 {
        self.ctx.prime()
    }

    pub fn cached_models(&self) -> usize {
        self.models.len()
    }

    fn basis_complex(&self, j: usize) -> Result<&OrbitComplex, TwistedError> {
        self.basis[j].complex.as_ref().ok_or(TwistedError::UnrealizedBasisElement(j))
    }

    /// M(q) = min(M(q - e_j) ⊗ C_j) for the largest j in the support.
    pub fn minimal_model(&self, q: &Twist) -> Result<Arc<OrbitComplex>, TwistedError> {
        if q.0.len() != self.rank() {
            return Err(TwistedError::TwistLength { expected: self.rank(), found: q.0.len() });
        }
        self.models.get_or_try(q, || {
            let Some(j) = q.last_index() else { return Ok(OrbitComplex::unit(&self.ctx)) };
            let c = self.basis_complex(j)?;
            let mut prev = q.clone();
            prev.0[j] -= 1;
            let prev = self.minimal_model(&prev)?;
            Ok(minimize(&tensor(&prev, c))?)
        })
    }

    /// dim H^{s,q}: the number of summands of M(q)_{-s}.
    pub fn hom_dimension(&self, q: &Twist, s: i32) -> Result<usize, TwistedError> {
        if s > 0 {
            return Ok(0);
        }
        Ok(self.minimal_model(q)?.summands(-s).len())
    }

    pub fn basis_of_component(&self, q: &Twist, s: i32) -> Result<Vec<TwistedElement>, TwistedError> {
        let n = self.hom_dimension(q, s)?;
        Ok((0..n)
            .map(|k| {
                let mut coeffs = vec![0; n];
                coeffs[k] = 1;
                TwistedElement { shift: s, twist: q.clone(), coeffs }
            })
            .collect())
    }

    pub fn zero(&self, q: &Twist, s: i32) -> Result<TwistedElement, TwistedError> {
        Ok(TwistedElement { shift: s, twist: q.clone(), coeffs: vec![0; self.hom_dimension(q, s)?] })
    }

    pub fn one(&self) -> TwistedElement {
        TwistedElement { shift: 0, twist: Twist::zero(self.rank()), coeffs: vec![1] }
    }

    fn transport(&self, q1: &Twist, q2: &Twist) -> Result<Arc<Transport>, TwistedError> {
        self.transports.get_or_try(&(q1.clone(), q2.clone()), || {
            let m1 = self.minimal_model(q1)?;
            let m2 = self.minimal_model(q2)?;
            let target = self.minimal_model(&q1.add(q2))?;
            let product = tensor_tracked(&m1, &m2);
            let (reduced, eq) = eliminate_contractibles(&product.complex, Tracking::Projection)?;
            if reduced == *target {
                return Ok(Transport { product, pi: eq.pi, reduced, chi: None });
            }
            let p = self.prime();
            let whole = Subgroup::whole(self.ctx.group());
            let from = reduced.iota(&whole)?;
            let to = target.iota(&whole)?;
            let lead = to.coeffs.iter().position(|&c| c != 0).ok_or(TwistedError::TransportFailure)?;
            for chi in chain_map_space(&reduced, &target) {
                let img = apply(&self.ctx, &chi, &reduced, &target, from.degree, &from.coeffs);
                if img[lead] == 0 {
                    continue;
                }
                let c = inv_mod(img[lead], p);
                let scaled: Vec<u32> = img.iter().map(|&x| mul_mod(x, c, p)).collect();
                if scaled != to.coeffs {
                    return Err(TwistedError::TransportFailure);
                }
                return Ok(Transport { product, pi: eq.pi, reduced, chi: Some(chi.scale(c, p)) });
            }
            Err(TwistedError::TransportFailure)
        })
    }

    pub fn multiply(&self, f: &TwistedElement, g: &TwistedElement) -> Result<TwistedElement, TwistedError> {
        let p = self.prime();
        let q = f.twist.add(&g.twist);
        let s = f.shift + g.shift;
        if f.is_zero() || g.is_zero() {
            return self.zero(&q, s);
        }
        if f.twist.is_zero() {
            return Ok(TwistedElement { shift: s, twist: q, coeffs: g.scale(f.coeffs[0], p).coeffs });
        }
        if g.twist.is_zero() {
            return Ok(TwistedElement { shift: s, twist: q, coeffs: f.scale(g.coeffs[0], p).coeffs });
        }
        let t = self.transport(&f.twist, &g.twist)?;
        let m1 = self.minimal_model(&f.twist)?;
        let m2 = self.minimal_model(&g.twist)?;
        let target = self.minimal_model(&q)?;
        let n = -s;
        let v = tensor_vector(&t.product, &m1, &m2, -f.shift, &f.coeffs, -g.shift, &g.coeffs, p);
        let mut w = apply(&self.ctx, &t.pi, &t.product.complex, &t.reduced, n, &v);
        if let Some(chi) = &t.chi {
            w = apply(&self.ctx, chi, &t.reduced, &target, n, &w);
        }
        Ok(TwistedElement { shift: s, twist: q, coeffs: w })
    }

    /// Whether f^8 = 0, by repeated squaring inside successive minimal
    /// models (zero-ness does not depend on the model chosen).
    pub fn power_vanishes(&self, f: &TwistedElement) -> Result<bool, TwistedError> {
        if f.is_zero() {
            return Ok(true);
        }
        let p = self.prime();
        let mut complex = (*self.minimal_model(&f.twist)?).clone();
        let mut degree = -f.shift;
        let mut v = f.coeffs.clone();
        for _ in 0..3 {
            let tp = tensor_tracked(&complex, &complex);
            let t = tensor_vector(&tp, &complex, &complex, degree, &v, degree, &v, p);
            let (reduced, eq) = eliminate_contractibles(&tp.complex, Tracking::Projection)?;
            degree *= 2;
            v = apply(&self.ctx, &eq.pi, &tp.complex, &reduced, degree, &t);
            if v.iter().all(|&c| c == 0) {
                return Ok(true);
            }
            complex = reduced;
        }
        Ok(false)
    }

    /// h_{M(q)} at a subgroup class.
    pub fn h_mark(&self, q: &Twist, class: usize) -> i64 {
        q.0.iter().zip(&self.basis).map(|(&e, b)| e as i64 * b.function[class]).sum()
    }

    /// ι^H of basis element j as an element of H^{-h(H), e_j}.
    pub fn iota_element(&self, j: usize, class: usize) -> Result<TwistedElement, TwistedError> {
        let q = Twist::unit_vector(self.rank(), j);
        let m = self.minimal_model(&q)?;
        let map = m.iota(self.table.representative(class))?;
        Ok(TwistedElement { shift: -map.degree, twist: q, coeffs: map.coeffs })
    }

    /// Product of the ι^H of the factors of q, in basis order.
    pub fn denominator(&self, q: &Twist, class: usize) -> Result<Arc<TwistedElement>, TwistedError> {
        self.denominators.get_or_try(&(q.clone(), class), || {
            let Some(j) = q.last_index() else { return Ok(self.one()) };
            let mut prev = q.clone();
            prev.0[j] -= 1;
            let head = self.denominator(&prev, class)?;
            self.multiply(&head, &self.iota_element(j, class)?)
        })
    }

    /// Minimal resolution over the Weyl group of a class, to at least `degree`.
    pub fn resolution(&self, class: usize, degree: usize) -> Arc<FreeResolution> {
        let mut cache = self.resolutions.lock().expect("resolution lock");
        if let Some(r) = cache.get(&class) {
            if r.max_degree() >= degree {
                return r.clone();
            }
        }
        let r = Arc::new(min_resolution(&self.table.weyl(class).group, degree.max(4)));
        cache.insert(class, r.clone());
        r
    }

    /// The class f_H in H^{h(H)+s}(W_G(H)) obtained by lifting Ψ^H(f) over the
    /// quasi-isomorphism Ψ^H(ι).
    pub fn psi_hat(&self, f: &TwistedElement, class: usize) -> Result<CohomologyClass, TwistedError> {
        let weyl = self.table.weyl(class);
        let w_order = weyl.group.order();
        let h = self.h_mark(&f.twist, class);
        let n = h + f.shift as i64;
        if n < 0 {
            return Ok(CohomologyClass::zero(w_order, 0, 1));
        }
        let n = n as usize;
        if f.is_zero() {
            let r = self.resolution(class, n);
            return Ok(CohomologyClass::zero(w_order, n, r.ranks[n]));
        }
        let hsub = self.table.representative(class);
        let model = self.minimal_model(&f.twist)?;
        let den = self.denominator(&f.twist, class)?;
        let m = -f.shift;
        let dense = model.dense_at(hsub);
        let v = model.orbit_sums_at(m, &f.coeffs, hsub);
        let w = model.orbit_sums_at(h as i32, &den.coeffs, hsub);
        let hi = dense.dims.keys().next_back().copied().unwrap_or(0);
        let top = (n + 1).max((hi - m).max(0) as usize);
        let res = self.resolution(class, top + 1);
        let dim = |d: i64| if d < i32::MIN as i64 || d > i32::MAX as i64 { 0 } else { dense.dim(d as i32) };

        // W acts on the fixed cosets of each degree through lifts to N_G(H)
        let g = self.ctx.group();
        let action = |d: i32| -> Vec<Vec<usize>> {
            let basis = model.fixed_basis_cosets(d, hsub);
            let pos: HashMap<(usize, u32), usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
            weyl.lifts
                .iter()
                .map(|&x| {
                    basis
                        .iter()
                        .map(|&(s, r)| pos[&(s, self.ctx.cosets(&model.summands(d)[s]).rep(g.mul(x, r)))])
                        .collect()
                })
                .collect()
        };

        // columns: c (rank of P_n), then h_j(e_t) in D_{j+m+1}
        let p = self.prime();
        let mut col_of_h = Vec::new();
        let mut ncols = res.ranks[n];
        for j in 0..=top {
            let width = dim(j as i64 + m as i64 + 1);
            col_of_h.push((ncols, width));
            ncols += res.ranks[j] * width;
        }
        let mut row_of = Vec::new();
        let mut nrows = 0;
        for j in 0..=top {
            let height = dim(j as i64 + m as i64);
            row_of.push((nrows, height));
            nrows += res.ranks[j] * height;
        }
        if nrows == 0 {
            return Err(TwistedError::LiftFailure { class });
        }
        let mut mat = FpMatrix::zeros(nrows, ncols.max(1), p);
        let mut rhs = vec![0u32; nrows];
        for (k, &x) in v.iter().enumerate() {
            rhs[row_of[0].0 + k] = x;
        }
        for t in 0..res.ranks[n] {
            let base = row_of[n].0 + t * row_of[n].1;
            for (k, &x) in w.iter().enumerate() {
                mat.set(base + k, t, x);
            }
        }
        for j in 0..=top {
            let (r0, height) = row_of[j];
            if height == 0 {
                continue;
            }
            let deg = j as i32 + m;
            // d_D h_j
            let (c0, width) = col_of_h[j];
            if width > 0 {
                if let Some(d) = dense.d.get(&(deg + 1)) {
                    for t in 0..res.ranks[j] {
                        for a in 0..height {
                            for b in 0..width {
                                let x = d.get(a, b);
                                if x != 0 {
                                    mat.add_at(r0 + t * height + a, c0 + t * width + b, x);
                                }
                            }
                        }
                    }
                }
            }
            // h_{j-1} d_P
            if j == 0 {
                continue;
            }
            let (c1, width1) = col_of_h[j - 1];
            if width1 == 0 {
                continue;
            }
            debug_assert_eq!(width1, height);
            let perms = action(deg);
            for t in 0..res.ranks[j] {
                for (idx, &a) in res.images[j][t].iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let (t2, x) = (idx / w_order, idx % w_order);
                    for (b, &img) in perms[x].iter().enumerate() {
                        mat.add_at(r0 + t * height + img, c1 + t2 * width1 + b, a);
                    }
                }
            }
        }
        let sol = mat.solve(&rhs).expect("shapes agree").ok_or(TwistedError::LiftFailure { class })?;
        Ok(CohomologyClass { weyl_order: w_order, degree: n, coeffs: sol[..res.ranks[n]].to_vec() })
    }

    /// Every Ψ̂ image is nilpotent in the cohomology of its Weyl group.
    pub fn is_nilpotent(&self, f: &TwistedElement) -> Result<bool, TwistedError> {
        for class in 0..self.table.len() {
            let alpha = self.psi_hat(f, class)?;
            if alpha.is_zero() {
                continue;
            }
            let res = self.resolution(class, alpha.degree * 8);
            if !is_nilpotent_class(&res, &alpha) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
