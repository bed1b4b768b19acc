use ttk_complex::{act, FreeResolution};
use ttk_linalg::{add_mod, mul_mod, FpMatrix};

/// A class in H^n(W, k), as a functional on the free generators of P_n of
/// a minimal resolution (coboundaries vanish there).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    pub weyl_order: usize,
    pub degree: usize,
    pub coeffs: Vec<u32>,
}

impl CohomologyClass {
    pub fn zero(weyl_order: usize, degree: usize, rank: usize) -> CohomologyClass {
        CohomologyClass { weyl_order, degree, coeffs: vec![0; rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// W-linear map P_i -> P_j given by generator images, applied to a vector.
fn apply_free(res: &FreeResolution, gen_images: &[Vec<u32>], target_rank: usize, v: &[u32]) -> Vec<u32> {
    let g = &res.group;
    let n = g.order();
    let p = g.prime();
    let mut out = vec![0u32; target_rank * n];
    for (idx, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (t, x) = (idx / n, idx % n);
        for (k, &y) in act(g, x as u32, &gen_images[t]).iter().enumerate() {
            if y != 0 {
                out[k] = add_mod(out[k], mul_mod(c, y, p), p);
            }
        }
    }
    out
}

/// Lift a cocycle of degree b to a chain map P_{b+j} -> P_j for j <= up_to.
/// Returns generator images per j.
pub fn lift_cocycle(res: &FreeResolution, beta: &[u32], b: usize, up_to: usize) -> Vec<Vec<Vec<u32>>> {
    let n = res.group.order();
    let mut lifts: Vec<Vec<Vec<u32>>> = Vec::with_capacity(up_to + 1);
    lifts.push(
        beta.iter()
            .map(|&c| {
                let mut v = vec![0u32; n];
                v[0] = c;
                v
            })
            .collect(),
    );
    for j in 1..=up_to {
        let d: &FpMatrix = &res.matrices[j];
        let imgs = (0..res.ranks[b + j])
            .map(|t| {
                let target = apply_free(res, &lifts[j - 1], res.ranks[j - 1], &res.images[b + j][t]);
                d.solve(&target).expect("shapes agree").expect("lift exists over a resolution")
            })
            .collect();
        lifts.push(imgs);
    }
    lifts
}

/// Yoneda product alpha * beta, with alpha of degree a and beta of degree b:
/// alpha composed with the lift of beta.
pub fn yoneda(res: &FreeResolution, alpha: &CohomologyClass, beta: &CohomologyClass) -> CohomologyClass {
    let (a, b) = (alpha.degree, beta.degree);
    let p = res.group.prime();
    let n = res.group.order();
    if alpha.is_zero() || beta.is_zero() {
        return CohomologyClass::zero(n, a + b, res.ranks[a + b]);
    }
    let lifts = lift_cocycle(res, &beta.coeffs, b, a);
    let coeffs = lifts[a]
        .iter()
        .map(|img| {
            img.iter().enumerate().fold(0u32, |acc, (idx, &c)| add_mod(acc, mul_mod(c, alpha.coeffs[idx / n], p), p))
        })
        .collect();
    CohomologyClass { weyl_order: n, degree: a + b, coeffs }
}

/// Whether alpha^8 = 0 (equivalently alpha^N = 0 for some N <= 8). `res`
/// must reach degree 8 deg(alpha). Odd classes for odd p square to zero.
pub fn is_nilpotent_class(res: &FreeResolution, alpha: &CohomologyClass) -> bool {
    if alpha.is_zero() || (res.group.prime() != 2 && alpha.degree % 2 == 1) {
        return true;
    }
    let mut x = alpha.clone();
    for _ in 0..3 {
        x = yoneda(res, &x, &x);
        if x.is_zero() {
            return true;
        }
    }
    false
}
