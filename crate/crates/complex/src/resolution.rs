use ttk_group::Group;
use ttk_linalg::{sub_mod, FpMatrix, RowSpace};

/// Truncated minimal free resolution P_0 <- P_1 <- ... of k over kW.
/// P_i = kW^{ranks[i]}; a vector of P_i has coordinate j*|W| + x for free
/// generator j and group element x.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub group: Group,
    pub ranks: Vec<usize>,
    /// images[i][j]: d_i of generator j, as a vector of P_{i-1} (i >= 1)
    pub images: Vec<Vec<Vec<u32>>>,
    /// dense k-matrix of d_i (i >= 1); index 0 holds the augmentation
    pub matrices: Vec<FpMatrix>,
    /// basis (columns) of ker d at the top degree
    pub top_kernel: FpMatrix,
}

/// x·v for v in kW^r.
pub fn act(group: &Group, x: u32, v: &[u32]) -> Vec<u32> {
    let n = group.order();
    let mut out = vec![0u32; v.len()];
    for (idx, &c) in v.iter().enumerate() {
        if c != 0 {
            let (j, y) = (idx / n, idx % n);
            out[j * n + group.mul(x, y as u32) as usize] = c;
        }
    }
    out
}

/// Dense matrix of the kW-map sending generator j to `images[j]`.
pub fn free_map_matrix(group: &Group, images: &[Vec<u32>], target_rank: usize) -> FpMatrix {
    let n = group.order();
    let p = group.prime();
    let mut cols = Vec::with_capacity(images.len() * n);
    for img in images {
        for x in group.elements() {
            cols.push(act(group, x, img));
        }
    }
    FpMatrix::from_columns(p, target_rank * n, &cols)
}

/// Minimal generators of the submodule spanned (over k) by the columns of
/// `k`, chosen among those columns.
fn minimal_generators(group: &Group, k: &FpMatrix) -> Vec<Vec<u32>> {
    let p = group.prime();
    let dim = k.rows();
    let mut space = RowSpace::new(dim, p);
    for c in 0..k.cols() {
        let v = k.column(c);
        for &x in group.generators() {
            let gv = act(group, x, &v);
            let diff: Vec<u32> = gv.iter().zip(&v).map(|(&a, &b)| sub_mod(a, b, p)).collect();
            space.insert(&diff);
        }
    }
    let mut gens = Vec::new();
    for c in 0..k.cols() {
        let v = k.column(c);
        if space.insert(&v) {
            gens.push(v);
        }
    }
    gens
}

pub fn min_resolution(group: &Group, max_degree: usize) -> FreeResolution {
    let p = group.prime();
    let n = group.order();
    let aug = FpMatrix::from_rows(p, &[vec![1i64; n]]).expect("row");
    let mut ranks = vec![1];
    let mut images = vec![Vec::new()];
    let mut matrices = vec![aug.clone()];
    let mut kernel = aug.kernel_basis();
    for _ in 1..=max_degree {
        let prev_rank = *ranks.last().expect("nonempty");
        let gens = if kernel.cols() == 0 {
            Vec::new()
        } else {
            minimal_generators(group, &kernel)
        };
        let m = free_map_matrix(group, &gens, prev_rank);
        kernel = if gens.is_empty() {
            FpMatrix::zeros(0, 0, p)
        } else {
            m.kernel_basis()
        };
        ranks.push(gens.len());
        images.push(gens);
        matrices.push(m);
    }
    FreeResolution {
        group: group.clone(),
        ranks,
        images,
        matrices,
        top_kernel: kernel,
    }
}

impl FreeResolution {
    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ttk_group::catalog;

    #[test]
    fn cyclic_ranks() {
        for name in ["C2", "C3", "C4", "C5"] {
            let r = min_resolution(&catalog(name).unwrap(), 6);
            assert_eq!(r.ranks, vec![1; 7], "{name}");
        }
        let r = min_resolution(&catalog("E2r2").unwrap(), 4);
        assert_eq!(r.ranks, vec![1, 2, 3, 4, 5]);
        let r = min_resolution(&catalog("Q8").unwrap(), 4);
        assert_eq!(r.ranks, vec![1, 2, 2, 1, 1]);
    }

    #[test]
    fn trivial_group() {
        let r = min_resolution(&ttk_group::Group::trivial(2), 3);
        assert_eq!(r.ranks, vec![1, 0, 0, 0]);
    }

    #[test]
    fn exactness() {
        let g = catalog("D8").unwrap();
        let r = min_resolution(&g, 4);
        for i in 1..4 {
            assert!(r.matrices[i].mul(&r.matrices[i + 1]).unwrap().is_zero());
            let ker = r.matrices[i].cols() - r.matrices[i].rank();
            assert_eq!(ker, r.matrices[i + 1].rank());
        }
    }
}
