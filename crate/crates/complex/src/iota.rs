use ttk_group::Subgroup;

use crate::complex::OrbitComplex;
use crate::dense::fixed_cosets;
use crate::eliminate::orbit_sum_image;
use crate::ComplexError;

/// A chain map k[degree] -> C, i.e. k -> C[-degree], given by a fixed
/// cycle in C_degree written in orbit-sum coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMapFromUnit {
    pub degree: i32,
    pub coeffs: Vec<u32>,
}

impl ChainMapFromUnit {
    /// The shift s with the map landing in C[s].
    pub fn shift(&self) -> i32 {
        -self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl OrbitComplex {
    /// d applied to a vector of orbit sums in degree i.
    pub fn orbit_sum_boundary(&self, i: i32, coeffs: &[u32]) -> Vec<u32> {
        match self.d_ref(i) {
            Some(d) => orbit_sum_image(
                d,
                self.summands(i),
                self.summands(i - 1),
                coeffs,
                self.prime(),
            ),
            None => vec![0; self.summands(i - 1).len()],
        }
    }

    /// The map k[h(H)] -> C that becomes a quasi-isomorphism at H.
    pub fn iota(&self, h: &Subgroup) -> Result<ChainMapFromUnit, ComplexError> {
        let dense = self.dense_at(h);
        let dims = dense.homology_dims();
        if dims.values().sum::<usize>() != 1 {
            return Err(ComplexError::NotEndotrivialAt { dims });
        }
        let n = *dims.keys().next().expect("one class");
        let mut found: Option<ChainMapFromUnit> = None;
        for (s, k) in self.summands(n).iter().enumerate() {
            if fixed_cosets(self.ctx(), k, h).is_empty() {
                continue;
            }
            let mut e = vec![0u32; self.summands(n).len()];
            e[s] = 1;
            if self.orbit_sum_boundary(n, &e).iter().any(|&x| x != 0) {
                continue;
            }
            let v = self.orbit_sums_at(n, &e, h);
            if !dense.is_cycle(n, &v) || dense.is_boundary(n, &v) {
                continue;
            }
            let m = ChainMapFromUnit {
                degree: n,
                coeffs: e,
            };
            match &found {
                None => found = Some(m),
                Some(first) => {
                    let a = first
                        .coeffs
                        .iter()
                        .position(|&c| c != 0)
                        .expect("unit vector");
                    return Err(ComplexError::AmbiguousIota {
                        degree: n,
                        first: a,
                        second: s,
                    });
                }
            }
        }
        found.ok_or(ComplexError::NoQualifyingSummand { degree: n })
    }

    /// Whether the map becomes a quasi-isomorphism after evaluating at K
    /// and forgetting the Weyl action.
    pub fn residue_iso(&self, m: &ChainMapFromUnit, k: &Subgroup) -> bool {
        let dense = self.dense_at(k);
        let v = self.orbit_sums_at(m.degree, &m.coeffs, k);
        dense.cone_of_vector(m.degree, &v).total_homology() == 0
    }

    pub fn iota_equal(&self, h: &Subgroup, k: &Subgroup) -> Result<bool, ComplexError> {
        Ok(self.iota(h)? == self.iota(k)?)
    }
}
