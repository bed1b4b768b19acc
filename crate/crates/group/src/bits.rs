/// Fixed-width bitset over group element indices (up to 512 elements).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits([u64; 8]);

pub const MAX_ELEMENTS: usize = 512;

impl Bits {
    pub fn empty() -> Self {
        Bits([0; 8])
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(it: I) -> Self {
        let mut b = Bits::empty();
        for x in it {
            b.insert(x);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, x: u32) {
        self.0[(x >> 6) as usize] |= 1u64 << (x & 63);
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.0[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut out = [0u64; 8];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] & other.0[i];
        }
        Bits(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + t)
            })
        })
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
