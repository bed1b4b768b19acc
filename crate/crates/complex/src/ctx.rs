use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use ttk_group::{Bits, Group, Subgroup};

/// Left cosets of one subgroup: minimal representatives and the coset index
/// of every element.
#[derive(Debug)]
pub struct Cosets {
    pub reps: Vec<u32>,
    pub index: Vec<u32>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    pub fn rep(&self, x: u32) -> u32 {
        self.reps[self.index[x as usize] as usize]
    }

    #[inline]
    pub fn index_of(&self, x: u32) -> usize {
        self.index[x as usize] as usize
    }
}

/// G-orbits on G/A x G/B. Pair (i, j) of coset indices maps to
/// (orbit, minimal representative of the transporter coset z S).
#[derive(Debug)]
pub struct PairOrbits {
    pub orbit_of: Vec<(u32, u32)>,
    /// per orbit: g with base point (A, gB), and the stabilizer A ∩ gBg^-1
    pub orbits: Vec<(u32, Subgroup)>,
    pub right_len: usize,
}

impl PairOrbits {
    pub fn lookup(&self, i: usize, j: usize) -> (usize, u32) {
        let (o, z) = self.orbit_of[i * self.right_len + j];
        (o as usize, z)
    }
}

/// A group plus memoised coset data; shared by all complexes over it.
#[derive(Debug)]
pub struct GroupCtx {
    group: Group,
    cosets: RwLock<HashMap<Bits, Arc<Cosets>>>,
    pairs: RwLock<HashMap<(Bits, Bits), Arc<PairOrbits>>>,
}

impl GroupCtx {
    pub fn new(group: Group) -> Arc<GroupCtx> {
        Arc::new(GroupCtx {
            group,
            cosets: RwLock::default(),
            pairs: RwLock::default(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.group.prime()
    }

    pub fn cosets(&self, k: &Subgroup) -> Arc<Cosets> {
        if let Some(c) = self.cosets.read().expect("lock").get(k.bits()) {
            return c.clone();
        }
        let g = &self.group;
        let mut index = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if index[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &h in k.elements() {
                index[g.mul(x, h) as usize] = id;
            }
        }
        let c = Arc::new(Cosets { reps, index });
        self.cosets
            .write()
            .expect("lock")
            .insert(*k.bits(), c.clone());
        c
    }

    pub fn pair_orbits(&self, a: &Subgroup, b: &Subgroup) -> Arc<PairOrbits> {
        let key = (*a.bits(), *b.bits());
        if let Some(c) = self.pairs.read().expect("lock").get(&key) {
            return c.clone();
        }
        let g = &self.group;
        let ca = self.cosets(a);
        let cb = self.cosets(b);
        let right_len = cb.len();
        let mut orbit_of = vec![(u32::MAX, 0u32); ca.len() * right_len];
        let mut orbits = Vec::new();
        // every orbit meets {A} x G/B, so scanning the first row finds all bases
        for (j, &gr) in cb.reps.iter().enumerate() {
            if orbit_of[j].0 != u32::MAX {
                continue;
            }
            let o = orbits.len() as u32;
            let gb: Vec<u32> = b.elements().iter().map(|&y| g.conj(gr, y)).collect();
            let stab_bits = Bits::from_iter(gb.into_iter().filter(|&y| a.contains(y)));
            let stab = Subgroup::from_bits(g, stab_bits);
            let cs = self.cosets(&stab);
            for z in g.elements() {
                let i = ca.index_of(z);
                let jj = cb.index_of(g.mul(z, gr));
                let slot = &mut orbit_of[i * right_len + jj];
                if slot.0 == u32::MAX {
                    *slot = (o, cs.rep(z));
                }
            }
            orbits.push((gr, stab));
        }
        let p = Arc::new(PairOrbits {
            orbit_of,
            orbits,
            right_len,
        });
        self.pairs.write().expect("lock").insert(key, p.clone());
        p
    }
}
