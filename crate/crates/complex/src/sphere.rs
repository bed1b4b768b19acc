use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use ttk_group::{Bits, Subgroup};

use crate::complex::{Morphism, OrbitComplex};
use crate::ctx::GroupCtx;
use crate::entry::Entry;
use crate::ComplexError;

type Flag = Vec<u64>;

/// Strict chains of nonempty simplices, grouped by length. A simplex is a
/// vertex mask with no antipodal pair.
fn flags(simplices: &[u64]) -> Vec<Vec<Flag>> {
    let mut by_len: Vec<Vec<Flag>> = vec![simplices.iter().map(|&s| vec![s]).collect()];
    loop {
        let next: Vec<Flag> = by_len
            .last()
            .expect("nonempty")
            .iter()
            .flat_map(|f| {
                let top = *f.last().expect("nonempty flag");
                simplices
                    .iter()
                    .filter(move |&&s| s != top && s & top == top)
                    .map(move |&s| {
                        let mut g = f.clone();
                        g.push(s);
                        g
                    })
            })
            .collect();
        if next.is_empty() {
            return by_len;
        }
        by_len.push(next);
    }
}

fn act(perm: &[usize], mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out |= 1 << perm[v];
        m &= m - 1;
    }
    out
}

/// Reduced cellular chains, mod 2, of the unit sphere of the real monomial
/// representation induced from the sign character of L with kernel K. Uses
/// the barycentric subdivision of the cross-polytope on G/K, so fixed points
/// at H compute the sphere of V^H. Shifted so that h(H) = dim V^H.
pub fn builder_sphere(ctx: &Arc<GroupCtx>, l: &Subgroup, k: &Subgroup) -> Result<OrbitComplex, ComplexError> {
    let g = ctx.group();
    if ctx.prime() != 2 {
        return Err(ComplexError::BuilderPrecondition("sign representations need p = 2".into()));
    }
    if !k.is_subgroup_of(l) || l.order() != 2 * k.order() {
        return Err(ComplexError::BuilderPrecondition("kernel must have index 2 in L".into()));
    }
    let cosets = ctx.cosets(k);
    let verts = cosets.len();
    if verts > 16 {
        return Err(ComplexError::BuilderPrecondition("more than 16 vertices".into()));
    }
    let flip = *l.elements().iter().find(|&&x| !k.contains(x)).expect("index 2");
    let antipode: Vec<usize> = cosets.reps.iter().map(|&r| cosets.index_of(g.mul(r, flip))).collect();
    let perms: Vec<Vec<usize>> = g
        .elements()
        .map(|x| cosets.reps.iter().map(|&r| cosets.index_of(g.mul(x, r))).collect())
        .collect();
    let simplices: Vec<u64> = (1u64..1 << verts)
        .filter(|&m| (0..verts).all(|v| m >> v & 1 == 0 || m >> antipode[v] & 1 == 0))
        .collect();
    let levels = flags(&simplices);
    let p = ctx.prime();

    // orbit representatives, stabilizers and the transporter of every flag
    let mut modules = BTreeMap::from([(0, vec![Subgroup::whole(g)])]);
    let mut locate: Vec<HashMap<Flag, (usize, u32)>> = Vec::new();
    let mut reps: Vec<Vec<Flag>> = Vec::new();
    for (n, level) in levels.iter().enumerate() {
        let mut where_: HashMap<Flag, (usize, u32)> = HashMap::new();
        let mut rs = Vec::new();
        let mut stabs = Vec::new();
        for f in level {
            if where_.contains_key(f) {
                continue;
            }
            let o = rs.len();
            let mut stab = Vec::new();
            for x in g.elements() {
                let img: Flag = f.iter().map(|&s| act(&perms[x as usize], s)).collect();
                if &img == f {
                    stab.push(x);
                }
                where_.entry(img).or_insert((o, x));
            }
            rs.push(f.clone());
            stabs.push(Subgroup::from_bits(g, Bits::from_iter(stab)));
        }
        modules.insert(n as i32 + 1, stabs);
        locate.push(where_);
        reps.push(rs);
    }
    let mut diffs = BTreeMap::new();
    let mut aug = Morphism::zero(reps[0].len(), 1);
    for col in &mut aug.cols {
        col.insert(0, Entry::scalar(1));
    }
    diffs.insert(1, aug);
    for n in 1..levels.len() {
        let targets = &modules[&(n as i32)];
        let mut m = Morphism::zero(reps[n].len(), targets.len());
        for (s, f) in reps[n].iter().enumerate() {
            let mut acc: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
            for drop in 0..f.len() {
                let face: Flag = f.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
                let (t, x) = locate[n - 1][&face];
                acc.entry(t).or_default().push((ctx.cosets(&targets[t]).rep(x), 1));
            }
            for (t, terms) in acc {
                let e = Entry::from_terms(terms, p);
                if !e.terms().is_empty() {
                    m.cols[s].insert(t, e);
                }
            }
        }
        diffs.insert(n as i32 + 1, m);
    }
    OrbitComplex::from_parts(ctx, modules, diffs)
}
