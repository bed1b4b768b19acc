use std::collections::HashSet;

use crate::bits::Bits;
use crate::group::Group;
use crate::subgroups::{Subgroup, SubgroupClassTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubquotientKind {
    OrderP,
    ElemAbRank2,
    Cyclic4Chain,
    Quaternion8Chain,
}

/// S normal in T with T/S of order p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub lower: Subgroup,
    pub upper: Subgroup,
}

/// S normal in T with T/S elementary abelian of rank two, plus the p+1
/// subgroups strictly between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoSection {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub intermediates: Vec<Subgroup>,
}

/// H < K < L with L inside N_G(H), L/H cyclic of order 4 or quaternion of
/// order 8, and K/H its unique subgroup of order 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub bottom: Subgroup,
    pub middle: Subgroup,
    pub top: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subquotients {
    OrderP(Vec<SectionPair>),
    ElemAbRank2(Vec<RankTwoSection>),
    Chains(Vec<Chain>),
}

/// Order, exponent and involution count of L/H, read off without forming the
/// quotient table.
fn quotient_invariants(g: &Group, lower: &Subgroup, upper: &Subgroup) -> (usize, usize, usize) {
    let order = upper.order() / lower.order();
    let mut exponent = 1;
    let mut involutions = 0;
    for &x in upper.elements() {
        let mut y = x;
        let mut k = 1;
        while !lower.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        exponent = exponent.max(k);
        if k == 2 {
            involutions += 1;
        }
    }
    (order, exponent, involutions / lower.order())
}

fn canonical_under(g: &Group, acting: &Subgroup, subs: &[&Subgroup]) -> Vec<Bits> {
    acting
        .elements()
        .iter()
        .map(|&x| subs.iter().map(|s| *s.conjugate(g, x).bits()).collect::<Vec<_>>())
        .min()
        .expect("nonempty")
}

fn is_elementary_abelian_section(g: &Group, lower: &Subgroup, upper: &Subgroup) -> bool {
    let p = g.prime() as usize;
    let gens = upper.generators();
    gens.iter().all(|&x| lower.contains(g.power(x, p)))
        && gens.iter().all(|&x| {
            gens.iter().all(|&y| {
                let comm = g.mul(g.mul(x, y), g.inv(g.mul(y, x)));
                lower.contains(comm)
            })
        })
}

pub fn find_subquotients(table: &SubgroupClassTable, kind: SubquotientKind) -> Subquotients {
    let g = table.group();
    let p = g.prime() as usize;
    let subs: Vec<&Subgroup> = table.all_subgroups().map(|(_, s)| s).collect();
    match kind {
        SubquotientKind::OrderP => {
            let mut out = Vec::new();
            for c in table.classes() {
                let t = &c.representative;
                let mut seen = HashSet::new();
                for s in subs.iter().filter(|s| s.order() * p == t.order() && s.is_subgroup_of(t)) {
                    if seen.insert(canonical_under(g, &c.normalizer, &[s])) {
                        out.push(SectionPair { lower: (*s).clone(), upper: t.clone() });
                    }
                }
            }
            Subquotients::OrderP(out)
        }
        SubquotientKind::ElemAbRank2 => {
            let mut out = Vec::new();
            for c in table.classes() {
                let t = &c.representative;
                let mut seen = HashSet::new();
                for s in subs.iter().filter(|s| s.order() * p * p == t.order() && s.is_subgroup_of(t)) {
                    if !s.is_normal_in(g, t) || !is_elementary_abelian_section(g, s, t) {
                        continue;
                    }
                    if !seen.insert(canonical_under(g, &c.normalizer, &[s])) {
                        continue;
                    }
                    let intermediates: Vec<Subgroup> = subs
                        .iter()
                        .filter(|x| x.order() == s.order() * p && s.is_subgroup_of(x) && x.is_subgroup_of(t))
                        .map(|x| (*x).clone())
                        .collect();
                    debug_assert_eq!(intermediates.len(), p + 1);
                    out.push(RankTwoSection { lower: (*s).clone(), upper: t.clone(), intermediates });
                }
            }
            Subquotients::ElemAbRank2(out)
        }
        SubquotientKind::Cyclic4Chain | SubquotientKind::Quaternion8Chain => {
            let mut out = Vec::new();
            if p != 2 {
                return Subquotients::Chains(out);
            }
            let want = if kind == SubquotientKind::Cyclic4Chain { (4, 4, 1) } else { (8, 4, 1) };
            for c in table.classes() {
                let h = &c.representative;
                let norm = &c.normalizer;
                let mut seen = HashSet::new();
                for l in subs.iter().filter(|l| l.order() == h.order() * want.0 && h.is_subgroup_of(l) && l.is_subgroup_of(norm)) {
                    if quotient_invariants(g, h, l) != want {
                        continue;
                    }
                    if !seen.insert(canonical_under(g, norm, &[l])) {
                        continue;
                    }
                    let inv = l
                        .elements()
                        .iter()
                        .copied()
                        .find(|&x| !h.contains(x) && h.contains(g.mul(x, x)))
                        .expect("unique involution");
                    let mut gens = h.generators().to_vec();
                    gens.push(inv);
                    let k = Subgroup::generated_by(g, &gens);
                    out.push(Chain { bottom: h.clone(), middle: Subgroup::from_bits(g, *k.bits()), top: (*l).clone() });
                }
            }
            Subquotients::Chains(out)
        }
    }
}
