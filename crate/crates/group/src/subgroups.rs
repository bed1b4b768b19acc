use std::collections::{HashMap, HashSet};

use crate::bits::Bits;
use crate::group::Group;

/// A subgroup as a set of element indices, with a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: Bits,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn generated_by(g: &Group, gens: &[u32]) -> Subgroup {
        let bits = g.closure_bits(gens);
        let elements: Vec<u32> = bits.iter().collect();
        let mut generators: Vec<u32> = gens.iter().copied().filter(|&x| x != 0).collect();
        generators.sort_unstable();
        generators.dedup();
        Subgroup { bits, elements, generators }
    }

    /// Caller guarantees `bits` is a subgroup.
    pub fn from_bits(g: &Group, bits: Bits) -> Subgroup {
        // greedy generating set
        let mut gens = Vec::new();
        let mut span = Bits::from_iter([0]);
        for x in bits.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = g.closure_bits(&gens);
            }
        }
        debug_assert_eq!(span, bits);
        Subgroup { bits, elements: bits.iter().collect(), generators: gens }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { bits: Bits::from_iter([0]), elements: vec![0], generators: vec![] }
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::generated_by(g, g.generators())
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// g H g^-1
    pub fn conjugate(&self, g: &Group, x: u32) -> Subgroup {
        let bits = Bits::from_iter(self.elements.iter().map(|&h| g.conj(x, h)));
        let generators = self.generators.iter().map(|&h| g.conj(x, h)).collect();
        Subgroup { bits, elements: bits.iter().collect(), generators }
    }

    pub fn normalizer(&self, g: &Group) -> Subgroup {
        let bits = Bits::from_iter(g.elements().filter(|&x| self.generators.iter().all(|&h| self.bits.contains(g.conj(x, h)))));
        Subgroup::from_bits(g, bits)
    }

    pub fn is_normal_in(&self, g: &Group, ambient: &Subgroup) -> bool {
        ambient.generators.iter().all(|&x| self.generators.iter().all(|&h| self.bits.contains(g.conj(x, h))))
    }

    pub fn intersection(&self, g: &Group, other: &Subgroup) -> Subgroup {
        Subgroup::from_bits(g, self.bits.intersection(&other.bits))
    }

    /// Minimal element of the left coset xH.
    pub fn coset_rep(&self, g: &Group, x: u32) -> u32 {
        self.elements.iter().map(|&h| g.mul(x, h)).min().expect("nonempty")
    }

    /// Sorted minimal representatives of the left cosets of `self` in G.
    pub fn left_transversal(&self, g: &Group) -> Vec<u32> {
        let mut seen = vec![false; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for &h in &self.elements {
                seen[g.mul(x, h) as usize] = true;
            }
        }
        reps
    }
}

/// W = N/H together with the maps relating it to G.
#[derive(Clone, Debug)]
pub struct WeylData {
    pub group: Group,
    pub normalizer: Subgroup,
    /// For each element of G: its image in W, or None outside the normalizer.
    pub projection: Vec<Option<u32>>,
    /// For each element of W: the minimal element of the corresponding coset.
    pub lifts: Vec<u32>,
}

/// Form N/H for H normal in N.
pub fn weyl_quotient(g: &Group, h: &Subgroup, n: &Subgroup) -> WeylData {
    assert!(h.is_subgroup_of(n) && h.is_normal_in(g, n), "H must be normal in N");
    let mut lifts: Vec<u32> = Vec::new();
    let mut projection: Vec<Option<u32>> = vec![None; g.order()];
    for &x in n.elements() {
        if projection[x as usize].is_some() {
            continue;
        }
        let idx = lifts.len() as u32;
        lifts.push(x);
        for &y in h.elements() {
            projection[g.mul(x, y) as usize] = Some(idx);
        }
    }
    let m = lifts.len();
    let mut mult = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            mult[a * m + b] = projection[g.mul(lifts[a], lifts[b]) as usize].expect("closed");
        }
    }
    let name = format!("W({})", g.name());
    let group = Group::from_table(&name, m, mult, Some(g.prime())).expect("quotient of a p-group");
    WeylData { group, normalizer: n.clone(), projection, lifts }
}

impl WeylData {
    pub fn project(&self, x: u32) -> Option<u32> {
        self.projection[x as usize]
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
    pub normalizer: Subgroup,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// All subgroups of a group, grouped into conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupClassTable {
    group: Group,
    classes: Vec<SubgroupClass>,
    class_of: HashMap<Bits, usize>,
    leq: Vec<Vec<bool>>,
    weyl: Vec<WeylData>,
}

fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut seen: HashSet<Bits> = HashSet::new();
    let triv = Subgroup::trivial();
    seen.insert(*triv.bits());
    let mut all = vec![triv.clone()];
    let mut layer = vec![triv];
    let p = g.prime() as usize;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for h in &layer {
            let norm = h.normalizer(g);
            for &x in norm.elements() {
                // a maximal subgroup of <H, x> containing H normally has x^p in H
                if h.contains(x) || !h.contains(g.power(x, p)) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(x);
                let bits = g.closure_bits(&gens);
                if seen.insert(bits) {
                    let s = Subgroup::from_bits(g, bits);
                    next.push(s.clone());
                    all.push(s);
                }
            }
        }
        layer = next;
    }
    all
}

impl SubgroupClassTable {
    pub fn new(g: &Group) -> SubgroupClassTable {
        let subs = all_subgroups(g);
        let mut assigned: HashSet<Bits> = HashSet::new();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for s in &subs {
            if assigned.contains(s.bits()) {
                continue;
            }
            let mut members: Vec<Subgroup> = Vec::new();
            let mut member_bits: HashSet<Bits> = HashSet::new();
            for x in g.elements() {
                let c = s.conjugate(g, x);
                if member_bits.insert(*c.bits()) {
                    assigned.insert(*c.bits());
                    members.push(Subgroup::from_bits(g, *c.bits()));
                }
            }
            members.sort_by(|a, b| a.elements().cmp(b.elements()));
            let representative = members[0].clone();
            let normalizer = representative.normalizer(g);
            classes.push(SubgroupClass { representative, members, normalizer });
        }
        classes.sort_by(|a, b| (a.order(), a.representative.elements()).cmp(&(b.order(), b.representative.elements())));
        let mut class_of = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            for m in &c.members {
                class_of.insert(*m.bits(), i);
            }
        }
        let n = classes.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if classes[i].order() <= classes[j].order() && classes[j].order() % classes[i].order() == 0 {
                    let rep = classes[j].representative.bits();
                    leq[i][j] = classes[i].members.iter().any(|m| m.bits().is_subset(rep));
                }
            }
        }
        let weyl = classes.iter().map(|c| weyl_quotient(g, &c.representative, &c.normalizer)).collect();
        SubgroupClassTable { group: g.clone(), classes, class_of, leq, weyl }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn representative(&self, i: usize) -> &Subgroup {
        &self.classes[i].representative
    }

    /// Class index of an arbitrary subgroup.
    pub fn class_of(&self, s: &Subgroup) -> usize {
        self.class_of_bits(s.bits())
    }

    pub fn class_of_bits(&self, b: &Bits) -> usize {
        *self.class_of.get(b).expect("not a subgroup of this group")
    }

    /// Some conjugate of class i lies in class j.
    pub fn leq_up_to_conj(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn weyl(&self, i: usize) -> &WeylData {
        &self.weyl[i]
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Every subgroup of G, class by class.
    pub fn all_subgroups(&self) -> impl Iterator<Item = (usize, &Subgroup)> {
        self.classes.iter().enumerate().flat_map(|(i, c)| c.members.iter().map(move |m| (i, m)))
    }

    /// Normal subgroups (classes of size one).
    pub fn normal_classes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.classes[i].members.len() == 1).collect()
    }

    /// Short printable label: "order:index" within that order.
    pub fn label(&self, i: usize) -> String {
        let ord = self.classes[i].order();
        let k = self.classes[..i].iter().filter(|c| c.order() == ord).count();
        format!("{ord}_{k}")
    }
}

/// G/N for a normal subgroup N.
pub fn quotient(g: &Group, n: &Subgroup) -> WeylData {
    weyl_quotient(g, n, &Subgroup::whole(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn class_counts() {
        for (name, n) in [("C2", 2), ("Q8", 6), ("D8", 8), ("C4", 3), ("E2r2", 5)] {
            let t = SubgroupClassTable::new(&catalog(name).unwrap());
            assert_eq!(t.len(), n, "{name}");
        }
    }

    #[test]
    fn weyl_extremes() {
        let g = catalog("D8").unwrap();
        let t = SubgroupClassTable::new(&g);
        assert_eq!(t.weyl(0).group.order(), 8);
        assert_eq!(t.weyl(t.whole_class()).group.order(), 1);
        let noncentral: Vec<usize> = (0..t.len()).filter(|&i| t.class(i).order() == 2 && t.class(i).members.len() == 2).collect();
        assert_eq!(noncentral.len(), 2);
        for i in noncentral {
            assert_eq!(t.weyl(i).group.order(), 2);
        }
    }
}
