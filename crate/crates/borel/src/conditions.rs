use std::collections::BTreeSet;

use ttk_group::{find_subquotients, SubgroupClassTable, SubquotientKind, Subquotients, SuperclassFunction};

/// f(upper) - f(lower) must be divisible by `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Congruence {
    pub lower: usize,
    pub upper: usize,
    pub modulus: i64,
    pub source: CongruenceSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CongruenceSource {
    /// T/S of odd prime order
    OrderP,
    /// L/H cyclic of order 4, middle term K
    Cyclic4 { top: usize },
    /// L/H quaternion of order 8, middle term K
    Quaternion8 { top: usize },
}

/// f(lower) - f(upper) = sum over intermediates X of (f(X) - f(upper)).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RankTwoRelation {
    pub lower: usize,
    pub upper: usize,
    pub intermediates: Vec<usize>,
}

impl RankTwoRelation {
    /// Coefficient vector c with sum c_i f_i = 0 expressing the relation.
    pub fn coefficients(&self, len: usize) -> Vec<i64> {
        let mut c = vec![0i64; len];
        c[self.lower] += 1;
        c[self.upper] -= 1;
        for &x in &self.intermediates {
            c[x] -= 1;
            c[self.upper] += 1;
        }
        c
    }
}

/// All Borel–Smith constraints of a group, in class-index form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    pub classes: usize,
    pub congruences: Vec<Congruence>,
    pub relations: Vec<RankTwoRelation>,
}

impl Constraints {
    pub fn new(table: &SubgroupClassTable) -> Constraints {
        let p = table.group().prime();
        let mut congruences = BTreeSet::new();
        if p != 2 {
            if let Subquotients::OrderP(v) = find_subquotients(table, SubquotientKind::OrderP) {
                for s in v {
                    congruences.insert(Congruence {
                        lower: table.class_of(&s.lower),
                        upper: table.class_of(&s.upper),
                        modulus: 2,
                        source: CongruenceSource::OrderP,
                    });
                }
            }
        } else {
            for (kind, modulus) in [(SubquotientKind::Cyclic4Chain, 2), (SubquotientKind::Quaternion8Chain, 4)] {
                if let Subquotients::Chains(v) = find_subquotients(table, kind) {
                    for c in v {
                        let top = table.class_of(&c.top);
                        let source = if modulus == 2 { CongruenceSource::Cyclic4 { top } } else { CongruenceSource::Quaternion8 { top } };
                        congruences.insert(Congruence { lower: table.class_of(&c.bottom), upper: table.class_of(&c.middle), modulus, source });
                    }
                }
            }
        }
        let mut relations = BTreeSet::new();
        if let Subquotients::ElemAbRank2(v) = find_subquotients(table, SubquotientKind::ElemAbRank2) {
            for s in v {
                let mut intermediates: Vec<usize> = s.intermediates.iter().map(|x| table.class_of(x)).collect();
                intermediates.sort_unstable();
                relations.insert(RankTwoRelation { lower: table.class_of(&s.lower), upper: table.class_of(&s.upper), intermediates });
            }
        }
        Constraints { classes: table.len(), congruences: congruences.into_iter().collect(), relations: relations.into_iter().collect() }
    }
}

/// A failed condition together with the values involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Congruence { condition: Congruence, lower_value: i64, upper_value: i64 },
    RankTwo { relation: RankTwoRelation, lhs: i64, rhs: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSmithReport {
    pub holds: bool,
    /// first failure of each kind checked, in constraint order
    pub witnesses: Vec<Violation>,
}

/// Monotone non-increasing along subconjugacy.
pub fn is_effective(table: &SubgroupClassTable, f: &SuperclassFunction) -> bool {
    (0..table.len()).all(|i| (0..table.len()).all(|j| !table.leq_up_to_conj(i, j) || f[i] >= f[j]))
}

pub fn is_borel_smith(constraints: &Constraints, f: &SuperclassFunction) -> BorelSmithReport {
    assert_eq!(f.len(), constraints.classes, "function length");
    let mut witnesses = Vec::new();
    if let Some(c) = constraints.congruences.iter().find(|c| (f[c.upper] - f[c.lower]).rem_euclid(c.modulus) != 0) {
        witnesses.push(Violation::Congruence { condition: c.clone(), lower_value: f[c.lower], upper_value: f[c.upper] });
    }
    for r in &constraints.relations {
        let lhs = f[r.lower] - f[r.upper];
        let rhs: i64 = r.intermediates.iter().map(|&x| f[x] - f[r.upper]).sum();
        if lhs != rhs {
            witnesses.push(Violation::RankTwo { relation: r.clone(), lhs, rhs });
            break;
        }
    }
    BorelSmithReport { holds: witnesses.is_empty(), witnesses }
}
