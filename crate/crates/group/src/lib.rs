//! Finite p-groups stored by multiplication table, their subgroups up to
//! conjugacy, Weyl quotients and the sections used by Borel–Smith checks.

mod bits;
mod group;
mod subgroups;
mod subquotients;
mod superclass;

pub use bits::{Bits, MAX_ELEMENTS};
pub use group::{catalog, parse_cycles, parse_group_file, Group, PermutationData, DEFAULT_ORDER_BOUND};
pub use subgroups::{quotient, weyl_quotient, Subgroup, SubgroupClass, SubgroupClassTable, WeylData};
pub use subquotients::{find_subquotients, Chain, RankTwoSection, SectionPair, SubquotientKind, Subquotients};
pub use superclass::SuperclassFunction;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("order {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
}

/// Build the class table, refusing groups above `bound`.
pub fn enumerate_subgroups(g: &Group, bound: usize) -> Result<SubgroupClassTable, GroupError> {
    if g.order() > bound {
        return Err(GroupError::OrderBoundExceeded { order: g.order(), bound });
    }
    Ok(SubgroupClassTable::new(g))
}

/// W_G(H) and the projection N_G(H) -> W_G(H).
pub fn weyl_group(g: &Group, h: &Subgroup) -> WeylData {
    weyl_quotient(g, h, &h.normalizer(g))
}
