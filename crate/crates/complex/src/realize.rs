use std::sync::Arc;

use ttk_group::{quotient, Subgroup, SubgroupClassTable, SuperclassFunction};

use crate::builders::{builder_dihedral, builder_periodic, builder_u, is_dihedral, via_quotient};
use crate::complex::OrbitComplex;
use crate::ctx::GroupCtx;
use crate::eliminate::{has_contractible_summand, minimize};
use crate::tensor::tensor;
use crate::ComplexError;

/// A basis function together with the complex found for it, if any.
#[derive(Clone, Debug)]
pub struct RealizedElement {
    pub function: SuperclassFunction,
    pub complex: Option<OrbitComplex>,
    pub origin: Option<String>,
}

struct Candidate {
    origin: String,
    complex: OrbitComplex,
    marks: SuperclassFunction,
}

fn accept(
    c: OrbitComplex,
    table: &SubgroupClassTable,
) -> Option<(OrbitComplex, SuperclassFunction)> {
    if !c.is_endotrivial(table) {
        return None;
    }
    let c = if has_contractible_summand(&c).is_some() {
        minimize(&c).ok()?
    } else {
        c
    };
    let marks = c.h_marks(table).ok()?;
    Some((c, marks))
}

fn is_cyclic(order: usize, exponent: usize) -> bool {
    order == exponent
}

/// Complexes from the builder families: the shifted unit, u-type for each
/// cyclic quotient, dihedral and periodic complexes inflated from quotients.
pub fn standard_complexes(
    ctx: &Arc<GroupCtx>,
    table: &SubgroupClassTable,
) -> Vec<(String, OrbitComplex)> {
    let g = ctx.group();
    let mut out = vec![("unit[1]".to_string(), OrbitComplex::unit(ctx).shift(1))];
    let mut push = |origin: String, r: Result<OrbitComplex, ComplexError>| {
        if let Ok(c) = r {
            out.push((origin, c));
        }
    };
    for i in table.normal_classes() {
        let n: &Subgroup = table.representative(i);
        if n.order() == g.order() {
            continue;
        }
        let label = table.label(i);
        let q = quotient(g, n);
        let qg = &q.group;
        if is_cyclic(qg.order(), qg.exponent()) {
            push(format!("cyclic/{label}"), builder_u(ctx, n));
            continue;
        }
        let qctx = GroupCtx::new(qg.clone());
        if is_dihedral(&qctx) {
            push(
                format!("dihedral/{label}"),
                via_quotient(ctx, n, builder_dihedral),
            );
        }
        let involutions = qg.elements().filter(|&x| qg.element_order(x) == 2).count();
        if involutions == 1 {
            push(
                format!("periodic/{label}"),
                via_quotient(ctx, n, |c| builder_periodic(c, 16)),
            );
        }
    }
    out
}

fn builder_candidates(ctx: &Arc<GroupCtx>, table: &SubgroupClassTable) -> Vec<Candidate> {
    standard_complexes(ctx, table)
        .into_iter()
        .filter_map(|(origin, c)| {
            accept(c, table).map(|(complex, marks)| Candidate {
                origin,
                complex,
                marks,
            })
        })
        .collect()
}

/// Attach a complex to each basis function: builder families first, then
/// user complexes, then tensor products of two found complexes.
pub fn realize_basis(
    ctx: &Arc<GroupCtx>,
    table: &SubgroupClassTable,
    basis: &[SuperclassFunction],
    user: &[OrbitComplex],
) -> Result<Vec<RealizedElement>, ComplexError> {
    let mut cands = builder_candidates(ctx, table);
    for (k, c) in user.iter().enumerate() {
        let marks = c.h_marks(table)?;
        if !basis.contains(&marks) {
            return Err(ComplexError::HMarkMismatch(format!(
                "user complex {k} has h-marks {:?}",
                marks.values()
            )));
        }
        if has_contractible_summand(c).is_some() {
            return Err(ComplexError::HMarkMismatch(format!(
                "user complex {k} has a contractible summand"
            )));
        }
        cands.push(Candidate {
            origin: format!("user[{k}]"),
            complex: c.clone(),
            marks,
        });
    }
    let mut out: Vec<RealizedElement> = basis
        .iter()
        .map(|f| {
            let hit = cands.iter().find(|c| &c.marks == f);
            RealizedElement {
                function: f.clone(),
                complex: hit.map(|c| c.complex.clone()),
                origin: hit.map(|c| c.origin.clone()),
            }
        })
        .collect();
    for slot in out.iter_mut().filter(|e| e.complex.is_none()) {
        'pairs: for (a, ca) in cands.iter().enumerate() {
            for cb in &cands[a..] {
                if &(&ca.marks + &cb.marks) != &slot.function {
                    continue;
                }
                if let Some((complex, marks)) = accept(tensor(&ca.complex, &cb.complex), table) {
                    if marks == slot.function {
                        slot.complex = Some(complex);
                        slot.origin = Some(format!("{}*{}", ca.origin, cb.origin));
                        break 'pairs;
                    }
                }
            }
        }
    }
    Ok(out)
}
