//! Limits and colimits of finite diagrams by exhaustive cone search.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::Functor;

/// A cone or cocone: an apex and one leg per object of the index category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramBound {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
}

const MAX_CONES: usize = 1 << 20;

/// Every cone over `d`, apex by apex, legs in lexicographic order.
pub(crate) fn cones(d: &Functor) -> Result<Vec<DiagramBound>> {
    let (j, c) = (d.dom(), d.cod());
    let mut checks: Vec<Vec<MorId>> = vec![Vec::new(); j.n_objects()];
    for m in j.morphisms() {
        if !j.is_identity(m) {
            checks[j.src(m).idx().max(j.tgt(m).idx())].push(m);
        }
    }
    let mut out = Vec::new();
    for x in c.objects() {
        let mut legs = vec![MorId(0); j.n_objects()];
        let r = extend(0, x, d, j, c, &checks, &mut legs, &mut out);
        if r.is_break() {
            return Err(Error::size("cones over a diagram", MAX_CONES));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    k: usize,
    x: ObjId,
    d: &Functor,
    j: &FinCat,
    c: &FinCat,
    checks: &[Vec<MorId>],
    legs: &mut Vec<MorId>,
    out: &mut Vec<DiagramBound>,
) -> ControlFlow<()> {
    if k == legs.len() {
        if out.len() == MAX_CONES {
            return ControlFlow::Break(());
        }
        out.push(DiagramBound { apex: x, legs: legs.clone() });
        return ControlFlow::Continue(());
    }
    for &l in c.hom(x, d.on_obj(ObjId(k as u32))) {
        legs[k] = l;
        let ok = checks[k]
            .iter()
            .all(|&m| c.compose(d.on_mor(m), legs[j.src(m).idx()]) == Some(legs[j.tgt(m).idx()]));
        if ok {
            extend(k + 1, x, d, j, c, checks, legs, out)?;
        }
    }
    ControlFlow::Continue(())
}

/// Morphisms `u : other.apex -> lim.apex` with `lim.legs[j] . u = other.legs[j]`.
pub(crate) fn mediators(c: &FinCat, lim: &DiagramBound, other: &DiagramBound) -> Vec<MorId> {
    c.hom(other.apex, lim.apex)
        .iter()
        .copied()
        .filter(|&u| {
            lim.legs
                .iter()
                .zip(&other.legs)
                .all(|(&l, &k)| c.compose(l, u) == Some(k))
        })
        .collect()
}

/// The first terminal cone in search order.
pub fn limit(d: &Functor) -> Result<DiagramBound> {
    let all = cones(d)?;
    let c = d.cod();
    all.iter()
        .find(|cand| all.iter().all(|other| mediators(c, cand, other).len() == 1))
        .cloned()
        .ok_or_else(|| {
            Error::NoUniversal(format!(
                "no limit for a diagram of shape {} objects, {} morphisms",
                d.dom().n_objects(),
                d.dom().n_morphisms()
            ))
        })
}

/// The first initial cocone in search order, found as a limit in the
/// opposite category. Indices are shared with the opposite, so the result
/// reads directly in the original category.
pub fn colimit(d: &Functor) -> Result<DiagramBound> {
    limit(&d.opposite()).map_err(|e| match e {
        Error::NoUniversal(_) => Error::NoUniversal(format!(
            "no colimit for a diagram of shape {} objects, {} morphisms",
            d.dom().n_objects(),
            d.dom().n_morphisms()
        )),
        e => e,
    })
}
