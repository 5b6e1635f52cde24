//! The composition functor `C^2 ×_{C^1} C^2 -> C^2`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Constant, FinCat, ObjId};
use crate::functor::{ConstFunctor, Functor, NatTrans};

use super::pow::{precompose, FunctorCategory};
use super::{pullback, Bounds};

/// Composition as a functor. Its domain is the pullback of `C^s` and `C^t`,
/// whose objects are pairs `(g, f)` of arrows with `src g = tgt f`; the pair
/// goes to `g . f`, and a pair of squares `(sigma, tau)` goes to the square
/// with components `(tau_0, sigma_1)`.
pub fn composable_functor(c: &Arc<FinCat>, bounds: Bounds) -> Result<Functor> {
    let two = Arc::new(FinCat::constant(Constant::Two));
    let one = Arc::new(FinCat::constant(Constant::One));
    let c2 = FunctorCategory::new(&two, c, bounds)?;
    let c1 = FunctorCategory::new(&one, c, bounds)?;
    let cs = precompose(&Functor::constant(ConstFunctor::S), &c2, &c1)?;
    let ct = precompose(&Functor::constant(ConstFunctor::T), &c2, &c1)?;
    let p = pullback(&cs, &ct)?;
    bounds.check(&p.category, "composable pairs")?;
    let u = two.hom(ObjId(0), ObjId(1))[0];
    let mut obj_map = Vec::with_capacity(p.category.n_objects());
    for o in p.category.objects() {
        let g = c2.functor(p.left.on_obj(o));
        let f = c2.functor(p.right.on_obj(o));
        let gf = c.comp(g.on_mor(u), f.on_mor(u));
        let h = Functor::determine_morphism(c, gf)?;
        obj_map.push(c2.object_of(&h).ok_or_else(|| Error::Internal("composite arrow missing".into()))?);
    }
    let mut mor_map = Vec::with_capacity(p.category.n_morphisms());
    for m in p.category.morphisms() {
        let sigma = c2.transformation(p.left.on_mor(m));
        let tau = c2.transformation(p.right.on_mor(m));
        let (s, t) = (p.category.src(m), p.category.tgt(m));
        let src = c2.functor(obj_map[s.idx()]).clone();
        let tgt = c2.functor(obj_map[t.idx()]).clone();
        let comps = vec![tau.at(ObjId(0)), sigma.at(ObjId(1))];
        let a = NatTrans::new_unchecked(src, tgt, comps);
        mor_map.push(c2.morphism_of(&a).ok_or_else(|| Error::Internal("composite square missing".into()))?);
    }
    Ok(Functor::new_unchecked(p.category.clone(), c2.category.clone(), obj_map, mor_map))
}
