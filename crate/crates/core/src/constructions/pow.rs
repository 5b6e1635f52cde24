//! Functor categories and the functors induced between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::enumerate::{all_functors, all_nat_trans};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::{Functor, NatTrans};

use super::Bounds;

/// `B^A` together with the functors and transformations its objects and
/// morphisms stand for.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: Arc<FinCat>,
    pub functors: Vec<Functor>,
    pub transformations: Vec<NatTrans>,
    obj_index: HashMap<Vec<MorId>, ObjId>,
    mor_index: HashMap<(ObjId, ObjId, Vec<MorId>), MorId>,
}

impl FunctorCategory {
    /// Objects are the functors in lexicographic order of their maps.
    /// Morphisms are grouped by `(source, target)` and ordered by components
    /// within a group.
    pub fn new(a: &Arc<FinCat>, b: &Arc<FinCat>, bounds: Bounds) -> Result<Self> {
        let maps = all_functors(a, b, bounds.max_objects)
            .map_err(|n| Error::size("functor category objects", n))?;
        let functors: Vec<Functor> = maps
            .into_iter()
            .map(|(o, m)| Functor::new_unchecked(a.clone(), b.clone(), o, m))
            .collect();
        let mut edges = Vec::new();
        let mut transformations = Vec::new();
        let mut mor_index = HashMap::new();
        for (i, f) in functors.iter().enumerate() {
            for (j, g) in functors.iter().enumerate() {
                let room = bounds.max_morphisms.saturating_sub(transformations.len());
                let comps = all_nat_trans(f, g, room)
                    .map_err(|_| Error::size("functor category morphisms", bounds.max_morphisms))?;
                for c in comps {
                    let id = MorId(transformations.len() as u32);
                    let (s, t) = (ObjId(i as u32), ObjId(j as u32));
                    mor_index.insert((s, t, c.clone()), id);
                    edges.push((s, t));
                    transformations.push(NatTrans::new_unchecked(f.clone(), g.clone(), c));
                }
            }
        }
        let ident: Vec<MorId> = functors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let o = ObjId(i as u32);
                let c: Vec<MorId> = a.objects().map(|x| b.identity(f.on_obj(x))).collect();
                mor_index[&(o, o, c)]
            })
            .collect();
        let category = FinCat::from_fn(functors.len(), edges.clone(), ident, |g, f| {
            let gf = transformations[g.idx()].vcomp(&transformations[f.idx()]).expect("composable");
            mor_index[&(edges[f.idx()].0, edges[g.idx()].1, gf.components().to_vec())]
        });
        let obj_index = functors
            .iter()
            .enumerate()
            .map(|(i, f)| (f.mor_map().to_vec(), ObjId(i as u32)))
            .collect();
        Ok(FunctorCategory {
            category: Arc::new(category),
            functors,
            transformations,
            obj_index,
            mor_index,
        })
    }

    pub fn object_of(&self, f: &Functor) -> Option<ObjId> {
        self.obj_index.get(f.mor_map()).copied()
    }

    pub fn morphism_of(&self, a: &NatTrans) -> Option<MorId> {
        let s = self.object_of(a.source())?;
        let t = self.object_of(a.target())?;
        self.mor_index.get(&(s, t, a.components().to_vec())).copied()
    }

    /// The functor `obj` stands for.
    pub fn functor(&self, o: ObjId) -> &Functor {
        &self.functors[o.idx()]
    }

    pub fn transformation(&self, m: MorId) -> &NatTrans {
        &self.transformations[m.idx()]
    }
}

/// `C^F : C^{A'} -> C^A` for `F : A -> A'`, acting by precomposition.
pub fn precompose(f: &Functor, from: &FunctorCategory, to: &FunctorCategory) -> Result<Functor> {
    let obj_map = from
        .functors
        .iter()
        .map(|h| to.object_of(&h.after(f)?).ok_or_else(|| missing("precomposite")))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = from
        .transformations
        .iter()
        .map(|a| {
            let comps: Vec<MorId> = f.dom().objects().map(|x| a.at(f.on_obj(x))).collect();
            let s = obj_map[from.object_of(a.source()).expect("own object").idx()];
            let t = obj_map[from.object_of(a.target()).expect("own object").idx()];
            to.mor_index.get(&(s, t, comps)).copied().ok_or_else(|| missing("whiskered transformation"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor::new_unchecked(from.category.clone(), to.category.clone(), obj_map, mor_map))
}

/// `K^C : B^C -> B'^C` for `K : B -> B'`, acting by postcomposition.
pub fn postcompose(k: &Functor, from: &FunctorCategory, to: &FunctorCategory) -> Result<Functor> {
    let obj_map = from
        .functors
        .iter()
        .map(|h| to.object_of(&k.after(h)?).ok_or_else(|| missing("postcomposite")))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = from
        .transformations
        .iter()
        .map(|a| {
            let comps: Vec<MorId> = a.components().iter().map(|&m| k.on_mor(m)).collect();
            let s = obj_map[from.object_of(a.source()).expect("own object").idx()];
            let t = obj_map[from.object_of(a.target()).expect("own object").idx()];
            to.mor_index.get(&(s, t, comps)).copied().ok_or_else(|| missing("whiskered transformation"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor::new_unchecked(from.category.clone(), to.category.clone(), obj_map, mor_map))
}

/// The isomorphism `C^1 -> C` evaluating at the single object.
pub fn evaluate_at_point(c1: &FunctorCategory, c: &Arc<FinCat>) -> Functor {
    let obj_map = c1.functors.iter().map(|h| h.on_obj(ObjId(0))).collect();
    let mor_map = c1.transformations.iter().map(|a| a.at(ObjId(0))).collect();
    Functor::new_unchecked(c1.category.clone(), c.clone(), obj_map, mor_map)
}

fn missing(what: &str) -> Error {
    Error::Internal(format!("{what} not found in functor category"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Constant;
    use crate::functor::ConstFunctor;

    fn arc(c: Constant) -> Arc<FinCat> {
        Arc::new(FinCat::constant(c))
    }

    #[test]
    fn two_to_two_is_three_chain() {
        let two = arc(Constant::Two);
        let p = FunctorCategory::new(&two, &two, Bounds::default()).unwrap();
        assert!(p.category.validate().is_empty());
        // objects: const 0, identity, const 1 in that order, so the table
        // coincides with the chain built directly
        assert_eq!(*p.category, FinCat::chain(3));
    }

    #[test]
    fn exponent_zero_and_one() {
        let c = Arc::new(FinCat::chain(3));
        let p0 = FunctorCategory::new(&arc(Constant::Zero), &c, Bounds::default()).unwrap();
        assert_eq!(*p0.category, FinCat::constant(Constant::One));
        let p1 = FunctorCategory::new(&arc(Constant::One), &c, Bounds::default()).unwrap();
        assert_eq!(*p1.category, *c);
    }

    #[test]
    fn size_bound_is_reported() {
        let c = Arc::new(FinCat::discrete(5));
        let err = FunctorCategory::new(&Arc::new(FinCat::discrete(4)), &c, Bounds { max_objects: 100, max_morphisms: 512 });
        assert!(matches!(err, Err(Error::SizeBound { .. })));
    }

    #[test]
    fn precomposition_with_source_picks_domain() {
        let two = arc(Constant::Two);
        let c = Arc::new(FinCat::chain(3));
        let c2 = FunctorCategory::new(&two, &c, Bounds::default()).unwrap();
        let c1 = FunctorCategory::new(&arc(Constant::One), &c, Bounds::default()).unwrap();
        let cs = precompose(&Functor::constant(ConstFunctor::S), &c2, &c1).unwrap();
        assert!(cs.validate().is_empty());
        let ev = evaluate_at_point(&c1, &c);
        for (i, h) in c2.functors.iter().enumerate() {
            assert_eq!(ev.on_obj(cs.on_obj(ObjId(i as u32))), h.on_obj(ObjId(0)));
        }
    }
}
