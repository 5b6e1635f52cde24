//! Functors and natural transformations between finite categories.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{Constant, FinCat, MorId, ObjId, Violation};

/// A functor given by explicit object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

/// A natural transformation `source => target` with one component per
/// object of the shared domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTrans {
    source: Functor,
    target: Functor,
    components: Vec<MorId>,
}

/// The fixed functors named by the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstFunctor {
    /// `1 -> 2` picking the source of the arrow.
    S,
    /// `1 -> 2` picking the target of the arrow.
    T,
    Bang01,
    Bang02,
    Bang21,
    /// Alias of `S`.
    SrcOf,
    /// Alias of `T`.
    TgtOf,
}

impl Functor {
    pub fn new(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(dom, cod, obj_map, mor_map);
        let v = f.validate();
        if v.is_empty() {
            Ok(f)
        } else {
            Err(Error::Invalid(v))
        }
    }

    pub fn new_unchecked(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Self {
        Functor { dom, cod, obj_map, mor_map }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    #[inline]
    pub fn on_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.idx()]
    }

    #[inline]
    pub fn on_mor(&self, m: MorId) -> MorId {
        self.mor_map[m.idx()]
    }

    /// Exhaustive check of sources, targets, identities and composition.
    pub fn validate(&self) -> Vec<Violation> {
        let (a, b) = (&*self.dom, &*self.cod);
        let mut v = Vec::new();
        let bad = |detail: String| Violation::Functor { detail };
        if self.obj_map.len() != a.n_objects() || self.mor_map.len() != a.n_morphisms() {
            v.push(bad("map lengths do not match the domain".into()));
            return v;
        }
        if self.obj_map.iter().any(|o| o.idx() >= b.n_objects())
            || self.mor_map.iter().any(|m| m.idx() >= b.n_morphisms())
        {
            v.push(bad("image outside the codomain".into()));
            return v;
        }
        for m in a.morphisms() {
            let fm = self.on_mor(m);
            if b.src(fm) != self.on_obj(a.src(m)) || b.tgt(fm) != self.on_obj(a.tgt(m)) {
                v.push(bad(format!("{m} is sent to a morphism with the wrong endpoints")));
            }
        }
        for o in a.objects() {
            if self.on_mor(a.identity(o)) != b.identity(self.on_obj(o)) {
                v.push(bad(format!("identity of {o} is not preserved")));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for (g, f, gf) in a.comp_entries() {
            if b.compose(self.on_mor(g), self.on_mor(f)) != Some(self.on_mor(gf)) {
                v.push(bad(format!("composite {g} . {f} is not preserved")));
            }
        }
        v
    }

    pub fn identity(c: &Arc<FinCat>) -> Self {
        Functor {
            dom: c.clone(),
            cod: c.clone(),
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    /// `self . inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor> {
        if *inner.cod != *self.dom {
            return Err(Error::ty("functor composition: codomain and domain differ"));
        }
        Ok(Functor {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            obj_map: inner.obj_map.iter().map(|&o| self.on_obj(o)).collect(),
            mor_map: inner.mor_map.iter().map(|&m| self.on_mor(m)).collect(),
        })
    }

    /// The same maps viewed between opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            dom: Arc::new(self.dom.opposite()),
            cod: Arc::new(self.cod.opposite()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn constant(which: ConstFunctor) -> Functor {
        let one = Arc::new(FinCat::constant(Constant::One));
        let zero = Arc::new(FinCat::constant(Constant::Zero));
        let two = Arc::new(FinCat::constant(Constant::Two));
        match which {
            ConstFunctor::S | ConstFunctor::SrcOf => endpoint_picker(&two, ObjId(0)),
            ConstFunctor::T | ConstFunctor::TgtOf => endpoint_picker(&two, ObjId(1)),
            ConstFunctor::Bang01 => Functor::from_empty(&zero, &one),
            ConstFunctor::Bang02 => Functor::from_empty(&zero, &two),
            ConstFunctor::Bang21 => Functor::to_terminal(&two, &one),
        }
    }

    /// The unique functor out of an empty category.
    pub fn from_empty(dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Functor {
        debug_assert_eq!(dom.n_objects(), 0);
        Functor { dom: dom.clone(), cod: cod.clone(), obj_map: vec![], mor_map: vec![] }
    }

    /// The unique functor into a category with one object and one morphism.
    pub fn to_terminal(dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Functor {
        debug_assert!(cod.n_objects() == 1 && cod.n_morphisms() == 1);
        Functor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj_map: vec![ObjId(0); dom.n_objects()],
            mor_map: vec![MorId(0); dom.n_morphisms()],
        }
    }

    /// The functor `1 -> c` picking `o`.
    pub fn determine_object(c: &Arc<FinCat>, o: ObjId) -> Result<Functor> {
        if o.idx() >= c.n_objects() {
            return Err(Error::Runtime(format!("unknown object {o}")));
        }
        Ok(Functor {
            dom: Arc::new(FinCat::constant(Constant::One)),
            cod: c.clone(),
            obj_map: vec![o],
            mor_map: vec![c.identity(o)],
        })
    }

    /// The functor `2 -> c` picking `m`.
    pub fn determine_morphism(c: &Arc<FinCat>, m: MorId) -> Result<Functor> {
        if m.idx() >= c.n_morphisms() {
            return Err(Error::Runtime(format!("unknown morphism {m}")));
        }
        let two = FinCat::constant(Constant::Two);
        let (s, t) = (c.src(m), c.tgt(m));
        let mut mor_map = vec![MorId(0); 3];
        for k in two.morphisms() {
            mor_map[k.idx()] = match (two.src(k).0, two.tgt(k).0) {
                (0, 0) => c.identity(s),
                (1, 1) => c.identity(t),
                _ => m,
            };
        }
        Ok(Functor { dom: Arc::new(two), cod: c.clone(), obj_map: vec![s, t], mor_map })
    }

    /// Inverse of [`Functor::determine_object`] / [`Functor::determine_morphism`].
    pub fn pick(&self) -> Result<Picked> {
        if *self.dom == FinCat::constant(Constant::One) {
            Ok(Picked::Object(self.obj_map[0]))
        } else if *self.dom == FinCat::constant(Constant::Two) {
            let u = self.dom.hom(ObjId(0), ObjId(1))[0];
            Ok(Picked::Morphism(self.on_mor(u)))
        } else {
            Err(Error::ty("Pick needs a functor out of One or Two"))
        }
    }

    /// True when the functor is bijective on objects and morphisms.
    pub fn is_isomorphism(&self) -> bool {
        let bij = |v: Vec<usize>, n: usize| {
            let mut seen = vec![false; n];
            v.len() == n && v.into_iter().all(|i| !std::mem::replace(&mut seen[i], true))
        };
        bij(self.obj_map.iter().map(|o| o.idx()).collect(), self.cod.n_objects())
            && bij(self.mor_map.iter().map(|m| m.idx()).collect(), self.cod.n_morphisms())
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Functor> {
        if !self.is_isomorphism() {
            return Err(Error::ty("functor is not an isomorphism"));
        }
        let mut obj_map = vec![ObjId(0); self.cod.n_objects()];
        for (o, &fo) in self.obj_map.iter().enumerate() {
            obj_map[fo.idx()] = ObjId(o as u32);
        }
        let mut mor_map = vec![MorId(0); self.cod.n_morphisms()];
        for (m, &fm) in self.mor_map.iter().enumerate() {
            mor_map[fm.idx()] = MorId(m as u32);
        }
        Ok(Functor { dom: self.cod.clone(), cod: self.dom.clone(), obj_map, mor_map })
    }
}

fn endpoint_picker(c: &Arc<FinCat>, o: ObjId) -> Functor {
    Functor::determine_object(c, o).expect("object in range")
}

/// What [`Functor::pick`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Picked {
    Object(ObjId),
    Morphism(MorId),
}

impl NatTrans {
    pub fn new(source: Functor, target: Functor, components: Vec<MorId>) -> Result<Self> {
        let t = Self::new_unchecked(source, target, components);
        let v = t.validate();
        if v.is_empty() {
            Ok(t)
        } else {
            Err(Error::Invalid(v))
        }
    }

    pub fn new_unchecked(source: Functor, target: Functor, components: Vec<MorId>) -> Self {
        NatTrans { source, target, components }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    #[inline]
    pub fn at(&self, o: ObjId) -> MorId {
        self.components[o.idx()]
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        self.source.dom()
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        self.source.cod()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut v = self.source.validate();
        v.extend(self.target.validate());
        if !v.is_empty() {
            return v;
        }
        if self.source.dom != self.target.dom || self.source.cod != self.target.cod {
            v.push(Violation::Functor { detail: "source and target are not parallel".into() });
            return v;
        }
        let (a, c) = (&**self.dom(), &**self.cod());
        if self.components.len() != a.n_objects() {
            v.push(Violation::Functor { detail: "one component per object required".into() });
            return v;
        }
        for o in a.objects() {
            let k = self.at(o);
            if k.idx() >= c.n_morphisms()
                || c.src(k) != self.source.on_obj(o)
                || c.tgt(k) != self.target.on_obj(o)
            {
                v.push(Violation::Functor { detail: format!("component at {o} has the wrong type") });
            }
        }
        if !v.is_empty() {
            return v;
        }
        for m in a.morphisms() {
            let (x, y) = (a.src(m), a.tgt(m));
            let lhs = c.compose(self.target.on_mor(m), self.at(x));
            let rhs = c.compose(self.at(y), self.source.on_mor(m));
            if lhs != rhs {
                v.push(Violation::Naturality { mor: m.0 });
            }
        }
        v
    }

    pub fn identity(f: &Functor) -> NatTrans {
        let c = f.cod();
        NatTrans {
            source: f.clone(),
            target: f.clone(),
            components: f.dom().objects().map(|o| c.identity(f.on_obj(o))).collect(),
        }
    }

    /// Vertical composite `self . first` (apply `first`, then `self`).
    pub fn vcomp(&self, first: &NatTrans) -> Result<NatTrans> {
        if first.target != self.source {
            return Err(Error::ty("Vcomp: transformations are not composable"));
        }
        let c = self.cod();
        Ok(NatTrans {
            source: first.source.clone(),
            target: self.target.clone(),
            components: self
                .dom()
                .objects()
                .map(|o| c.comp(self.at(o), first.at(o)))
                .collect(),
        })
    }

    /// Horizontal composite `self * inner`, where `inner: F => G` lives on
    /// `A -> B` and `self: H => K` on `B -> C`. The result is `HF => KG`.
    pub fn hcomp(&self, inner: &NatTrans) -> Result<NatTrans> {
        if **inner.cod() != **self.dom() {
            return Err(Error::ty("Hcomp: transformations are not composable"));
        }
        let c = self.cod();
        let source = self.source.after(&inner.source)?;
        let target = self.target.after(&inner.target)?;
        let components = inner
            .dom()
            .objects()
            .map(|a| {
                // K(alpha_a) . beta_{F a}
                let fa = inner.source.on_obj(a);
                c.comp(self.target.on_mor(inner.at(a)), self.at(fa))
            })
            .collect();
        Ok(NatTrans { source, target, components })
    }

    /// `F(self)`: post-whiskering by a functor.
    pub fn whisker_left(&self, f: &Functor) -> Result<NatTrans> {
        NatTrans::identity(f).hcomp(self)
    }

    /// `self_G`: pre-whiskering by a functor.
    pub fn whisker_right(&self, g: &Functor) -> Result<NatTrans> {
        self.hcomp(&NatTrans::identity(g))
    }

    /// Reverses the direction: `a: F => G` becomes `a^op: G^op => F^op`.
    pub fn opposite(&self) -> NatTrans {
        NatTrans {
            source: self.target.opposite(),
            target: self.source.opposite(),
            components: self.components.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<FinCat> {
        Arc::new(FinCat::constant(Constant::Two))
    }

    #[test]
    fn s_and_t_pick_the_endpoints() {
        let s = Functor::constant(ConstFunctor::S);
        let t = Functor::constant(ConstFunctor::T);
        assert_eq!(s.on_obj(ObjId(0)), ObjId(0));
        assert_eq!(t.on_obj(ObjId(0)), ObjId(1));
        assert_eq!(**s.dom(), FinCat::constant(Constant::One));
        assert_eq!(**s.cod(), FinCat::constant(Constant::Two));
        assert_eq!(s.pick().unwrap(), Picked::Object(ObjId(0)));
        for f in [ConstFunctor::Bang01, ConstFunctor::Bang02, ConstFunctor::Bang21] {
            assert!(Functor::constant(f).validate().is_empty());
        }
        let b = Functor::constant(ConstFunctor::Bang21);
        assert_eq!(b.obj_map(), &[ObjId(0), ObjId(0)]);
    }

    #[test]
    fn determine_then_pick_roundtrips() {
        let c = two();
        let u = c.hom(ObjId(0), ObjId(1))[0];
        let f = Functor::determine_morphism(&c, u).unwrap();
        assert!(f.validate().is_empty());
        assert_eq!(f, Functor::identity(&c));
        assert_eq!(f.pick().unwrap(), Picked::Morphism(u));
        for o in c.objects() {
            let f = Functor::determine_object(&c, o).unwrap();
            assert_eq!(f.pick().unwrap(), Picked::Object(o));
        }
        assert!(Functor::identity(&c).pick().is_ok());
        let iso = Arc::new(FinCat::constant(Constant::IsoTwo));
        assert!(matches!(Functor::identity(&iso).pick(), Err(Error::Type(_))));
    }

    #[test]
    fn identity_functor_and_opposite() {
        let z = Arc::new(FinCat::constant(Constant::Zero));
        let id = Functor::identity(&z);
        assert!(id.obj_map().is_empty() && id.mor_map().is_empty());
        let s = Functor::constant(ConstFunctor::S);
        let op = s.opposite();
        assert!(op.validate().is_empty());
        assert_eq!(op.on_obj(ObjId(0)), ObjId(0));
        assert_eq!(**op.cod(), FinCat::constant(Constant::Two).opposite());
        assert_eq!(op.opposite(), s);
    }

    #[test]
    fn vertical_identity_law_and_hcomp_of_identities() {
        let c = two();
        let s = Functor::constant(ConstFunctor::S);
        let t = Functor::constant(ConstFunctor::T);
        let u = c.hom(ObjId(0), ObjId(1))[0];
        let alpha = NatTrans::new(s.clone(), t.clone(), vec![u]).unwrap();
        assert_eq!(NatTrans::identity(&t).vcomp(&alpha).unwrap(), alpha);
        assert_eq!(alpha.vcomp(&NatTrans::identity(&s)).unwrap(), alpha);
        let id_c = Functor::identity(&c);
        let h = NatTrans::identity(&id_c).hcomp(&NatTrans::identity(&s)).unwrap();
        assert_eq!(h, NatTrans::identity(&id_c.after(&s).unwrap()));
        // reversed component is not natural-typed
        assert!(NatTrans::new(t, s, vec![u]).is_err());
    }
}
