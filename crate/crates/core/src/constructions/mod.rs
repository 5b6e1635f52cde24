//! Category-building operations.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{Constant, FinCat, MorId, ObjId};
use crate::functor::Functor;

pub mod coequalizer;
pub mod composable;
pub mod kan;
pub mod limits;
pub mod pow;

pub use coequalizer::coequalizer;
pub use composable::composable_functor;
pub use kan::{kan_extension, kan_induced, kan_lifting, verify_kan, verify_lifting, KanResult, Side};
pub use limits::{colimit, limit, DiagramBound};
pub use pow::FunctorCategory;

/// Size limits for constructions whose output can grow quickly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_objects: 4096, max_morphisms: 512 }
    }
}

impl Bounds {
    pub(crate) fn check(&self, c: &FinCat, what: &str) -> Result<()> {
        if c.n_objects() > self.max_objects {
            return Err(Error::size(format!("{what}: objects"), self.max_objects));
        }
        if c.n_morphisms() > self.max_morphisms {
            return Err(Error::size(format!("{what}: morphisms"), self.max_morphisms));
        }
        Ok(())
    }
}

/// A category with two functors out of or into it.
#[derive(Clone, Debug)]
pub struct Span {
    pub category: Arc<FinCat>,
    pub left: Functor,
    pub right: Functor,
}

/// `a ⊔ b` with its injections. Objects and morphisms of `a` come first.
pub fn coproduct(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Span {
    let (na, ma) = (a.n_objects() as u32, a.n_morphisms() as u32);
    let mut edges: Vec<_> = a.morphisms().map(|m| (a.src(m), a.tgt(m))).collect();
    edges.extend(b.morphisms().map(|m| (ObjId(b.src(m).0 + na), ObjId(b.tgt(m).0 + na))));
    let mut ident = a.identities().to_vec();
    ident.extend(b.identities().iter().map(|m| MorId(m.0 + ma)));
    let c = FinCat::from_fn(a.n_objects() + b.n_objects(), edges, ident, |g, f| {
        if g.0 < ma {
            a.comp(g, f)
        } else {
            MorId(b.comp(MorId(g.0 - ma), MorId(f.0 - ma)).0 + ma)
        }
    });
    let c = Arc::new(c);
    let left = Functor::new_unchecked(a.clone(), c.clone(), a.objects().collect(), a.morphisms().collect());
    let right = Functor::new_unchecked(
        b.clone(),
        c.clone(),
        b.objects().map(|o| ObjId(o.0 + na)).collect(),
        b.morphisms().map(|m| MorId(m.0 + ma)).collect(),
    );
    Span { category: c, left, right }
}

/// The functor out of a coproduct that restricts to `f` and `g`.
pub fn copair(sum: &Span, f: &Functor, g: &Functor) -> Result<Functor> {
    if f.dom() != sum.left.dom() || g.dom() != sum.right.dom() || f.cod() != g.cod() {
        return Err(Error::ty("copairing needs functors out of the two summands into one category"));
    }
    let mut obj_map = f.obj_map().to_vec();
    obj_map.extend_from_slice(g.obj_map());
    let mut mor_map = f.mor_map().to_vec();
    mor_map.extend_from_slice(g.mor_map());
    Ok(Functor::new_unchecked(sum.category.clone(), f.cod().clone(), obj_map, mor_map))
}

/// `a × b` with its projections. Pair `(x, y)` has index `x * |b| + y` for
/// objects and morphisms alike.
pub fn product(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Span {
    let (nb, mb) = (b.n_objects() as u32, b.n_morphisms() as u32);
    let mut edges = Vec::new();
    for f in a.morphisms() {
        for g in b.morphisms() {
            edges.push((
                ObjId(a.src(f).0 * nb + b.src(g).0),
                ObjId(a.tgt(f).0 * nb + b.tgt(g).0),
            ));
        }
    }
    let ident = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| MorId(a.identity(x).0 * mb + b.identity(y).0))
        .collect();
    let c = FinCat::from_fn(a.n_objects() * b.n_objects(), edges, ident, |g, f| {
        let (g1, g2) = (MorId(g.0 / mb), MorId(g.0 % mb));
        let (f1, f2) = (MorId(f.0 / mb), MorId(f.0 % mb));
        MorId(a.comp(g1, f1).0 * mb + b.comp(g2, f2).0)
    });
    let c = Arc::new(c);
    let left = Functor::new_unchecked(
        c.clone(),
        a.clone(),
        c.objects().map(|o| ObjId(o.0 / nb.max(1))).collect(),
        c.morphisms().map(|m| MorId(m.0 / mb.max(1))).collect(),
    );
    let right = Functor::new_unchecked(
        c.clone(),
        b.clone(),
        c.objects().map(|o| ObjId(o.0 % nb.max(1))).collect(),
        c.morphisms().map(|m| MorId(m.0 % mb.max(1))).collect(),
    );
    Span { category: c, left, right }
}

/// The strict pullback of `f` and `g`: pairs of objects and of morphisms
/// with equal images, in lexicographic order.
pub fn pullback(f: &Functor, g: &Functor) -> Result<Span> {
    if f.cod() != g.cod() {
        return Err(Error::ty("pullback needs functors with a common codomain"));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut obj_pairs = Vec::new();
    let mut obj_at = std::collections::HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.on_obj(x) == g.on_obj(y) {
                obj_at.insert((x, y), ObjId(obj_pairs.len() as u32));
                obj_pairs.push((x, y));
            }
        }
    }
    let mut mor_pairs = Vec::new();
    let mut mor_at = std::collections::HashMap::new();
    for m in a.morphisms() {
        for n in b.morphisms() {
            if f.on_mor(m) == g.on_mor(n) {
                mor_at.insert((m, n), MorId(mor_pairs.len() as u32));
                mor_pairs.push((m, n));
            }
        }
    }
    let edges = mor_pairs
        .iter()
        .map(|&(m, n)| (obj_at[&(a.src(m), b.src(n))], obj_at[&(a.tgt(m), b.tgt(n))]))
        .collect();
    let ident = obj_pairs.iter().map(|&(x, y)| mor_at[&(a.identity(x), b.identity(y))]).collect();
    let c = FinCat::from_fn(obj_pairs.len(), edges, ident, |p, q| {
        let ((m1, n1), (m2, n2)) = (mor_pairs[p.idx()], mor_pairs[q.idx()]);
        mor_at[&(a.comp(m1, m2), b.comp(n1, n2))]
    });
    let c = Arc::new(c);
    let left = Functor::new_unchecked(
        c.clone(),
        a.clone(),
        obj_pairs.iter().map(|p| p.0).collect(),
        mor_pairs.iter().map(|p| p.0).collect(),
    );
    let right = Functor::new_unchecked(
        c.clone(),
        b.clone(),
        obj_pairs.iter().map(|p| p.1).collect(),
        mor_pairs.iter().map(|p| p.1).collect(),
    );
    Ok(Span { category: c, left, right })
}

/// The full subcategory on `objs` (kept in the given order) and its
/// inclusion. Morphisms keep their relative order.
pub fn full_subcategory(c: &Arc<FinCat>, objs: &[ObjId]) -> (Arc<FinCat>, Functor) {
    let mut new_obj = vec![None; c.n_objects()];
    for (i, &o) in objs.iter().enumerate() {
        new_obj[o.idx()] = Some(ObjId(i as u32));
    }
    let kept: Vec<MorId> = c
        .morphisms()
        .filter(|&m| new_obj[c.src(m).idx()].is_some() && new_obj[c.tgt(m).idx()].is_some())
        .collect();
    let mut new_mor = vec![MorId(u32::MAX); c.n_morphisms()];
    for (i, &m) in kept.iter().enumerate() {
        new_mor[m.idx()] = MorId(i as u32);
    }
    let edges = kept
        .iter()
        .map(|&m| (new_obj[c.src(m).idx()].unwrap(), new_obj[c.tgt(m).idx()].unwrap()))
        .collect();
    let ident = objs.iter().map(|&o| new_mor[c.identity(o).idx()]).collect();
    let sub = FinCat::from_fn(objs.len(), edges, ident, |g, f| new_mor[c.comp(kept[g.idx()], kept[f.idx()]).idx()]);
    let sub = Arc::new(sub);
    let incl = Functor::new_unchecked(sub.clone(), c.clone(), objs.to_vec(), kept);
    (sub, incl)
}

/// Skeleton of a category with its retraction and inclusion.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: Arc<FinCat>,
    pub retraction: Functor,
    pub inclusion: Functor,
}

/// One object per isomorphism class (the least index in the class), all
/// morphisms between representatives. Each object is sent to its
/// representative along the least isomorphism `phi`, and `m : a -> b` to
/// `phi_b . m . phi_a^-1`.
pub fn skeleton(c: &Arc<FinCat>) -> Skeleton {
    let n = c.n_objects();
    let mut rep = vec![usize::MAX; n];
    let mut phi = vec![MorId(0); n];
    let mut reps = Vec::new();
    for a in c.objects() {
        if rep[a.idx()] != usize::MAX {
            continue;
        }
        rep[a.idx()] = reps.len();
        phi[a.idx()] = c.identity(a);
        for b in c.objects().skip(a.idx() + 1) {
            if rep[b.idx()] != usize::MAX {
                continue;
            }
            if let Some(&iso) = c.hom(b, a).iter().find(|&&m| c.inverse(m).is_some()) {
                rep[b.idx()] = reps.len();
                phi[b.idx()] = iso;
            }
        }
        reps.push(a);
    }
    let (sub, inclusion) = full_subcategory(c, &reps);
    let mut back = vec![MorId(0); c.n_morphisms()];
    for (i, &m) in inclusion.mor_map().iter().enumerate() {
        back[m.idx()] = MorId(i as u32);
    }
    let obj_map = c.objects().map(|a| ObjId(rep[a.idx()] as u32)).collect();
    let mor_map = c
        .morphisms()
        .map(|m| {
            let (a, b) = (c.src(m), c.tgt(m));
            let inv = c.inverse(phi[a.idx()]).expect("chosen morphism is invertible");
            back[c.comp(phi[b.idx()], c.comp(m, inv)).idx()]
        })
        .collect();
    let retraction = Functor::new_unchecked(c.clone(), sub.clone(), obj_map, mor_map);
    Skeleton { category: sub, retraction, inclusion }
}

/// A comma category with its projections and, for each object, the
/// morphism `h : L a -> R b` it stands for.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: Arc<FinCat>,
    pub proj_left: Functor,
    pub proj_right: Functor,
    pub arrow: Vec<MorId>,
}

/// `(L ↓ R)` assembled from pullbacks over the arrow category `C^2`:
/// first `A ×_C C^2` along `L` and the source evaluation, then
/// `C^2 ×_C B` along the target evaluation and `R`, then the pullback of
/// the two over `C^2`.
pub fn comma(l: &Functor, r: &Functor, bounds: Bounds) -> Result<Comma> {
    if l.cod() != r.cod() {
        return Err(Error::ty("comma needs functors with a common codomain"));
    }
    let c = l.cod();
    let two = Arc::new(FinCat::constant(Constant::Two));
    let one = Arc::new(FinCat::constant(Constant::One));
    let c2 = FunctorCategory::new(&two, c, bounds)?;
    let c1 = FunctorCategory::new(&one, c, bounds)?;
    let ev = pow::evaluate_at_point(&c1, c);
    let s = Functor::constant(crate::functor::ConstFunctor::S);
    let t = Functor::constant(crate::functor::ConstFunctor::T);
    let ev_s = ev.after(&pow::precompose(&s, &c2, &c1)?)?;
    let ev_t = ev.after(&pow::precompose(&t, &c2, &c1)?)?;
    let p1 = pullback(l, &ev_s)?;
    let p2 = pullback(&ev_t, r)?;
    let p = pullback(&p1.right, &p2.left)?;
    bounds.check(&p.category, "comma")?;
    let proj_left = p1.left.after(&p.left)?;
    let proj_right = p2.right.after(&p.right)?;
    let u = two.hom(ObjId(0), ObjId(1))[0];
    let arrow = p
        .category
        .objects()
        .map(|o| {
            let h = p1.right.on_obj(p.left.on_obj(o));
            c2.functor(h).on_mor(u)
        })
        .collect();
    Ok(Comma { category: p.category, proj_left, proj_right, arrow })
}

/// `(L ↓ R)` built straight from its definition: objects `(a, b, h)` in
/// lexicographic order and morphisms `(m, n)` making the square commute.
pub(crate) fn comma_direct(l: &Functor, r: &Functor) -> Comma {
    let (a, b, c) = (l.dom(), r.dom(), l.cod());
    let mut objs = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            for &h in c.hom(l.on_obj(x), r.on_obj(y)) {
                objs.push((x, y, h));
            }
        }
    }
    let mut mors = Vec::new();
    let mut edges = Vec::new();
    let mut at = std::collections::HashMap::new();
    for (i, &(x, y, h)) in objs.iter().enumerate() {
        for (j, &(x2, y2, h2)) in objs.iter().enumerate() {
            for &m in a.hom(x, x2) {
                for &n in b.hom(y, y2) {
                    if c.compose(r.on_mor(n), h) == c.compose(h2, l.on_mor(m)) {
                        at.insert((i, j, m, n), MorId(mors.len() as u32));
                        mors.push((m, n));
                        edges.push((ObjId(i as u32), ObjId(j as u32)));
                    }
                }
            }
        }
    }
    let ident = objs
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| at[&(i, i, a.identity(x), b.identity(y))])
        .collect();
    let cat = FinCat::from_fn(objs.len(), edges.clone(), ident, |g, f| {
        let ((gm, gn), (fm, fn_)) = (mors[g.idx()], mors[f.idx()]);
        at[&(edges[f.idx()].0.idx(), edges[g.idx()].1.idx(), a.comp(gm, fm), b.comp(gn, fn_))]
    });
    let cat = Arc::new(cat);
    let proj_left = Functor::new_unchecked(
        cat.clone(),
        a.clone(),
        objs.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.0).collect(),
    );
    let proj_right = Functor::new_unchecked(
        cat.clone(),
        b.clone(),
        objs.iter().map(|o| o.1).collect(),
        mors.iter().map(|m| m.1).collect(),
    );
    Comma { category: cat, proj_left, proj_right, arrow: objs.iter().map(|o| o.2).collect() }
}
