//! Backtracking enumeration of functors and natural transformations.
//!
//! The same engine serves the functor-category construction, the isomorphism
//! search and automorphism counting. Composition constraints are attached to
//! the last morphism of each triple in assignment order so a partial map is
//! rejected as soon as it can no longer extend to a functor.

use std::ops::ControlFlow;

use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::Functor;

const UNSET: u32 = u32::MAX;

pub(crate) struct FunctorSearch<'a> {
    dom: &'a FinCat,
    cod: &'a FinCat,
    injective: bool,
    // non-identity morphisms of dom in assignment order
    order: Vec<MorId>,
    // constraints (g, f, gf) checked once order[k] is assigned
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
    dom_profile: Vec<Profile>,
    cod_profile: Vec<Profile>,
    allow: Option<&'a dyn Fn(ObjId, ObjId) -> bool>,
}

type Profile = (usize, Vec<usize>, Vec<usize>);

fn profile(c: &FinCat, o: ObjId) -> Profile {
    let mut out: Vec<usize> = c.objects().map(|b| c.hom(o, b).len()).collect();
    let mut inn: Vec<usize> = c.objects().map(|b| c.hom(b, o).len()).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (c.hom(o, o).len(), out, inn)
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a FinCat, cod: &'a FinCat, injective: bool) -> Self {
        let order: Vec<MorId> = dom.morphisms().filter(|&m| !dom.is_identity(m)).collect();
        let mut pos = vec![-1i64; dom.n_morphisms()];
        for (k, &m) in order.iter().enumerate() {
            pos[m.idx()] = k as i64;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (g, f, gf) in dom.comp_entries() {
            if dom.is_identity(g) || dom.is_identity(f) {
                continue;
            }
            let last = pos[g.idx()].max(pos[f.idx()]).max(pos[gf.idx()]);
            checks[last as usize].push((g, f, gf));
        }
        let (dom_profile, cod_profile) = if injective {
            (
                dom.objects().map(|o| profile(dom, o)).collect(),
                cod.objects().map(|o| profile(cod, o)).collect(),
            )
        } else {
            (Vec::new(), Vec::new())
        };
        FunctorSearch { dom, cod, injective, order, checks, dom_profile, cod_profile, allow: None }
    }

    /// Restricts the image of each object: `allow(x, y)` must hold for
    /// `x` to be sent to `y`.
    pub fn allowing(mut self, allow: &'a dyn Fn(ObjId, ObjId) -> bool) -> Self {
        self.allow = Some(allow);
        self
    }

    /// Calls `visit` with every functor's object and morphism maps, in
    /// lexicographic order of `(obj_map, mor_map)`.
    pub fn run(&self, mut visit: impl FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>) {
        if self.injective
            && (self.dom.n_objects() != self.cod.n_objects()
                || self.dom.n_morphisms() != self.cod.n_morphisms())
        {
            return;
        }
        let mut objs = vec![ObjId(UNSET); self.dom.n_objects()];
        let mut used_obj = vec![false; self.cod.n_objects()];
        let _ = self.assign_object(0, &mut objs, &mut used_obj, &mut visit);
    }

    fn object_fits(&self, x: usize, objs: &[ObjId]) -> bool {
        let (d, c) = (self.dom, self.cod);
        let px = objs[x];
        for y in 0..=x {
            let py = objs[y];
            let pairs = [((ObjId(x as u32), ObjId(y as u32)), (px, py)), ((ObjId(y as u32), ObjId(x as u32)), (py, px))];
            for ((a, b), (fa, fb)) in pairs {
                let nd = d.hom(a, b).len();
                let nc = c.hom(fa, fb).len();
                if self.injective {
                    if nd != nc {
                        return false;
                    }
                } else if nd > 0 && nc == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn assign_object(
        &self,
        x: usize,
        objs: &mut Vec<ObjId>,
        used: &mut Vec<bool>,
        visit: &mut impl FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if x == objs.len() {
            return self.start_morphisms(objs, visit);
        }
        for cand in 0..self.cod.n_objects() {
            if self.injective && (used[cand] || self.dom_profile[x] != self.cod_profile[cand]) {
                continue;
            }
            if self.allow.is_some_and(|a| !a(ObjId(x as u32), ObjId(cand as u32))) {
                continue;
            }
            objs[x] = ObjId(cand as u32);
            if !self.object_fits(x, objs) {
                continue;
            }
            used[cand] = true;
            let r = self.assign_object(x + 1, objs, used, visit);
            used[cand] = false;
            r?;
        }
        objs[x] = ObjId(UNSET);
        ControlFlow::Continue(())
    }

    fn start_morphisms(
        &self,
        objs: &[ObjId],
        visit: &mut impl FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut mors = vec![MorId(UNSET); self.dom.n_morphisms()];
        let mut used = vec![false; if self.injective { self.cod.n_morphisms() } else { 0 }];
        for o in self.dom.objects() {
            let img = self.cod.identity(objs[o.idx()]);
            mors[self.dom.identity(o).idx()] = img;
            if self.injective {
                used[img.idx()] = true;
            }
        }
        self.assign_morphism(0, objs, &mut mors, &mut used, visit)
    }

    fn assign_morphism(
        &self,
        k: usize,
        objs: &[ObjId],
        mors: &mut Vec<MorId>,
        used: &mut Vec<bool>,
        visit: &mut impl FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == self.order.len() {
            return visit(objs, mors);
        }
        let m = self.order[k];
        let (s, t) = (objs[self.dom.src(m).idx()], objs[self.dom.tgt(m).idx()]);
        for &cand in self.cod.hom(s, t) {
            if self.injective && used[cand.idx()] {
                continue;
            }
            mors[m.idx()] = cand;
            let ok = self.checks[k].iter().all(|&(g, f, gf)| {
                self.cod.compose(mors[g.idx()], mors[f.idx()]) == Some(mors[gf.idx()])
            });
            if !ok {
                continue;
            }
            if self.injective {
                used[cand.idx()] = true;
            }
            let r = self.assign_morphism(k + 1, objs, mors, used, visit);
            if self.injective {
                used[cand.idx()] = false;
            }
            r?;
        }
        mors[m.idx()] = MorId(UNSET);
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with the components of every natural transformation
/// `f => g`, in lexicographic order.
pub(crate) fn for_each_nat_trans(
    f: &Functor,
    g: &Functor,
    mut visit: impl FnMut(&[MorId]) -> ControlFlow<()>,
) {
    let a = f.dom();
    let c = f.cod();
    let n = a.n_objects();
    // naturality squares checked once both endpoints have components
    let mut checks: Vec<Vec<MorId>> = vec![Vec::new(); n];
    for m in a.morphisms() {
        if a.is_identity(m) {
            continue;
        }
        let last = a.src(m).idx().max(a.tgt(m).idx());
        checks[last].push(m);
    }
    let mut comps = vec![MorId(UNSET); n];
    fn go(
        x: usize,
        f: &Functor,
        g: &Functor,
        c: &FinCat,
        a: &FinCat,
        checks: &[Vec<MorId>],
        comps: &mut Vec<MorId>,
        visit: &mut impl FnMut(&[MorId]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if x == comps.len() {
            return visit(comps);
        }
        let o = ObjId(x as u32);
        for &cand in c.hom(f.on_obj(o), g.on_obj(o)) {
            comps[x] = cand;
            let ok = checks[x].iter().all(|&m| {
                let (p, q) = (a.src(m), a.tgt(m));
                c.compose(g.on_mor(m), comps[p.idx()]) == c.compose(comps[q.idx()], f.on_mor(m))
            });
            if ok {
                go(x + 1, f, g, c, a, checks, comps, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
    let _ = go(0, f, g, c, a, &checks, &mut comps, &mut visit);
}

/// All functors `dom -> cod`, stopping with `Err(limit)` once more than
/// `limit` have been found.
pub(crate) fn all_functors(
    dom: &FinCat,
    cod: &FinCat,
    limit: usize,
) -> std::result::Result<Vec<(Vec<ObjId>, Vec<MorId>)>, usize> {
    let mut out = Vec::new();
    let mut over = false;
    FunctorSearch::new(dom, cod, false).run(|o, m| {
        if out.len() == limit {
            over = true;
            return ControlFlow::Break(());
        }
        out.push((o.to_vec(), m.to_vec()));
        ControlFlow::Continue(())
    });
    if over {
        Err(limit)
    } else {
        Ok(out)
    }
}

pub(crate) fn all_nat_trans(f: &Functor, g: &Functor, limit: usize) -> std::result::Result<Vec<Vec<MorId>>, usize> {
    let mut out = Vec::new();
    let mut over = false;
    for_each_nat_trans(f, g, |c| {
        if out.len() == limit {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    if over {
        Err(limit)
    } else {
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Constant;
    use std::sync::Arc;

    #[test]
    fn functor_counts_on_small_cases() {
        let two = FinCat::constant(Constant::Two);
        let three = FinCat::chain(3);
        // functors 2 -> 2: const 0, id, const 1
        assert_eq!(all_functors(&two, &two, 100).unwrap().len(), 3);
        // monotone maps 2 -> 3
        assert_eq!(all_functors(&two, &three, 100).unwrap().len(), 6);
        let zero = FinCat::constant(Constant::Zero);
        assert_eq!(all_functors(&zero, &two, 100).unwrap().len(), 1);
        assert_eq!(all_functors(&two, &zero, 100).unwrap().len(), 0);
        assert_eq!(all_functors(&three, &three, 5), Err(5));
    }

    #[test]
    fn injective_search_finds_isomorphisms_only() {
        let iso = FinCat::constant(Constant::IsoTwo);
        let mut n = 0;
        FunctorSearch::new(&iso, &iso, true).run(|_, _| {
            n += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 2);
        let d3 = FinCat::discrete(3);
        let mut n = 0;
        FunctorSearch::new(&d3, &d3, true).run(|_, _| {
            n += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 6);
    }

    #[test]
    fn nat_trans_between_endpoint_pickers() {
        let s = Functor::constant(crate::functor::ConstFunctor::S);
        let t = Functor::constant(crate::functor::ConstFunctor::T);
        assert_eq!(all_nat_trans(&s, &t, 10).unwrap().len(), 1);
        assert_eq!(all_nat_trans(&t, &s, 10).unwrap().len(), 0);
        let c = Arc::new(FinCat::chain(3));
        let id = Functor::identity(&c);
        assert_eq!(all_nat_trans(&id, &id, 10).unwrap().len(), 1);
    }
}
