//! Pointwise Kan extensions and Kan liftings.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::enumerate::{for_each_nat_trans, FunctorSearch};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::{Functor, NatTrans};

use super::limits::{limit, mediators, DiagramBound};
use super::comma_direct;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// An extension (or lifting) `R` with its universal 2-cell.
///
/// Right extension of `F` along `G`: `alpha : R.G => F`. Left extension:
/// `alpha : F => R.G`. Right lifting of `F` through `G`: `alpha : G.R => F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanResult {
    pub extension: Functor,
    pub unit: NatTrans,
}

const MAX_COMPETITORS: usize = 200_000;

/// Pointwise Kan extension of `f : A -> C` along `g : A -> B`.
///
/// On the right, `R b` is the limit of `F . pi` over `(b ↓ G)`; on the left
/// the whole problem is dualized.
pub fn kan_extension(side: Side, g: &Functor, f: &Functor) -> Result<KanResult> {
    if g.dom() != f.dom() {
        return Err(Error::ty("Kan extension needs functors with a common domain"));
    }
    match side {
        Side::Right => right_extension(g, f),
        Side::Left => {
            let r = right_extension(&g.opposite(), &f.opposite())?;
            Ok(KanResult { extension: r.extension.opposite(), unit: r.unit.opposite() })
        }
    }
}

fn right_extension(g: &Functor, f: &Functor) -> Result<KanResult> {
    let (b, c) = (g.cod(), f.cod());
    let mut bounds: Vec<(super::Comma, DiagramBound)> = Vec::with_capacity(b.n_objects());
    for x in b.objects() {
        let pick = Functor::determine_object(b, x)?;
        let cm = comma_direct(&pick, g);
        let diagram = f.after(&cm.proj_right)?;
        let lim = limit(&diagram).map_err(|e| match e {
            Error::NoUniversal(_) => Error::NoUniversal(format!(
                "Kan extension: the codomain lacks the limit needed at object {x}"
            )),
            e => e,
        })?;
        bounds.push((cm, lim));
    }
    let obj_map: Vec<ObjId> = bounds.iter().map(|(_, l)| l.apex).collect();
    // leg of the limit at b for the comma object (a, h : b -> G a)
    let leg = |x: ObjId, a: ObjId, h: MorId| -> MorId {
        let (cm, lim) = &bounds[x.idx()];
        let i = (0..cm.category.n_objects())
            .find(|&i| cm.proj_right.obj_map()[i] == a && cm.arrow[i] == h)
            .expect("comma object exists");
        lim.legs[i]
    };
    let mut mor_map = Vec::with_capacity(b.n_morphisms());
    for k in b.morphisms() {
        let (x, y) = (b.src(k), b.tgt(k));
        // R k is the mediator from the cone at x, reindexed along k, into the
        // limit at y
        let (cm_y, lim_y) = &bounds[y.idx()];
        let reindexed = DiagramBound {
            apex: obj_map[x.idx()],
            legs: (0..cm_y.category.n_objects())
                .map(|i| {
                    let (a, h) = (cm_y.proj_right.obj_map()[i], cm_y.arrow[i]);
                    leg(x, a, b.comp(h, k))
                })
                .collect(),
        };
        let med = mediators(c, lim_y, &reindexed);
        if med.len() != 1 {
            return Err(Error::Internal("Kan extension: mediator is not unique".into()));
        }
        mor_map.push(med[0]);
    }
    let r = Functor::new_unchecked(b.clone(), c.clone(), obj_map, mor_map);
    let a = g.dom();
    let comps = a.objects().map(|x| leg(g.on_obj(x), x, b.identity(g.on_obj(x)))).collect();
    let unit = NatTrans::new_unchecked(r.after(g)?, f.clone(), comps);
    Ok(KanResult { extension: r, unit })
}

fn for_each_functor(dom: &FinCat, cod: &Arc<FinCat>, dom_arc: &Arc<FinCat>, mut visit: impl FnMut(Functor) -> ControlFlow<()>) {
    FunctorSearch::new(dom, cod, false).run(|o, m| {
        visit(Functor::new_unchecked(dom_arc.clone(), cod.clone(), o.to_vec(), m.to_vec()))
    });
}

/// Components of every `gamma : h => r` with `beta = alpha . (gamma G)`
/// (right) or `beta = (gamma G) . alpha` (left).
fn factorizations(side: Side, g: &Functor, kr: &KanResult, h: &Functor, beta: &NatTrans) -> Vec<Vec<MorId>> {
    let c = kr.extension.cod();
    let a = g.dom();
    let mut found = Vec::new();
    let (from, to) = match side {
        Side::Right => (h, &kr.extension),
        Side::Left => (&kr.extension, h),
    };
    for_each_nat_trans(from, to, |gamma| {
        let ok = a.objects().all(|x| {
            let gx = gamma[g.on_obj(x).idx()];
            let lhs = match side {
                Side::Right => c.compose(kr.unit.at(x), gx),
                Side::Left => c.compose(gx, kr.unit.at(x)),
            };
            lhs == Some(beta.at(x))
        });
        if ok {
            found.push(gamma.to_vec());
            if found.len() > 1 {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found
}

/// The unique `gamma` through which `beta` factors.
pub fn kan_induced(side: Side, g: &Functor, kr: &KanResult, h: &Functor, beta: &NatTrans) -> Result<NatTrans> {
    let hg = h.after(g)?;
    let shape_ok = match side {
        Side::Right => *beta.source() == hg && beta.target() == kr.unit.target(),
        Side::Left => *beta.target() == hg && beta.source() == kr.unit.source(),
    };
    if !shape_ok {
        return Err(Error::ty("KanInd: the 2-cell does not have the shape of a competitor"));
    }
    let mut found = factorizations(side, g, kr, h, beta);
    if found.len() != 1 {
        return Err(Error::Internal(format!(
            "KanInd: {} factorizations where exactly one was expected",
            found.len()
        )));
    }
    let comps = found.pop().unwrap();
    Ok(match side {
        Side::Right => NatTrans::new_unchecked(h.clone(), kr.extension.clone(), comps),
        Side::Left => NatTrans::new_unchecked(kr.extension.clone(), h.clone(), comps),
    })
}

/// Checks the universal property against every competitor `(H, beta)`.
/// Returns the number of competitors examined.
pub fn verify_kan(side: Side, g: &Functor, f: &Functor, kr: &KanResult) -> Result<usize> {
    if !kr.extension.validate().is_empty() || !kr.unit.validate().is_empty() {
        return Err(Error::Internal("Kan result is not a functor with a natural 2-cell".into()));
    }
    let (b, c) = (g.cod(), f.cod());
    let mut seen = 0usize;
    let mut failure = None;
    for_each_functor(b, c, b, |h| {
        let hg = h.after(g).expect("composable");
        let (from, to) = match side {
            Side::Right => (&hg, f),
            Side::Left => (f, &hg),
        };
        for_each_nat_trans(from, to, |comps| {
            seen += 1;
            let beta = NatTrans::new_unchecked(from.clone(), to.clone(), comps.to_vec());
            let n = factorizations(side, g, kr, &h, &beta).len();
            if n != 1 {
                failure = Some(n);
                return ControlFlow::Break(());
            }
            if seen > MAX_COMPETITORS {
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if failure.is_some() || seen > MAX_COMPETITORS {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if let Some(n) = failure {
        return Err(Error::Internal(format!("universal property fails: {n} factorizations")));
    }
    if seen > MAX_COMPETITORS {
        return Err(Error::size("Kan competitors", MAX_COMPETITORS));
    }
    Ok(seen)
}

/// Every 2-cell `G.H => F` for every `H : A -> C`, with the naturality
/// squares of `A` grouped by the later of their two corners.
struct Lifting<'a> {
    g: &'a Functor,
    functors: Vec<Functor>,
    competitors: Vec<(usize, Vec<MorId>)>,
    squares: Vec<Vec<MorId>>,
}

impl<'a> Lifting<'a> {
    fn new(g: &'a Functor, f: &'a Functor) -> Result<Self> {
        let (a, cc, b) = (f.dom(), g.dom(), g.cod());
        // H x = y needs some morphism G y -> F x
        let allow = |x: ObjId, y: ObjId| !b.hom(g.on_obj(y), f.on_obj(x)).is_empty();
        let mut functors = Vec::new();
        let mut competitors = Vec::new();
        FunctorSearch::new(a, cc, false).allowing(&allow).run(|o, m| {
            let h = Functor::new_unchecked(a.clone(), cc.clone(), o.to_vec(), m.to_vec());
            let gh = g.after(&h).expect("composable");
            let before = competitors.len();
            for_each_nat_trans(&gh, f, |comps| {
                competitors.push((functors.len(), comps.to_vec()));
                if competitors.len() > MAX_COMPETITORS {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if competitors.len() > before {
                functors.push(h);
            }
            if competitors.len() > MAX_COMPETITORS {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if competitors.len() > MAX_COMPETITORS {
            return Err(Error::size("Kan lifting competitors", MAX_COMPETITORS));
        }
        let mut squares: Vec<Vec<MorId>> = vec![Vec::new(); a.n_objects()];
        for m in a.morphisms() {
            squares[a.src(m).idx().max(a.tgt(m).idx())].push(m);
        }
        Ok(Lifting { g, functors, competitors, squares })
    }

    /// Number of `gamma : h => r` with `beta_x = alpha_x . G(gamma_x)`,
    /// capped at 2.
    fn factorizations(&self, r: &Functor, alpha: &[MorId], h: &Functor, beta: &[MorId]) -> usize {
        let (a, b, c, g) = (h.dom(), self.g.cod(), r.cod(), self.g);
        let mut allowed: Vec<Vec<MorId>> = Vec::with_capacity(a.n_objects());
        for x in a.objects() {
            let ok: Vec<MorId> = c
                .hom(h.on_obj(x), r.on_obj(x))
                .iter()
                .copied()
                .filter(|&m| b.compose(alpha[x.idx()], g.on_mor(m)) == Some(beta[x.idx()]))
                .collect();
            if ok.is_empty() {
                return 0;
            }
            allowed.push(ok);
        }
        let mut pick = vec![MorId(0); a.n_objects()];
        let mut n = 0;
        self.count(0, h, r, &allowed, &mut pick, &mut n);
        n
    }

    fn count(&self, x: usize, h: &Functor, r: &Functor, allowed: &[Vec<MorId>], pick: &mut [MorId], n: &mut usize) {
        if x == allowed.len() {
            *n += 1;
            return;
        }
        let (a, c) = (h.dom(), r.cod());
        for &m in &allowed[x] {
            pick[x] = m;
            let natural = self.squares[x].iter().all(|&f| {
                let (s, t) = (a.src(f).idx(), a.tgt(f).idx());
                c.compose(r.on_mor(f), pick[s]) == c.compose(pick[t], h.on_mor(f))
            });
            if natural {
                self.count(x + 1, h, r, allowed, pick, n);
                if *n > 1 {
                    return;
                }
            }
        }
    }
}

/// Right Kan lifting of `f : A -> B` through `g : C -> B`: the first pair
/// `(R, alpha : G.R => F)` in search order through which every competitor
/// factors uniquely.
pub fn kan_lifting(g: &Functor, f: &Functor) -> Result<KanResult> {
    if g.cod() != f.cod() {
        return Err(Error::ty("Kan lifting needs functors with a common codomain"));
    }
    let l = Lifting::new(g, f)?;
    // competitors that refuted a candidate are tried first on the next one
    let mut order: Vec<usize> = (0..l.competitors.len()).collect();
    'candidates: for (ri, alpha) in &l.competitors {
        let r = &l.functors[*ri];
        for pos in 0..order.len() {
            let (hi, beta) = &l.competitors[order[pos]];
            if l.factorizations(r, alpha, &l.functors[*hi], beta) != 1 {
                order[..=pos].rotate_right(1);
                continue 'candidates;
            }
        }
        let gr = g.after(r)?;
        return Ok(KanResult { extension: r.clone(), unit: NatTrans::new_unchecked(gr, f.clone(), alpha.clone()) });
    }
    Err(Error::NoUniversal("no Kan lifting exists".into()))
}

/// Checks the lifting universal property against every competitor.
pub fn verify_lifting(g: &Functor, f: &Functor, kr: &KanResult) -> Result<usize> {
    let l = Lifting::new(g, f)?;
    for (hi, beta) in &l.competitors {
        let n = l.factorizations(&kr.extension, kr.unit.components(), &l.functors[*hi], beta);
        if n != 1 {
            return Err(Error::Internal(format!("lifting property fails: {n} factorizations")));
        }
    }
    Ok(l.competitors.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::coproduct;
    use crate::fincat::Constant;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn extension_along_identity_is_trivial() {
        let c = arc(FinCat::chain(3));
        let a = arc(FinCat::constant(Constant::Two));
        let f = Functor::new(a.clone(), c.clone(), vec![ObjId(0), ObjId(2)], vec![c.identity(ObjId(0)), c.hom(ObjId(0), ObjId(2))[0], c.identity(ObjId(2))]).unwrap();
        let id = Functor::identity(&a);
        for side in [Side::Left, Side::Right] {
            let kr = kan_extension(side, &id, &f).unwrap();
            assert_eq!(kr.extension, f);
            assert_eq!(kr.unit, NatTrans::identity(&f));
            verify_kan(side, &id, &f, &kr).unwrap();
        }
    }

    #[test]
    fn product_via_right_extension_along_bang() {
        // chain 3 viewed as a lattice: the product of 1 and 2 is 1
        let c = arc(FinCat::chain(3));
        let one = arc(FinCat::constant(Constant::One));
        let sum = coproduct(&one, &one);
        let bang = Functor::to_terminal(&sum.category, &one);
        let f = Functor::new(sum.category.clone(), c.clone(), vec![ObjId(1), ObjId(2)], vec![c.identity(ObjId(1)), c.identity(ObjId(2))]).unwrap();
        let kr = kan_extension(Side::Right, &bang, &f).unwrap();
        assert_eq!(kr.extension.on_obj(ObjId(0)), ObjId(1));
        verify_kan(Side::Right, &bang, &f, &kr).unwrap();
        let left = kan_extension(Side::Left, &bang, &f).unwrap();
        assert_eq!(left.extension.on_obj(ObjId(0)), ObjId(2));
        verify_kan(Side::Left, &bang, &f, &left).unwrap();
    }

    #[test]
    fn induced_by_unit_is_identity() {
        let two = arc(FinCat::constant(Constant::Two));
        let one = arc(FinCat::constant(Constant::One));
        let g = Functor::to_terminal(&two, &one);
        let f = Functor::identity(&two);
        let kr = kan_extension(Side::Right, &g, &f).unwrap();
        let gamma = kan_induced(Side::Right, &g, &kr, &kr.extension, &kr.unit).unwrap();
        assert_eq!(gamma, NatTrans::identity(&kr.extension));
    }

    #[test]
    fn lifting_along_isomorphism() {
        let iso = arc(FinCat::constant(Constant::IsoTwo));
        let swap = Functor::new(iso.clone(), iso.clone(), vec![ObjId(1), ObjId(0)], vec![MorId(3), MorId(2), MorId(1), MorId(0)]).unwrap();
        let f = Functor::determine_object(&iso, ObjId(0)).unwrap();
        let kr = kan_lifting(&swap, &f).unwrap();
        verify_lifting(&swap, &f, &kr).unwrap();
        // any object is isomorphic in IsoTwo, so R only matters up to iso
        assert!(kr.unit.validate().is_empty());
    }

    #[test]
    fn lifting_can_fail() {
        let two = arc(FinCat::constant(Constant::Two));
        let d2 = arc(FinCat::discrete(2));
        let g = Functor::new(d2.clone(), two.clone(), vec![ObjId(0), ObjId(0)], vec![two.identity(ObjId(0)); 2]).unwrap();
        let f = Functor::determine_object(&two, ObjId(1)).unwrap();
        // competitors: two choices of H, each with the single 2-cell id0 -> 1;
        // neither factors the other uniquely
        assert!(matches!(kan_lifting(&g, &f), Err(Error::NoUniversal(_))));
    }
}
