//! Coequalizers in Cat by coset enumeration.
//!
//! The coequalizer of `F, G : A -> B` is presented by generators (the
//! non-identity morphisms of `B`, with endpoints identified along
//! `F x ~ G x`) and relations (the composition table of `B` and
//! `F m = G m`). Its morphisms are enumerated Todd–Coxeter style: elements
//! are classes of paths out of an identity, each element has one table
//! entry per generator leaving its target, and every relation is enforced
//! at every element. Each element is fully processed before the next one,
//! so the enumeration terminates whenever the quotient is finite. An
//! infinite quotient runs into the element bound instead.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::Functor;

use super::Bounds;

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    gen_tgt: Vec<usize>,
    // generator -> position among the generators leaving its source
    local: Vec<usize>,
    gens_from: Vec<Vec<usize>>,
    // relations (lhs, rhs) grouped by the class they start at
    rels_from: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    parent: Vec<u32>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    table: Vec<Vec<u32>>,
    alive: usize,
    cap: usize,
}

impl Enumerator {
    fn find(&mut self, mut e: u32) -> u32 {
        while self.parent[e as usize] != e {
            let p = self.parent[e as usize];
            self.parent[e as usize] = self.parent[p as usize];
            e = p;
        }
        e
    }

    fn new_element(&mut self, src: usize, tgt: usize) -> Result<u32> {
        if self.alive >= self.cap {
            return Err(Error::size(
                "coequalizer enumeration (the quotient may be infinite)",
                self.cap,
            ));
        }
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.src.push(src);
        self.tgt.push(tgt);
        self.table.push(vec![UNDEF; self.gens_from[tgt].len()]);
        self.alive += 1;
        Ok(id)
    }

    fn step(&mut self, e: u32, g: usize, define: bool) -> Result<u32> {
        let slot = self.local[g];
        let next = self.table[e as usize][slot];
        if next != UNDEF {
            return Ok(self.find(next));
        }
        debug_assert!(define);
        let n = self.new_element(self.src[e as usize], self.gen_tgt[g])?;
        self.table[e as usize][slot] = n;
        Ok(n)
    }

    fn trace(&mut self, e: u32, path: &[usize], define: bool) -> Result<u32> {
        let mut cur = self.find(e);
        for &g in path {
            cur = self.step(cur, g, define)?;
        }
        Ok(cur)
    }

    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, lose) = if a < b { (a, b) } else { (b, a) };
            self.parent[lose as usize] = keep;
            self.alive -= 1;
            let row = std::mem::take(&mut self.table[lose as usize]);
            for (slot, &t) in row.iter().enumerate() {
                if t == UNDEF {
                    continue;
                }
                let k = self.table[keep as usize][slot];
                if k == UNDEF {
                    self.table[keep as usize][slot] = t;
                } else {
                    queue.push_back((k, t));
                }
            }
        }
    }

    fn run(&mut self, n_classes: usize) -> Result<()> {
        for c in 0..n_classes {
            self.new_element(c, c)?;
        }
        let mut i = 0u32;
        while (i as usize) < self.parent.len() {
            if self.find(i) == i {
                let t = self.tgt[i as usize];
                for r in 0..self.rels_from[t].len() {
                    if self.find(i) != i {
                        break;
                    }
                    let (lhs, rhs) = self.rels_from[t][r].clone();
                    let x = self.trace(i, &lhs, true)?;
                    let y = self.trace(i, &rhs, true)?;
                    self.coincide(x, y);
                }
                if self.find(i) == i {
                    for &g in &self.gens_from[t].clone() {
                        if self.find(i) != i {
                            break;
                        }
                        self.step(i, g, true)?;
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }
}

/// The coequalizer of `f, g : A -> B` and the quotient functor `B -> Q`.
///
/// Objects of `Q` are ordered by their least representative in `B`.
/// Morphisms are ordered by `(source, target)`, identities first, then by
/// breadth-first discovery from the identities, so chains and other posets
/// come out table-equal to their direct constructions.
pub fn coequalizer(f: &Functor, g: &Functor, bounds: Bounds) -> Result<(Arc<FinCat>, Functor)> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::ty("coequalizer needs parallel functors"));
    }
    let b = f.cod().clone();
    let a = f.dom();

    // object classes
    let n = b.n_objects();
    let mut uf: Vec<usize> = (0..n).collect();
    fn root(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for x in a.objects() {
        let (p, q) = (root(&mut uf, f.on_obj(x).idx()), root(&mut uf, g.on_obj(x).idx()));
        let (lo, hi) = (p.min(q), p.max(q));
        uf[hi] = lo;
    }
    let mut class = vec![0usize; n];
    let mut n_classes = 0;
    let mut class_of_root = vec![usize::MAX; n];
    for x in 0..n {
        let r = root(&mut uf, x);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = n_classes;
            n_classes += 1;
        }
        class[x] = class_of_root[r];
    }

    // generators
    let mut gen_of = vec![usize::MAX; b.n_morphisms()];
    let mut gen_src = Vec::new();
    let mut gen_tgt = Vec::new();
    let mut gen_mor = Vec::new();
    for m in b.morphisms() {
        if !b.is_identity(m) {
            gen_of[m.idx()] = gen_mor.len();
            gen_mor.push(m);
            gen_src.push(class[b.src(m).idx()]);
            gen_tgt.push(class[b.tgt(m).idx()]);
        }
    }
    let mut gens_from = vec![Vec::new(); n_classes];
    let mut local = vec![0; gen_mor.len()];
    for (k, &s) in gen_src.iter().enumerate() {
        local[k] = gens_from[s].len();
        gens_from[s].push(k);
    }
    let word = |m: MorId| -> Vec<usize> {
        if b.is_identity(m) {
            vec![]
        } else {
            vec![gen_of[m.idx()]]
        }
    };

    // relations, paths read in the order the morphisms are applied
    let mut rels_from = vec![Vec::new(); n_classes];
    for (gm, fm, gf) in b.comp_entries() {
        if b.is_identity(gm) || b.is_identity(fm) {
            continue;
        }
        let lhs = vec![gen_of[fm.idx()], gen_of[gm.idx()]];
        rels_from[class[b.src(fm).idx()]].push((lhs, word(gf)));
    }
    for m in a.morphisms() {
        let (p, q) = (word(f.on_mor(m)), word(g.on_mor(m)));
        if p != q {
            rels_from[class[b.src(f.on_mor(m)).idx()]].push((p, q));
        }
    }

    let cap = 16 * bounds.max_morphisms + 256;
    let mut en = Enumerator {
        gen_tgt: gen_tgt.clone(),
        local: local.clone(),
        gens_from: gens_from.clone(),
        rels_from,
        parent: Vec::new(),
        src: Vec::new(),
        tgt: Vec::new(),
        table: Vec::new(),
        alive: 0,
        cap,
    };
    en.run(n_classes)?;

    // breadth-first order and a spelling for every element
    let total = en.parent.len();
    let mut order = vec![usize::MAX; total];
    let mut spelled: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut seen = 0usize;
    for c in 0..n_classes {
        let start = en.find(c as u32);
        let mut queue = VecDeque::from([start]);
        order[start as usize] = seen;
        seen += 1;
        while let Some(e) = queue.pop_front() {
            for &gn in &gens_from[en.tgt[e as usize]] {
                let nx = en.trace(e, &[gn], false)?;
                if order[nx as usize] == usize::MAX {
                    order[nx as usize] = seen;
                    seen += 1;
                    let mut w = spelled[e as usize].clone();
                    w.push(gn);
                    spelled[nx as usize] = w;
                    queue.push_back(nx);
                }
            }
        }
    }
    let mut elems: Vec<u32> = (0..total as u32).filter(|&e| en.parent[e as usize] == e).collect();
    if elems.len() != seen {
        return Err(Error::Internal("coequalizer: unreachable element".into()));
    }
    if elems.len() > bounds.max_morphisms {
        return Err(Error::size("coequalizer morphisms", bounds.max_morphisms));
    }
    if n_classes > bounds.max_objects {
        return Err(Error::size("coequalizer objects", bounds.max_objects));
    }
    let ident_elem: Vec<u32> = (0..n_classes as u32).map(|c| en.find(c)).collect();
    elems.sort_by_key(|&e| {
        let (s, t) = (en.src[e as usize], en.tgt[e as usize]);
        (s, t, ident_elem[s] != e, order[e as usize])
    });
    let mut index = vec![MorId(u32::MAX); total];
    for (i, &e) in elems.iter().enumerate() {
        index[e as usize] = MorId(i as u32);
    }
    let edges: Vec<(ObjId, ObjId)> = elems
        .iter()
        .map(|&e| (ObjId(en.src[e as usize] as u32), ObjId(en.tgt[e as usize] as u32)))
        .collect();
    let ident = ident_elem.iter().map(|&e| index[e as usize]).collect();
    let mut failure = None;
    let q = FinCat::from_fn(n_classes, edges, ident, |gm, fm| {
        let (ge, fe) = (elems[gm.idx()], elems[fm.idx()]);
        match en.trace(fe, &spelled[ge as usize], false) {
            Ok(x) => index[x as usize],
            Err(e) => {
                failure = Some(e);
                MorId(0)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let q = Arc::new(q);
    let obj_map = (0..n).map(|x| ObjId(class[x] as u32)).collect();
    let mut mor_map = Vec::with_capacity(b.n_morphisms());
    for m in b.morphisms() {
        let start = en.find(class[b.src(m).idx()] as u32);
        let e = en.trace(start, &word(m), false)?;
        mor_map.push(index[e as usize]);
    }
    let quotient = Functor::new_unchecked(b.clone(), q.clone(), obj_map, mor_map);
    Ok((q, quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::coproduct;
    use crate::fincat::Constant;
    use crate::functor::ConstFunctor;

    #[test]
    fn span_from_two_arrows() {
        let two = Arc::new(FinCat::constant(Constant::Two));
        let sum = coproduct(&two, &two);
        let s = Functor::constant(ConstFunctor::S);
        let f = sum.left.after(&s).unwrap();
        let g = sum.right.after(&s).unwrap();
        let (q, quot) = coequalizer(&f, &g, Bounds::default()).unwrap();
        assert_eq!((q.n_objects(), q.n_morphisms()), (3, 5));
        assert!(q.validate().is_empty());
        assert!(quot.validate().is_empty());
        assert_eq!(quot.after(&f).unwrap(), quot.after(&g).unwrap());
    }

    #[test]
    fn loop_diverges() {
        let s = Functor::constant(ConstFunctor::S);
        let t = Functor::constant(ConstFunctor::T);
        let r = coequalizer(&s, &t, Bounds::default());
        assert!(matches!(r, Err(Error::SizeBound { .. })));
    }

    #[test]
    fn equal_maps_give_target() {
        let c = Arc::new(FinCat::chain(4));
        let f = Functor::determine_object(&c, ObjId(2)).unwrap();
        let (q, quot) = coequalizer(&f, &f, Bounds::default()).unwrap();
        assert_eq!(*q, *c);
        assert!(quot.is_isomorphism());
    }

    #[test]
    fn gluing_chains_end_to_start() {
        // 3-chain and 2-chain glued along the last and first objects
        let a = Arc::new(FinCat::chain(3));
        let b = Arc::new(FinCat::chain(2));
        let sum = coproduct(&a, &b);
        let f = sum.left.after(&Functor::determine_object(&a, ObjId(2)).unwrap()).unwrap();
        let g = sum.right.after(&Functor::determine_object(&b, ObjId(0)).unwrap()).unwrap();
        let (q, _) = coequalizer(&f, &g, Bounds::default()).unwrap();
        assert_eq!(*q, FinCat::chain(4));
    }

    #[test]
    fn collapsing_an_arrow_of_iso_two() {
        // identify f : 0 -> 1 with id: f and g both become identities
        let iso = Arc::new(FinCat::constant(Constant::IsoTwo));
        let two = Arc::new(FinCat::constant(Constant::Two));
        let pick_f = Functor::determine_morphism(&iso, MorId(1)).unwrap();
        let id0 = Functor::new(two.clone(), iso.clone(), vec![ObjId(0), ObjId(0)], vec![MorId(0); 3]).unwrap();
        let (q, _) = coequalizer(&pick_f, &id0, Bounds::default()).unwrap();
        assert_eq!(*q, FinCat::constant(Constant::One));
    }
}
