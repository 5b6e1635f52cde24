//! Brute-force oracles. They only use the raw table accessors, never the
//! library's enumerators or constructions.
#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sammy::constructions::{kan_extension, kan_induced, Side};
use sammy::{Constant, FinCat, Functor, MorId, NatTrans, ObjId};

pub fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

/// Every law checked directly on the listed composition entries.
pub fn lawful(c: &FinCat) -> bool {
    let n = c.n_morphisms();
    let entries = c.comp_entries();
    let table: std::collections::HashMap<(MorId, MorId), MorId> = entries.iter().map(|&(g, f, h)| ((g, f), h)).collect();
    let comp = |g: MorId, f: MorId| table.get(&(g, f)).copied();
    for o in c.objects() {
        let i = c.identity(o);
        if i.idx() >= n || c.src(i) != o || c.tgt(i) != o {
            return false;
        }
    }
    let ms: Vec<MorId> = c.morphisms().collect();
    for &g in &ms {
        for &f in &ms {
            let gf = comp(g, f);
            if c.src(g) != c.tgt(f) {
                if gf.is_some() {
                    return false;
                }
                continue;
            }
            match gf {
                Some(h) if c.src(h) == c.src(f) && c.tgt(h) == c.tgt(g) => {}
                _ => return false,
            }
        }
    }
    for &f in &ms {
        if comp(c.identity(c.tgt(f)), f) != Some(f) || comp(f, c.identity(c.src(f))) != Some(f) {
            return false;
        }
    }
    for &h in &ms {
        for &g in &ms {
            for &f in &ms {
                if c.src(h) == c.tgt(g) && c.src(g) == c.tgt(f) {
                    let l = comp(g, f).and_then(|gf| comp(h, gf));
                    let r = comp(h, g).and_then(|hg| comp(hg, f));
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn product_of<T: Clone>(choices: &[Vec<T>], mut visit: impl FnMut(&[T])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let pick: Vec<T> = idx.iter().zip(choices).map(|(&i, c)| c[i].clone()).collect();
        visit(&pick);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All functors `a -> b` as `(object map, morphism map)`: every object map,
/// every choice of images in the right hom-sets, then the laws.
pub fn functors(a: &FinCat, b: &FinCat) -> Vec<(Vec<ObjId>, Vec<MorId>)> {
    let mut out = Vec::new();
    let objs: Vec<ObjId> = b.objects().collect();
    let omaps = vec![objs; a.n_objects()];
    product_of(&omaps, |om| {
        let choices: Vec<Vec<MorId>> =
            a.morphisms().map(|m| b.hom(om[a.src(m).idx()], om[a.tgt(m).idx()]).to_vec()).collect();
        product_of(&choices, |mm| {
            let ids = a.objects().all(|o| mm[a.identity(o).idx()] == b.identity(om[o.idx()]));
            let comp = a.morphisms().all(|g| {
                a.morphisms().all(|f| match a.compose(g, f) {
                    Some(gf) => b.compose(mm[g.idx()], mm[f.idx()]) == Some(mm[gf.idx()]),
                    None => true,
                })
            });
            if ids && comp {
                out.push((om.to_vec(), mm.to_vec()));
            }
        });
    });
    out
}

/// Component families `F => G` satisfying every naturality square.
pub fn transformations(a: &FinCat, b: &FinCat, f: &(Vec<ObjId>, Vec<MorId>), g: &(Vec<ObjId>, Vec<MorId>)) -> Vec<Vec<MorId>> {
    let choices: Vec<Vec<MorId>> = a.objects().map(|o| b.hom(f.0[o.idx()], g.0[o.idx()]).to_vec()).collect();
    let mut out = Vec::new();
    product_of(&choices, |c| {
        let natural = a.morphisms().all(|m| {
            let (x, y) = (a.src(m), a.tgt(m));
            b.compose(g.1[m.idx()], c[x.idx()]) == b.compose(c[y.idx()], f.1[m.idx()])
        });
        if natural {
            out.push(c.to_vec());
        }
    });
    out
}

pub fn maps(f: &Functor) -> (Vec<ObjId>, Vec<MorId>) {
    (f.obj_map().to_vec(), f.mor_map().to_vec())
}

/// Number of functors and of natural transformations between them.
pub fn functor_category_size(a: &FinCat, b: &FinCat) -> (usize, usize) {
    let fs = functors(a, b);
    let mut n = 0;
    for f in &fs {
        for g in &fs {
            n += transformations(a, b, f, g).len();
        }
    }
    (fs.len(), n)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Automorphisms counted over all bijections of objects and morphisms.
pub fn automorphism_count(c: &FinCat) -> usize {
    let ops = permutations(c.n_objects());
    let mps = permutations(c.n_morphisms());
    let mut n = 0;
    for op in &ops {
        for mp in &mps {
            let ok = c.morphisms().all(|m| {
                let i = mp[m.idx()];
                c.src(MorId(i as u32)).idx() == op[c.src(m).idx()] && c.tgt(MorId(i as u32)).idx() == op[c.tgt(m).idx()]
            }) && c.objects().all(|o| mp[c.identity(o).idx()] == c.identity(ObjId(op[o.idx()] as u32)).idx())
                && c.morphisms().all(|g| {
                    c.morphisms().all(|f| match c.compose(g, f) {
                        Some(gf) => c.compose(MorId(mp[g.idx()] as u32), MorId(mp[f.idx()] as u32)) == Some(MorId(mp[gf.idx()] as u32)),
                        None => true,
                    })
                });
            if ok {
                n += 1;
            }
        }
    }
    n
}

/// Isomorphism by trying every bijection. Only for small tables.
pub fn brute_isomorphic(a: &FinCat, b: &FinCat) -> bool {
    if a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms() {
        return false;
    }
    functors(a, b).iter().any(|(o, m)| {
        let mut seen_o = vec![false; b.n_objects()];
        let mut seen_m = vec![false; b.n_morphisms()];
        o.iter().all(|x| !std::mem::replace(&mut seen_o[x.idx()], true))
            && m.iter().all(|x| !std::mem::replace(&mut seen_m[x.idx()], true))
    })
}

/// The product category built from pairs.
pub fn textbook_product(a: &FinCat, b: &FinCat) -> FinCat {
    let nb = b.n_objects();
    let mb = b.n_morphisms();
    let mut edges = Vec::new();
    for f in a.morphisms() {
        for g in b.morphisms() {
            edges.push((
                ObjId((a.src(f).idx() * nb + b.src(g).idx()) as u32),
                ObjId((a.tgt(f).idx() * nb + b.tgt(g).idx()) as u32),
            ));
        }
    }
    let ident = a
        .objects()
        .flat_map(|x| b.objects().map(move |y| (x, y)))
        .map(|(x, y)| MorId((a.identity(x).idx() * mb + b.identity(y).idx()) as u32))
        .collect();
    let mut entries = Vec::new();
    for (i, _) in edges.iter().enumerate() {
        for (j, _) in edges.iter().enumerate() {
            let (g1, g2) = (MorId((i / mb) as u32), MorId((i % mb) as u32));
            let (f1, f2) = (MorId((j / mb) as u32), MorId((j % mb) as u32));
            if let (Some(h1), Some(h2)) = (a.compose(g1, f1), b.compose(g2, f2)) {
                entries.push((MorId(i as u32), MorId(j as u32), MorId((h1.idx() * mb + h2.idx()) as u32)));
            }
        }
    }
    FinCat::from_parts(a.n_objects() * nb, edges, ident, &entries).expect("product is a category")
}

/// The comma category `(l ↓ r)` straight from the definition: objects are
/// triples `(x, y, h : L x -> R y)`, morphisms are commuting squares.
pub fn textbook_comma(l: &Functor, r: &Functor) -> FinCat {
    let (a, b, c) = (l.dom(), r.dom(), l.cod());
    let mut objs = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            for &h in c.hom(l.on_obj(x), r.on_obj(y)) {
                objs.push((x, y, h));
            }
        }
    }
    let mut mors: Vec<(usize, usize, MorId, MorId)> = Vec::new();
    for (i, &(x, y, h)) in objs.iter().enumerate() {
        for (j, &(x2, y2, h2)) in objs.iter().enumerate() {
            for &p in a.hom(x, x2) {
                for &q in b.hom(y, y2) {
                    if c.compose(r.on_mor(q), h) == c.compose(h2, l.on_mor(p)) {
                        mors.push((i, j, p, q));
                    }
                }
            }
        }
    }
    let edges = mors.iter().map(|m| (ObjId(m.0 as u32), ObjId(m.1 as u32))).collect();
    let ident = objs
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| {
            let k = mors
                .iter()
                .position(|m| m.0 == i && m.1 == i && m.2 == a.identity(x) && m.3 == b.identity(y))
                .unwrap();
            MorId(k as u32)
        })
        .collect();
    let mut entries = Vec::new();
    for (gi, g) in mors.iter().enumerate() {
        for (fi, f) in mors.iter().enumerate() {
            if f.1 == g.0 {
                let (p, q) = (a.compose(g.2, f.2).unwrap(), b.compose(g.3, f.3).unwrap());
                let k = mors.iter().position(|m| m.0 == f.0 && m.1 == g.1 && m.2 == p && m.3 == q).unwrap();
                entries.push((MorId(gi as u32), MorId(fi as u32), MorId(k as u32)));
            }
        }
    }
    FinCat::from_parts(objs.len(), edges, ident, &entries).expect("comma is a category")
}

/// Factorizations of `beta` through the universal 2-cell `alpha` of the
/// extension `r`, counted over every component family `gamma`.
pub fn factorizations(right: bool, g: &Functor, r: &Functor, alpha: &NatTrans, h: &Functor, beta: &NatTrans) -> usize {
    let (b, c) = (g.cod(), r.cod());
    // right: gamma : H => R with beta_a = alpha_a . gamma_{G a}
    // left:  gamma : R => H with beta_a = gamma_{G a} . alpha_a
    let (from, to) = if right { (maps(h), maps(r)) } else { (maps(r), maps(h)) };
    transformations(b, c, &from, &to)
        .iter()
        .filter(|gamma| {
            g.dom().objects().all(|x| {
                let gx = gamma[g.on_obj(x).idx()];
                let got = if right { c.compose(alpha.at(x), gx) } else { c.compose(gx, alpha.at(x)) };
                got == Some(beta.at(x))
            })
        })
        .count()
}

/// One random edit to the table: a composite, a missing composite, a
/// spurious composite or an identity.
pub fn mutate(c: &FinCat, r: &mut ChaCha8Rng) -> FinCat {
    let mut t = c.clone();
    let n = c.n_morphisms() as u32;
    let pick = |r: &mut ChaCha8Rng| MorId(r.gen_range(0..n));
    match r.gen_range(0..4) {
        0 => {
            let (g, f) = (pick(r), pick(r));
            t.set_comp_unchecked(g, f, Some(pick(r)));
        }
        1 => {
            let (g, f) = (pick(r), pick(r));
            t.set_comp_unchecked(g, f, None);
        }
        2 => {
            let o = ObjId(r.gen_range(0..c.n_objects() as u32));
            t.set_identity_unchecked(o, pick(r));
        }
        _ => {
            let (g, f) = (pick(r), pick(r));
            if c.compose(g, f).is_none() {
                t.set_comp_unchecked(g, f, Some(pick(r)));
            }
        }
    }
    t
}

/// Small categories with enough structure for interesting Kan problems.
pub fn zoo() -> Vec<Arc<FinCat>> {
    use sammy::random::{cyclic_group, truncated_monoid};
    vec![
        arc(FinCat::constant(Constant::One)),
        arc(FinCat::constant(Constant::Two)),
        arc(FinCat::discrete(2)),
        arc(FinCat::constant(Constant::IsoTwo)),
        arc(FinCat::chain(3)),
        arc(FinCat::preorder(3, |i, j| i == j || i == 0)),
        arc(FinCat::preorder(3, |i, j| i == j || j == 2)),
        arc(FinCat::preorder(4, |i, j| i & j == i)),
        arc(cyclic_group(2)),
        arc(truncated_monoid(2)),
    ]
}

pub fn random_functor(r: &mut ChaCha8Rng, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<Functor> {
    let all = functors(a, b);
    let (o, m) = all.choose(r)?.clone();
    Some(Functor::new(a.clone(), b.clone(), o, m).expect("oracle functor"))
}

pub fn compose_maps(h: &Functor, g: &Functor) -> Functor {
    let o = g.obj_map().iter().map(|&x| h.on_obj(x)).collect();
    let m = g.mor_map().iter().map(|&x| h.on_mor(x)).collect();
    Functor::new_unchecked(g.dom().clone(), h.cod().clone(), o, m)
}

/// Every competitor `(H, beta)` factors exactly once through the result, and
/// `kan_induced` returns that factorization.
pub fn check_universal(side: Side, g: &Functor, f: &Functor) -> Option<usize> {
    let kr = kan_extension(side, g, f).ok()?;
    let (b, c) = (g.cod(), f.cod());
    assert!(kr.extension.validate().is_empty() && kr.unit.validate().is_empty());
    let right = side == Side::Right;
    let mut seen = 0;
    for (ho, hm) in functors(b, c) {
        let h = Functor::new_unchecked(b.clone(), c.clone(), ho, hm);
        let hg = compose_maps(&h, g);
        let (from, to) = if right { (&hg, f) } else { (f, &hg) };
        for comps in transformations(g.dom(), c, &maps(from), &maps(to)) {
            let beta = NatTrans::new_unchecked(from.clone(), to.clone(), comps);
            assert_eq!(factorizations(right, g, &kr.extension, &kr.unit, &h, &beta), 1);
            let gamma = kan_induced(side, g, &kr, &h, &beta).expect("induced 2-cell");
            assert!(gamma.validate().is_empty());
            for x in g.dom().objects() {
                let gx = gamma.at(g.on_obj(x));
                let got = if right { c.compose(kr.unit.at(x), gx) } else { c.compose(gx, kr.unit.at(x)) };
                assert_eq!(got, Some(beta.at(x)));
            }
            seen += 1;
        }
    }
    Some(seen)
}

/// A product of `x` and `y` found by trying every span.
pub fn brute_product(c: &FinCat, x: ObjId, y: ObjId) -> Option<(ObjId, MorId, MorId)> {
    for p in c.objects() {
        for &p1 in c.hom(p, x) {
            for &p2 in c.hom(p, y) {
                let universal = c.objects().all(|z| {
                    c.hom(z, x).iter().all(|&f| {
                        c.hom(z, y).iter().all(|&g| {
                            c.hom(z, p)
                                .iter()
                                .filter(|&&u| c.compose(p1, u) == Some(f) && c.compose(p2, u) == Some(g))
                                .count()
                                == 1
                        })
                    })
                });
                if universal {
                    return Some((p, p1, p2));
                }
            }
        }
    }
    None
}

pub fn is_iso(c: &FinCat, u: MorId) -> bool {
    c.hom(c.tgt(u), c.src(u)).iter().any(|&v| {
        c.compose(v, u) == Some(c.identity(c.src(u))) && c.compose(u, v) == Some(c.identity(c.tgt(u)))
    })
}
