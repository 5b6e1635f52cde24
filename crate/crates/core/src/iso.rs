//! Isomorphism, canonical forms, equivalence and automorphisms.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::constructions::skeleton;
use crate::enumerate::FunctorSearch;
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::Functor;

/// An isomorphism `a -> b`, if there is one.
pub fn isomorphic(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<Functor> {
    if a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms() {
        return None;
    }
    let mut found = None;
    FunctorSearch::new(a, b, true).run(|o, m| {
        found = Some(Functor::new_unchecked(a.clone(), b.clone(), o.to_vec(), m.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// Number of automorphisms.
pub fn automorphisms(c: &FinCat) -> u64 {
    let mut n = 0u64;
    FunctorSearch::new(c, c, true).run(|_, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// `log2 |Aut(c)|`.
pub fn entropy(c: &FinCat) -> f64 {
    (automorphisms(c) as f64).log2()
}

/// True when the skeletons are isomorphic.
pub fn equivalent(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    canonical(&skeleton(a).category).table == canonical(&skeleton(b).category).table
}

/// A representative of the isomorphism class and the relabeling that
/// produces it: `table == c.relabel(&obj_perm, &mor_perm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub table: FinCat,
    pub obj_perm: Vec<ObjId>,
    pub mor_perm: Vec<MorId>,
}

/// Flat encoding of a table; two tables are equal iff their keys are.
pub fn table_key(c: &FinCat) -> Vec<u32> {
    let mut k = vec![c.n_objects() as u32, c.n_morphisms() as u32];
    for m in c.morphisms() {
        k.push(c.src(m).0);
        k.push(c.tgt(m).0);
    }
    k.extend(c.identities().iter().map(|m| m.0));
    for (g, f, gf) in c.comp_entries() {
        k.extend([g.0, f.0, gf.0]);
    }
    k
}

/// Canonical form.
///
/// Connected components are canonized separately and laid out in order of
/// their encodings. Within a component, objects and morphisms are
/// partitioned by an equitable refinement (endpoints, identity flag and
/// composition roles) and the search individualizes the first non-singleton
/// cell, keeping the least encoding over all leaves.
pub fn canonical(c: &FinCat) -> CanonicalForm {
    let comps = components(c);
    let mut parts: Vec<(Vec<u32>, FinCat, Vec<ObjId>, Vec<MorId>, Vec<ObjId>, Vec<MorId>)> = comps
        .into_iter()
        .map(|(objs, mors)| {
            let sub = induced(c, &objs, &mors);
            let (op, mp) = canonical_connected(&sub);
            let t = sub.relabel(&op, &mp);
            (table_key(&t), t, objs, mors, op, mp)
        })
        .collect();
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    let mut obj_perm = vec![ObjId(0); c.n_objects()];
    let mut mor_perm = vec![MorId(0); c.n_morphisms()];
    let (mut oo, mut mo) = (0u32, 0u32);
    for (_, t, objs, mors, op, mp) in &parts {
        for (i, &o) in objs.iter().enumerate() {
            obj_perm[o.idx()] = ObjId(oo + op[i].0);
        }
        for (i, &m) in mors.iter().enumerate() {
            mor_perm[m.idx()] = MorId(mo + mp[i].0);
        }
        oo += t.n_objects() as u32;
        mo += t.n_morphisms() as u32;
    }
    CanonicalForm { table: c.relabel(&obj_perm, &mor_perm), obj_perm, mor_perm }
}

fn components(c: &FinCat) -> Vec<(Vec<ObjId>, Vec<MorId>)> {
    let n = c.n_objects();
    let mut uf: Vec<usize> = (0..n).collect();
    fn root(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for m in c.morphisms() {
        let (a, b) = (root(&mut uf, c.src(m).idx()), root(&mut uf, c.tgt(m).idx()));
        uf[a.max(b)] = a.min(b);
    }
    let mut out: Vec<(Vec<ObjId>, Vec<MorId>)> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for o in c.objects() {
        let r = root(&mut uf, o.idx());
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push((Vec::new(), Vec::new()));
        }
        out[slot[r]].0.push(o);
    }
    for m in c.morphisms() {
        let r = root(&mut uf, c.src(m).idx());
        out[slot[r]].1.push(m);
    }
    out
}

fn induced(c: &FinCat, objs: &[ObjId], mors: &[MorId]) -> FinCat {
    let mut lo = vec![0u32; c.n_objects()];
    for (i, o) in objs.iter().enumerate() {
        lo[o.idx()] = i as u32;
    }
    let mut lm = vec![0u32; c.n_morphisms()];
    for (i, m) in mors.iter().enumerate() {
        lm[m.idx()] = i as u32;
    }
    let edges = mors.iter().map(|&m| (ObjId(lo[c.src(m).idx()]), ObjId(lo[c.tgt(m).idx()]))).collect();
    let ident = objs.iter().map(|&o| MorId(lm[c.identity(o).idx()])).collect();
    FinCat::from_fn(objs.len(), edges, ident, |g, f| MorId(lm[c.comp(mors[g.idx()], mors[f.idx()]).idx()]))
}

struct Refiner<'a> {
    c: &'a FinCat,
    entries: Vec<(MorId, MorId, MorId)>,
    n_obj: usize,
}

impl Refiner<'_> {
    /// Refines `cell` (objects first, then morphisms) to an equitable
    /// partition. Cell numbers stay dense and isomorphism-invariant.
    fn refine(&self, cell: &mut Vec<u32>) {
        let c = self.c;
        let n_obj = self.n_obj;
        let mut n_cells = count(cell);
        loop {
            let mut sig: Vec<Vec<u32>> = cell.iter().map(|&x| vec![x]).collect();
            let mut extra: Vec<Vec<[u32; 3]>> = vec![Vec::new(); cell.len()];
            for m in c.morphisms() {
                let v = n_obj + m.idx();
                let (s, t) = (c.src(m).idx(), c.tgt(m).idx());
                extra[v].push([0, cell[s], cell[t]]);
                extra[s].push([1, cell[v], 0]);
                extra[t].push([2, cell[v], 0]);
            }
            for &(g, f, gf) in &self.entries {
                let (vg, vf, vgf) = (n_obj + g.idx(), n_obj + f.idx(), n_obj + gf.idx());
                extra[vg].push([3, cell[vf], cell[vgf]]);
                extra[vf].push([4, cell[vg], cell[vgf]]);
                extra[vgf].push([5, cell[vg], cell[vf]]);
            }
            for (v, mut e) in extra.into_iter().enumerate() {
                e.sort_unstable();
                sig[v].extend(e.into_iter().flatten());
            }
            let mut distinct: Vec<&Vec<u32>> = sig.iter().collect();
            distinct.sort();
            distinct.dedup();
            let new: Vec<u32> = sig
                .iter()
                .map(|s| distinct.binary_search(&s).unwrap() as u32)
                .collect();
            let k = distinct.len();
            *cell = new;
            if k == n_cells {
                return;
            }
            n_cells = k;
        }
    }
}

fn count(cell: &[u32]) -> usize {
    cell.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn canonical_connected(c: &FinCat) -> (Vec<ObjId>, Vec<MorId>) {
    let n_obj = c.n_objects();
    let r = Refiner { c, entries: c.comp_entries(), n_obj };
    let mut cell: Vec<u32> = (0..n_obj + c.n_morphisms())
        .map(|v| {
            if v < n_obj {
                0
            } else {
                1 + c.is_identity(MorId((v - n_obj) as u32)) as u32
            }
        })
        .collect();
    // keep the object/morphism split dense even when there are no objects
    if n_obj == 0 {
        return (vec![], vec![]);
    }
    r.refine(&mut cell);
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    search(&r, cell, &mut best);
    let labels = best.expect("at least one leaf").1;
    let obj_perm = labels[..n_obj].iter().map(|&l| ObjId(l)).collect();
    let mor_perm = labels[n_obj..].iter().map(|&l| MorId(l - n_obj as u32)).collect();
    (obj_perm, mor_perm)
}

fn search(r: &Refiner, cell: Vec<u32>, best: &mut Option<(Vec<u32>, Vec<u32>)>) {
    let n = cell.len();
    let k = count(&cell);
    if k == n {
        let n_obj = r.n_obj;
        let obj_perm: Vec<ObjId> = cell[..n_obj].iter().map(|&l| ObjId(l)).collect();
        let mor_perm: Vec<MorId> = cell[n_obj..].iter().map(|&l| MorId(l - n_obj as u32)).collect();
        let key = table_key(&r.c.relabel(&obj_perm, &mor_perm));
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            *best = Some((key, cell));
        }
        return;
    }
    let mut sizes = vec![0usize; k];
    for &x in &cell {
        sizes[x as usize] += 1;
    }
    let target = (0..k).find(|&i| sizes[i] > 1).unwrap() as u32;
    for v in 0..n {
        if cell[v] != target {
            continue;
        }
        let mut next: Vec<u32> = cell
            .iter()
            .enumerate()
            .map(|(x, &cx)| cx + (cx > target || (cx == target && x != v)) as u32)
            .collect();
        r.refine(&mut next);
        search(r, next, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Constant;

    #[test]
    fn small_examples() {
        let two = Arc::new(FinCat::constant(Constant::Two));
        let op = Arc::new(two.opposite());
        assert!(isomorphic(&two, &op).is_some());
        assert_eq!(canonical(&two).table, canonical(&op).table);
        let iso = Arc::new(FinCat::constant(Constant::IsoTwo));
        assert!(isomorphic(&two, &iso).is_none());
        assert!(equivalent(&iso, &Arc::new(FinCat::constant(Constant::One))));
        assert!(!equivalent(&two, &Arc::new(FinCat::constant(Constant::One))));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&FinCat::discrete(3)), 6);
        assert_eq!(automorphisms(&FinCat::constant(Constant::One)), 1);
        assert_eq!(automorphisms(&FinCat::constant(Constant::Two)), 1);
        assert_eq!(automorphisms(&FinCat::constant(Constant::IsoTwo)), 2);
        assert!((entropy(&FinCat::discrete(3)) - 6f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn canonical_relabeling_is_consistent() {
        let c = FinCat::chain(3);
        let cf = canonical(&c);
        assert_eq!(cf.table, c.relabel(&cf.obj_perm, &cf.mor_perm));
        assert!(cf.table.validate().is_empty());
        assert_eq!(canonical(&FinCat::constant(Constant::Zero)).table, FinCat::constant(Constant::Zero));
    }
}
