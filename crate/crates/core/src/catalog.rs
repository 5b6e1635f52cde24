//! Every small category up to isomorphism.
//!
//! Hom-set sizes are chosen per pair of objects, then composition tables are
//! filled by backtracking with associativity checked as soon as the three
//! composites involved are known. Labeled results are merged by canonical
//! form.

use std::collections::BTreeMap;

use crate::fincat::{FinCat, MorId, ObjId};
use crate::iso::{canonical, table_key};

/// One representative per isomorphism class of categories with at most
/// `max_objects` objects and at most `max_morphisms` morphisms (identities
/// included), ordered by object count, morphism count and canonical table.
pub fn small_categories(max_objects: usize, max_morphisms: usize) -> Vec<FinCat> {
    let mut seen: BTreeMap<Vec<u32>, FinCat> = BTreeMap::new();
    for n in 0..=max_objects.min(max_morphisms) {
        let cells = n * n;
        let mut dist = vec![0usize; cells];
        distributions(&mut dist, 0, max_morphisms - n, &mut |d| {
            if is_least_relabeling(n, d) {
                Filler::new(n, d).run(&mut |c| {
                    let t = canonical(&c).table;
                    seen.entry(table_key(&t)).or_insert(t);
                });
            }
        });
    }
    seen.into_values().collect()
}

fn distributions(d: &mut Vec<usize>, i: usize, left: usize, f: &mut impl FnMut(&[usize])) {
    if i == d.len() {
        f(d);
        return;
    }
    for k in 0..=left {
        d[i] = k;
        distributions(d, i + 1, left - k, f);
    }
    d[i] = 0;
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

/// Skips hom-size matrices that some object relabeling makes smaller.
fn is_least_relabeling(n: usize, d: &[usize]) -> bool {
    permutations(n).iter().all(|p| {
        let moved: Vec<usize> = (0..n * n).map(|c| d[p[c / n] * n + p[c % n]]).collect();
        d <= moved.as_slice()
    })
}

const NONE: u32 = u32::MAX;

struct Filler {
    n: usize,
    edges: Vec<(ObjId, ObjId)>,
    /// Morphisms `a -> b`, identity first when `a == b`.
    hom: Vec<Vec<u32>>,
    /// `comp[g * m + f]`, `NONE` while unknown or not composable.
    comp: Vec<u32>,
    /// Non-identity composable pairs in filling order.
    todo: Vec<(u32, u32)>,
}

impl Filler {
    fn new(n: usize, d: &[usize]) -> Filler {
        let mut edges: Vec<(ObjId, ObjId)> = (0..n).map(|i| (ObjId(i as u32), ObjId(i as u32))).collect();
        for (c, &k) in d.iter().enumerate() {
            for _ in 0..k {
                edges.push((ObjId((c / n) as u32), ObjId((c % n) as u32)));
            }
        }
        let m = edges.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            hom[a.idx() * n + b.idx()].push(i as u32);
        }
        let mut comp = vec![NONE; m * m];
        let mut todo = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if edges[g].0 != edges[f].1 {
                    continue;
                }
                if g < n {
                    comp[g * m + f] = f as u32;
                } else if f < n {
                    comp[g * m + f] = g as u32;
                } else {
                    todo.push((g as u32, f as u32));
                }
            }
        }
        Filler { n, edges, hom, comp, todo }
    }

    fn m(&self) -> usize {
        self.edges.len()
    }

    fn get(&self, g: u32, f: u32) -> u32 {
        self.comp[g as usize * self.m() + f as usize]
    }

    fn run(&mut self, emit: &mut impl FnMut(FinCat)) {
        self.fill(0, emit);
    }

    fn fill(&mut self, i: usize, emit: &mut impl FnMut(FinCat)) {
        if i == self.todo.len() {
            let m = self.m();
            let comp = &self.comp;
            let ident = (0..self.n as u32).map(MorId).collect();
            emit(FinCat::from_fn(self.n, self.edges.clone(), ident, |g, f| {
                MorId(comp[g.idx() * m + f.idx()])
            }));
            return;
        }
        let (g, f) = self.todo[i];
        let (a, b) = (self.edges[f as usize].0, self.edges[g as usize].1);
        let slot = g as usize * self.m() + f as usize;
        let choices = self.hom[a.idx() * self.n + b.idx()].clone();
        for h in choices {
            self.comp[slot] = h;
            if self.associative_around(g, f) {
                self.fill(i + 1, emit);
            }
        }
        self.comp[slot] = NONE;
    }

    /// Checks every triple that uses the pair `(g, f)` and whose composites
    /// are all known.
    fn associative_around(&self, g: u32, f: u32) -> bool {
        let m = self.m() as u32;
        let gf = self.get(g, f);
        for k in 0..m {
            // k . (g . f) == (k . g) . f
            if self.edges[k as usize].0 == self.edges[g as usize].1 {
                let (l, kg) = (self.get(k, gf), self.get(k, g));
                if l != NONE && kg != NONE {
                    let r = self.get(kg, f);
                    if r != NONE && r != l {
                        return false;
                    }
                }
            }
            // (g . f) . k == g . (f . k)
            if self.edges[k as usize].1 == self.edges[f as usize].0 {
                let (l, fk) = (self.get(gf, k), self.get(f, k));
                if l != NONE && fk != NONE {
                    let r = self.get(g, fk);
                    if r != NONE && r != l {
                        return false;
                    }
                }
            }
        }
        // g . (u . e) == (g . u) . e where f == u . e, and
        // (e . u) . f == e . (u . f) where g == e . u
        for u in 0..m {
            for e in 0..m {
                if self.get(u, e) == f {
                    let gu = self.get(g, u);
                    let r = if gu == NONE { NONE } else { self.get(gu, e) };
                    if r != NONE && r != gf {
                        return false;
                    }
                }
                if self.get(e, u) == g {
                    let uf = self.get(u, f);
                    let r = if uf == NONE { NONE } else { self.get(e, uf) };
                    if r != NONE && r != gf {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monoids(order: usize) -> usize {
        small_categories(1, order).iter().filter(|c| c.n_objects() == 1 && c.n_morphisms() == order).count()
    }

    #[test]
    fn monoid_counts() {
        assert_eq!([1, 2, 3, 4].map(monoids), [1, 2, 7, 35]);
    }

    #[test]
    fn every_result_is_lawful() {
        for c in small_categories(2, 4) {
            assert!(c.validate().is_empty());
        }
    }

    #[test]
    fn preorders_on_two_objects() {
        // thin categories with two objects: discrete, an arrow, an isomorphism
        let thin = small_categories(2, 4)
            .into_iter()
            .filter(|c| c.n_objects() == 2 && c.objects().all(|a| c.objects().all(|b| c.hom(a, b).len() <= 1)))
            .count();
        assert_eq!(thin, 3);
    }
}
