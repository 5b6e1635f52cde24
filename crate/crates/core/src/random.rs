//! Seeded generators of valid finite categories, for tests and experiments.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::{coproduct, product};
use crate::fincat::{FinCat, MorId, ObjId};

/// The cyclic group of order `n` as a one-object category.
pub fn cyclic_group(n: usize) -> FinCat {
    FinCat::from_fn(1, vec![(ObjId(0), ObjId(0)); n], vec![MorId(0)], |g, f| {
        MorId((g.0 + f.0) % n as u32)
    })
}

/// The monoid `{1, x, ..., x^k}` with `x^(k+1) = x^k`.
pub fn truncated_monoid(k: usize) -> FinCat {
    FinCat::from_fn(1, vec![(ObjId(0), ObjId(0)); k + 1], vec![MorId(0)], |g, f| {
        MorId((g.0 + f.0).min(k as u32))
    })
}

/// The free category on a directed acyclic graph given by `edges` with
/// `src < tgt`. Morphisms are paths.
pub fn path_category(n: usize, edges: &[(usize, usize)]) -> FinCat {
    // paths as edge lists, identities first per object
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|o| (o, o, vec![])).collect();
    let mut frontier: Vec<usize> = (0..n).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &p in &frontier {
            let (s, t, ref w) = paths[p].clone();
            for (e, &(a, b)) in edges.iter().enumerate() {
                if a == t {
                    let mut w2 = w.clone();
                    w2.push(e);
                    next.push(paths.len());
                    paths.push((s, b, w2));
                }
            }
        }
        frontier = next;
    }
    let index: std::collections::HashMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.2.is_empty())
        .map(|(i, p)| (p.2.clone(), i))
        .collect();
    let edges_out = paths.iter().map(|p| (ObjId(p.0 as u32), ObjId(p.1 as u32))).collect();
    let ident = (0..n as u32).map(MorId).collect();
    FinCat::from_fn(n, edges_out, ident, |g, f| {
        let (pg, pf) = (&paths[g.idx()], &paths[f.idx()]);
        if pg.2.is_empty() {
            return f;
        }
        if pf.2.is_empty() {
            return g;
        }
        let mut w = pf.2.clone();
        w.extend(&pg.2);
        MorId(index[&w] as u32)
    })
}

/// A random valid category with at most `max_morphisms` morphisms.
pub fn random_category<R: Rng>(rng: &mut R, max_morphisms: usize) -> FinCat {
    loop {
        let c = attempt(rng, max_morphisms, 2);
        if c.n_morphisms() <= max_morphisms {
            return c;
        }
    }
}

fn attempt<R: Rng>(rng: &mut R, budget: usize, depth: usize) -> FinCat {
    let kind = if depth == 0 { rng.gen_range(0..4) } else { rng.gen_range(0..7) };
    match kind {
        0 => {
            let n = rng.gen_range(1..=4);
            let p: f64 = rng.gen_range(0.2..0.8);
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = i == j || rng.gen_bool(p);
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][k] && rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            FinCat::preorder(n, |i, j| rel[i][j])
        }
        1 => {
            let n = rng.gen_range(1..=4);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for _ in 0..rng.gen_range(0..=2) {
                        if rng.gen_bool(0.4) {
                            edges.push((a, b));
                        }
                    }
                }
            }
            path_category(n, &edges)
        }
        2 => cyclic_group(rng.gen_range(1..=4)),
        3 => truncated_monoid(rng.gen_range(1..=4)),
        4 => {
            let a = Arc::new(attempt(rng, budget, depth - 1));
            let b = Arc::new(attempt(rng, budget, depth - 1));
            (*coproduct(&a, &b).category).clone()
        }
        5 => {
            let a = Arc::new(attempt(rng, budget, depth - 1));
            let b = Arc::new(attempt(rng, budget, depth - 1));
            if a.n_morphisms() * b.n_morphisms() > budget {
                return (*a).clone();
            }
            (*product(&a, &b).category).clone()
        }
        _ => attempt(rng, budget, depth - 1).opposite(),
    }
}

/// A copy of `c` with objects and morphisms permuted at random.
pub fn shuffle<R: Rng>(c: &FinCat, rng: &mut R) -> FinCat {
    let mut op: Vec<ObjId> = c.objects().collect();
    let mut mp: Vec<MorId> = c.morphisms().collect();
    op.shuffle(rng);
    mp.shuffle(rng);
    c.relabel(&op, &mp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_categories_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let c = random_category(&mut rng, 20);
            assert!(c.validate().is_empty(), "{c:?}");
            let s = shuffle(&c, &mut rng);
            assert!(s.validate().is_empty());
        }
    }

    #[test]
    fn path_category_counts() {
        // 0 -> 1 -> 2 plus a direct 0 -> 2: identities, three edges, one composite
        let c = path_category(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(c.n_morphisms(), 7);
        assert!(c.validate().is_empty());
        assert!(cyclic_group(4).validate().is_empty());
        assert!(truncated_monoid(3).validate().is_empty());
    }
}
