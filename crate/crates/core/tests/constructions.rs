mod common;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{arc, brute_isomorphic, brute_product, check_universal, compose_maps, is_iso, random_functor, textbook_comma, zoo};
use sammy::constructions::{comma, coproduct, kan_extension, skeleton, Bounds, Side};
use sammy::iso::isomorphic;
use sammy::lang::{run, stdlib, Env, Limits};
use sammy::random::random_category;
use sammy::{Constant, Error, FinCat, Functor, MorId, ObjId, Value};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(r: &mut ChaCha8Rng, max_morphisms: usize) -> Arc<FinCat> {
    loop {
        let c = random_category(r, max_morphisms);
        if c.n_objects() <= 3 {
            return arc(c);
        }
    }
}

#[test]
fn kan_extensions_are_universal() {
    let mut r = rng(21);
    let mut ok = [0usize; 2];
    let mut competitors = 0;
    let mut attempts = 0;
    while ok.iter().sum::<usize>() < 30 && attempts < 400 {
        attempts += 1;
        let z = zoo();
        let pick = |r: &mut ChaCha8Rng, k: usize| z[r.gen_range(0..k)].clone();
        let (a, b, c) = (pick(&mut r, 4), pick(&mut r, z.len()), pick(&mut r, z.len()));
        let (Some(g), Some(f)) = (random_functor(&mut r, &a, &b), random_functor(&mut r, &a, &c)) else { continue };
        for (i, side) in [Side::Right, Side::Left].into_iter().enumerate() {
            if let Some(n) = check_universal(side, &g, &f) {
                ok[i] += 1;
                competitors += n;
            }
        }
    }
    assert!(ok[0] >= 10 && ok[1] >= 10, "{ok:?}");
    assert!(competitors >= 100, "{competitors}");
}

#[test]
fn products_via_right_extension_along_the_codiagonal() {
    let one = arc(FinCat::constant(Constant::One));
    let sum = coproduct(&one, &one);
    let bang = Functor::to_terminal(&sum.category, &one);
    let mut cats = vec![
        arc(FinCat::chain(3)),
        arc(FinCat::chain(4)),
        arc(FinCat::preorder(4, |i, j| i == j || i == 0 || j == 3)),
        arc(FinCat::preorder(4, |i, j| i & j == i)),
        arc(FinCat::codiscrete(2)),
    ];
    let mut r = rng(4);
    for _ in 0..12 {
        cats.push(arc(random_category(&mut r, 8)));
    }
    let (mut found, mut absent) = (0, 0);
    for c in &cats {
        for x in c.objects() {
            for y in c.objects() {
                let f = Functor::new(sum.category.clone(), c.clone(), vec![x, y], vec![c.identity(x), c.identity(y)])
                    .unwrap();
                let kan = kan_extension(Side::Right, &bang, &f);
                match brute_product(c, x, y) {
                    Some((p, p1, p2)) => {
                        let kr = kan.expect("products exist");
                        let q = kr.extension.on_obj(ObjId(0));
                        let (a1, a2) = (kr.unit.at(ObjId(0)), kr.unit.at(ObjId(1)));
                        let mediating: Vec<MorId> = c
                            .hom(p, q)
                            .iter()
                            .copied()
                            .filter(|&u| is_iso(c, u) && c.compose(a1, u) == Some(p1) && c.compose(a2, u) == Some(p2))
                            .collect();
                        assert_eq!(mediating.len(), 1);
                        found += 1;
                    }
                    None => {
                        assert!(matches!(kan, Err(Error::NoUniversal(_))), "{kan:?}");
                        absent += 1;
                    }
                }
            }
        }
    }
    assert!(found >= 10, "{found} products");
    assert!(absent > 0);
}

#[test]
fn comma_matches_the_definition() {
    let mut r = rng(31);
    let mut done = 0;
    while done < 15 {
        let (a, b, c) = (small(&mut r, 4), small(&mut r, 4), small(&mut r, 5));
        let (Some(l), Some(rr)) = (random_functor(&mut r, &a, &c), random_functor(&mut r, &b, &c)) else { continue };
        let want = textbook_comma(&l, &rr);
        let got = comma(&l, &rr, Bounds::default()).unwrap();
        assert!(isomorphic(&got.category, &arc(want.clone())).is_some());
        let env: Env = [("L".to_string(), Value::Functor(l)), ("R".to_string(), Value::Functor(rr))].into();
        let via_macro = run(&stdlib::macro_program("comma").unwrap(), &env, Limits::default()).unwrap();
        assert!(isomorphic(via_macro.as_category().unwrap(), &arc(want)).is_some());
        done += 1;
    }
}

#[test]
fn span_macro_builds_the_span() {
    let v = run(&stdlib::macro_program("span_category").unwrap(), &Env::new(), Limits::default()).unwrap();
    let span = FinCat::preorder(3, |i, j| i == j || i == 0);
    assert!(brute_isomorphic(v.as_category().unwrap(), &span));
}

#[test]
fn skeleton_of_iso_two_is_one() {
    let iso = arc(FinCat::constant(Constant::IsoTwo));
    assert_eq!(*skeleton(&iso).category, FinCat::constant(Constant::One));
    let env: Env = [("C".to_string(), Value::Category(iso))].into();
    let v = run(&stdlib::macro_program("skeleton").unwrap(), &env, Limits::default()).unwrap();
    assert!(brute_isomorphic(v.as_category().unwrap(), &FinCat::constant(Constant::One)));
}

#[test]
fn omega_exceeds_the_size_bound() {
    let e = run(&stdlib::macro_program("omega").unwrap(), &Env::new(), Limits::default()).unwrap_err();
    match e {
        Error::SizeBound { what, .. } => assert!(what.contains("Coeq"), "{what}"),
        e => panic!("{e}"),
    }
}

#[test]
fn random_functors_compose() {
    let mut r = rng(2);
    for _ in 0..20 {
        let (a, b, c) = (small(&mut r, 4), small(&mut r, 4), small(&mut r, 4));
        let (Some(f), Some(g)) = (random_functor(&mut r, &a, &b), random_functor(&mut r, &b, &c)) else { continue };
        let gf = g.after(&f).unwrap();
        assert_eq!(gf, compose_maps(&g, &f));
        assert!(gf.validate().is_empty());
    }
}

#[test]
fn iso_two_from_coequalizers_does_not_close() {
    let e = run(&stdlib::macro_program("iso_two_attempt").unwrap(), &Env::new(), Limits::default()).unwrap_err();
    assert!(matches!(e, Error::SizeBound { .. }), "{e}");
}
