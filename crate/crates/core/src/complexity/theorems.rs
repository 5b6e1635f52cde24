//! Measured constants for the complexity inequalities and the equivalence
//! invariance experiment.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{kan_extension, product, Side};
use crate::error::{Error, Result};
use crate::fincat::{Constant, FinCat, MorId};
use crate::functor::{ConstFunctor, Functor, NatTrans};
use crate::iso::{equivalent, isomorphic};
use crate::lang::{parse, run, stdlib, Env, Limits};
use crate::value::Value;

use super::search::{k_search, k_search_all, SearchConfig};
use super::ComplexityReport;

const PAIR: &str = "Input C : category
Input D : category
p = Bang(C, One)
q = Bang(D, One)
P, l, r = Pullback(p, q)
Return P
";

const DOUBLE: &str = "Input C : category
p = Bang(C, One)
P, l, r = Pullback(p, p)
Return P
";

const TARGET: &str = "Input F : functor
B = Target(F)
Return B
";

const COMPOS: &str = "Input A : nat_trans
Input G : nat_trans
B = Vcomp(G, A)
Return B
";

const KAN: &str = "Input F : functor
Input G : functor
R, a = KanExL(G, F)
Return a
";

/// Lengths of the macros that realize each inequality.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MacroConstants {
    pub c_pair: usize,
    pub c_double: usize,
    pub c_target: usize,
    pub c_compos: usize,
    pub c_kan: usize,
}

impl MacroConstants {
    pub fn measure() -> MacroConstants {
        let len = |s: &str| parse(s).expect("built-in macro parses").length();
        MacroConstants {
            c_pair: len(PAIR),
            c_double: len(DOUBLE),
            c_target: len(TARGET),
            c_compos: len(COMPOS),
            c_kan: len(KAN),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Bounds on one K value: `lo <= K <= hi` (`hi` absent when not found).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bound {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl Bound {
    fn of(r: &Result<ComplexityReport>) -> Bound {
        match r {
            Ok(rep) => Bound { lo: if rep.exact { rep.k.unwrap() } else { rep.lower_bound }, hi: rep.k },
            Err(Error::BudgetExhausted(rep)) => Bound { lo: rep.lower_bound, hi: None },
            Err(_) => Bound { lo: 0, hi: None },
        }
    }

    fn exact(&self) -> Option<usize> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }

    fn text(&self) -> String {
        match (self.exact(), self.hi) {
            (Some(k), _) => k.to_string(),
            (None, Some(h)) => format!("{}..{h}", self.lo),
            (None, None) => format!(">={}", self.lo),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremRow {
    pub theorem: String,
    pub instance: String,
    pub lhs: Bound,
    pub rhs: Vec<Bound>,
    pub constant: usize,
    /// Whether running the macro on the instance gave the expected value.
    pub macro_ok: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremTable {
    pub constants: MacroConstants,
    pub rows: Vec<TheoremRow>,
}

impl TheoremTable {
    pub fn to_text(&self) -> String {
        let c = &self.constants;
        let mut out = format!(
            "c_pair={} c_double={} c_target={} c_compos={} c_kan={}\n",
            c.c_pair, c.c_double, c.c_target, c.c_compos, c.c_kan
        );
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                let rhs: Vec<String> = r.rhs.iter().map(|b| b.text()).collect();
                [
                    r.theorem.clone(),
                    r.instance.clone(),
                    r.lhs.text(),
                    format!("{} + {}", rhs.join(" + "), r.constant),
                    if r.macro_ok { "ok".into() } else { "wrong".into() },
                    r.verdict.name().into(),
                ]
            })
            .collect();
        let head = ["theorem", "instance", "lhs", "rhs", "macro", "verdict"].map(String::from);
        let mut w = [0usize; 6];
        for row in std::iter::once(&head).chain(&cells) {
            for (i, x) in row.iter().enumerate() {
                w[i] = w[i].max(x.len());
            }
        }
        for row in std::iter::once(&head).chain(&cells) {
            let line: Vec<String> = row.iter().enumerate().map(|(i, x)| format!("{x:<width$}", width = w[i])).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

fn cat(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn k(v: &Value, given: &[(&str, &Value)], cfg: &SearchConfig) -> Bound {
    let g: Vec<(String, Value)> = given.iter().map(|(n, v)| (n.to_string(), (*v).clone())).collect();
    Bound::of(&k_search(v, &g, cfg))
}

fn verdict(lhs: Bound, rhs: &[Bound], c: usize, macro_ok: bool) -> Verdict {
    if !macro_ok {
        return Verdict::Fails;
    }
    let lo: usize = rhs.iter().map(|b| b.lo).sum::<usize>() + c;
    let hi: Option<usize> = rhs.iter().map(|b| b.hi).sum::<Option<usize>>().map(|h| h + c);
    match (lhs.hi, hi) {
        (Some(l), Some(r)) if l <= r && lhs.exact().is_some() && rhs.iter().all(|b| b.exact().is_some()) => {
            Verdict::Holds
        }
        (Some(l), _) if l <= lo => Verdict::Holds,
        _ if hi.is_some_and(|r| lhs.lo > r) => Verdict::Fails,
        _ => Verdict::Inconclusive,
    }
}

fn run_macro(text: &str, inputs: &[(&str, Value)]) -> Result<Value> {
    let p = parse(text)?;
    let env: Env = inputs.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
    run(&p, &env, Limits::default())
}

/// Categories for the pair, empty-factor and double rows, and the ordered
/// pairs (indices into `categories`) used for the pair rows.
#[derive(Clone, Debug)]
pub struct Suite {
    pub categories: Vec<(String, Arc<FinCat>)>,
    pub pairs: Vec<(usize, usize)>,
}

impl Default for Suite {
    fn default() -> Self {
        Suite { categories: named(), pairs: vec![(1, 1), (0, 1), (1, 2), (3, 0)] }
    }
}

fn named() -> Vec<(String, Arc<FinCat>)> {
    vec![
        ("One".into(), cat(FinCat::constant(Constant::One))),
        ("Two".into(), cat(FinCat::constant(Constant::Two))),
        ("IsoTwo".into(), cat(FinCat::constant(Constant::IsoTwo))),
        ("Discrete2".into(), cat(FinCat::discrete(2))),
    ]
}

/// Runs every inequality. The functor, composition and Kan rows use fixed
/// instances over `Two`.
pub fn theorem_constants(suite: &Suite, cfg: &SearchConfig) -> TheoremTable {
    let c = MacroConstants::measure();
    let mut rows = Vec::new();
    let cats = &suite.categories;
    let zero = cat(FinCat::constant(Constant::Zero));

    for &(i, j) in &suite.pairs {
        let (cn, cc) = &cats[i];
        let (dn, dc) = &cats[j];
        let (cv, dv) = (Value::Category(cc.clone()), Value::Category(dc.clone()));
        let prod = product(cc, dc).category;
        let macro_ok = run_macro(PAIR, &[("C", cv.clone()), ("D", dv.clone())])
            .ok()
            .and_then(|v| v.as_category().ok().map(|r| isomorphic(r, &prod).is_some()))
            .unwrap_or(false);
        let lhs = k(&Value::Category(prod), &[], cfg);
        let rhs = vec![k(&cv, &[], cfg), k(&dv, &[("C", &cv)], cfg)];
        rows.push(TheoremRow {
            theorem: "pair".into(),
            instance: format!("C={cn}, D={dn}"),
            verdict: verdict(lhs, &rhs, c.c_pair, macro_ok),
            lhs,
            rhs,
            constant: c.c_pair,
            macro_ok,
        });
    }

    // the product with the empty category is empty whatever D is
    let k_zero = k(&Value::Category(zero.clone()), &[], cfg);
    for (dn, dc) in cats {
        let prod = product(&zero, dc).category;
        let lhs = k(&Value::Category(prod.clone()), &[], cfg);
        let holds = lhs.exact().is_some() && lhs.exact() == k_zero.exact();
        rows.push(TheoremRow {
            theorem: "pair, empty factor".into(),
            instance: format!("C=Zero, D={dn}"),
            lhs,
            rhs: vec![k_zero],
            constant: 0,
            macro_ok: prod.n_objects() == 0,
            verdict: if holds { Verdict::Holds } else { Verdict::Inconclusive },
        });
    }

    for (cn, cc) in cats {
        let cv = Value::Category(cc.clone());
        let prod = product(cc, cc).category;
        let macro_ok = run_macro(DOUBLE, &[("C", cv.clone())])
            .ok()
            .and_then(|v| v.as_category().ok().map(|r| isomorphic(r, &prod).is_some()))
            .unwrap_or(false);
        let lhs = k(&Value::Category(prod), &[], cfg);
        let rhs = vec![k(&cv, &[], cfg)];
        rows.push(TheoremRow {
            theorem: "double".into(),
            instance: format!("C={cn}"),
            verdict: verdict(lhs, &rhs, c.c_double, macro_ok),
            lhs,
            rhs,
            constant: c.c_double,
            macro_ok,
        });
    }

    let two = cat(FinCat::constant(Constant::Two));
    let one = cat(FinCat::constant(Constant::One));
    let functors = [
        ("s", Functor::constant(ConstFunctor::S)),
        ("t", Functor::constant(ConstFunctor::T)),
        ("Two->One", Functor::to_terminal(&two, &one)),
        ("Id(Two)", Functor::identity(&two)),
    ];
    for (name, f) in &functors {
        let fv = Value::Functor(f.clone());
        let b = Value::Category(f.cod().clone());
        let macro_ok = run_macro(TARGET, &[("F", fv.clone())]).map(|v| v == b).unwrap_or(false);
        let lhs = k(&b, &[], cfg);
        let rhs = vec![k(&fv, &[], cfg)];
        rows.push(TheoremRow {
            theorem: "target".into(),
            instance: format!("F={name}"),
            verdict: verdict(lhs, &rhs, c.c_target, macro_ok),
            lhs,
            rhs,
            constant: c.c_target,
            macro_ok,
        });
    }

    let (s, t) = (Functor::constant(ConstFunctor::S), Functor::constant(ConstFunctor::T));
    let u = NatTrans::new(s.clone(), t.clone(), vec![MorId(1)]).expect("the arrow of Two");
    let (id_s, id_t) = (NatTrans::identity(&s), NatTrans::identity(&t));
    let triangles = [("u then id", &u, &id_t), ("id then u", &id_s, &u), ("id then id", &id_s, &id_s)];
    for (name, alpha, gamma) in triangles {
        let beta = gamma.vcomp(alpha).expect("composable");
        let (av, gv) = (Value::NatTrans(alpha.clone()), Value::NatTrans(gamma.clone()));
        let macro_ok = run_macro(COMPOS, &[("A", av.clone()), ("G", gv.clone())])
            .map(|v| v == Value::NatTrans(beta.clone()))
            .unwrap_or(false);
        let lhs = k(&Value::NatTrans(beta), &[], cfg);
        let rhs = vec![k(&av, &[], cfg), k(&gv, &[("A", &av)], cfg)];
        rows.push(TheoremRow {
            theorem: "compos".into(),
            instance: name.into(),
            verdict: verdict(lhs, &rhs, c.c_compos, macro_ok),
            lhs,
            rhs,
            constant: c.c_compos,
            macro_ok,
        });
    }

    let kans = [
        ("G=Two->One, F=Id(Two)", Functor::to_terminal(&two, &one), Functor::identity(&two)),
        ("G=Id(Two), F=Id(Two)", Functor::identity(&two), Functor::identity(&two)),
        ("G=s, F=t", s.clone(), t.clone()),
    ];
    for (name, g, f) in kans {
        let Ok(kr) = kan_extension(Side::Left, &g, &f) else { continue };
        let (fv, gv) = (Value::Functor(f.clone()), Value::Functor(g.clone()));
        let unit = Value::NatTrans(kr.unit.clone());
        let macro_ok = run_macro(KAN, &[("F", fv.clone()), ("G", gv.clone())]).map(|v| v == unit).unwrap_or(false);
        let pair = [Value::Functor(kr.extension.clone()), unit];
        let lhs = Bound::of(&k_search_all(&pair, &[], cfg));
        let rhs = vec![k(&fv, &[], cfg), k(&gv, &[("F", &fv)], cfg)];
        rows.push(TheoremRow {
            theorem: "kan".into(),
            instance: name.into(),
            verdict: verdict(lhs, &rhs, c.c_kan, macro_ok),
            lhs,
            rhs,
            constant: c.c_kan,
            macro_ok,
        });
    }
    TheoremTable { constants: c, rows }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub members: Vec<String>,
    pub k: Vec<Bound>,
    /// Largest `|K(a) - K(b)|` over the class, when every K is exact.
    pub spread: Option<usize>,
    /// Largest `K(b | a)` over ordered pairs of distinct members.
    pub conversion: Option<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    /// Length of the skeleton macro.
    pub skeleton_macro: usize,
    pub classes: Vec<ClassRow>,
}

impl EquivalenceReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("skeleton macro length {}\n", self.skeleton_macro);
        for c in &self.classes {
            let ks: Vec<String> = c.k.iter().map(|b| b.text()).collect();
            let opt = |x: Option<usize>| x.map_or("?".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "{{{}}}  K=[{}]  spread={}  conversion={}  {}",
                c.members.join(", "),
                ks.join(", "),
                opt(c.spread),
                opt(c.conversion),
                c.verdict.name()
            );
        }
        out
    }
}

/// The default pool: several equivalence classes with two or more members.
pub fn default_pool() -> Vec<(String, Arc<FinCat>)> {
    let mut v = named();
    v.push(("Zero".into(), cat(FinCat::constant(Constant::Zero))));
    v.push(("Chain3".into(), cat(FinCat::chain(3))));
    let iso_one = crate::constructions::coproduct(&cat(FinCat::constant(Constant::IsoTwo)), &cat(FinCat::constant(Constant::One)));
    v.push(("IsoTwo+One".into(), iso_one.category));
    let two_iso = product(&cat(FinCat::constant(Constant::Two)), &cat(FinCat::constant(Constant::IsoTwo)));
    v.push(("Two*IsoTwo".into(), two_iso.category));
    v
}

/// Partitions `pool` by equivalence and compares K within each class.
pub fn equivalence_experiment(pool: &[(String, Arc<FinCat>)], cfg: &SearchConfig) -> EquivalenceReport {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, (_, c)) in pool.iter().enumerate() {
        match classes.iter_mut().find(|cl| equivalent(&pool[cl[0]].1, c)) {
            Some(cl) => cl.push(i),
            None => classes.push(vec![i]),
        }
    }
    let rows = classes
        .into_iter()
        .map(|cl| {
            let vals: Vec<Value> = cl.iter().map(|&i| Value::Category(pool[i].1.clone())).collect();
            let ks: Vec<Bound> = vals.iter().map(|v| k(v, &[], cfg)).collect();
            let exact: Option<Vec<usize>> = ks.iter().map(|b| b.exact()).collect();
            let spread = exact.as_ref().map(|e| e.iter().max().unwrap() - e.iter().min().unwrap());
            let mut conv: Option<usize> = Some(0);
            for (a, av) in vals.iter().enumerate() {
                for (b, bv) in vals.iter().enumerate() {
                    if a != b {
                        let r = k(bv, &[("A", av)], cfg).exact();
                        conv = conv.zip(r).map(|(x, y)| x.max(y));
                    }
                }
            }
            let verdict = match (spread, conv) {
                (Some(s), Some(c)) if s <= c => Verdict::Holds,
                (Some(_), Some(_)) => Verdict::Fails,
                _ => Verdict::Inconclusive,
            };
            ClassRow {
                members: cl.iter().map(|&i| pool[i].0.clone()).collect(),
                k: ks,
                spread,
                conversion: conv,
                verdict,
            }
        })
        .collect();
    EquivalenceReport { skeleton_macro: stdlib::macro_program("skeleton").map(|p| p.length()).unwrap_or(0), classes: rows }
}
