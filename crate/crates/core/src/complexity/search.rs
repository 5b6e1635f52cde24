//! Breadth-first search over straight-line programs.
//!
//! A state is the set of values a program has computed, paired with the
//! least program text reaching it. Level `d` holds the states reachable in
//! `d` statements. Constants are free arguments, so statements that only
//! load a constant are used to describe the constants and nothing else.
//!
//! `max_states` caps the number of states expanded over all levels. When a
//! level is cut short, only the least states (by program text) are kept,
//! and records found below the cut remain exact.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::Bounds;
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::functor::Functor;
use crate::iso::{canonical, table_key};
use crate::lang::ast::ALL_OPS;
use crate::lang::ops::{apply, constant};
use crate::lang::Op;
use crate::value::{Kind, Value};

use super::ComplexityReport;

/// Whether a category target is matched up to isomorphism or as an exact
/// table. Other values are always matched exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Iso,
    Eq,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Iso => "iso",
            Mode::Eq => "eq",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_len: usize,
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_len: 6, max_objects: 12, max_morphisms: 40, max_states: 200_000 }
    }
}

impl Budget {
    pub fn bounds(&self) -> Bounds {
        Bounds { max_objects: self.max_objects, max_morphisms: self.max_morphisms }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub mode: Mode,
    pub budget: Budget,
    /// Worker threads; 0 picks the number of cores.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { mode: Mode::Iso, budget: Budget::default(), workers: 0 }
    }
}

pub(crate) const SCOPE: &str =
    "exact over straight-line programs; an upper bound for programs with If/Goto";

type Id = u32;

const IDENT: u64 = 1 << 32;
const CHUNK: usize = 512;
const CONSTANTS: [Op; 6] = [Op::Zero, Op::One, Op::Two, Op::IsoTwo, Op::S, Op::T];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Call {
    op: Op,
    n: u8,
    args: [Id; 4],
}

impl Call {
    fn new(op: Op, a: &[Id]) -> Call {
        let mut args = [0; 4];
        args[..a.len()].copy_from_slice(a);
        Call { op, n: a.len() as u8, args }
    }

    fn args(&self) -> &[Id] {
        &self.args[..self.n as usize]
    }
}

/// Boundary data used to skip ill-typed calls before evaluating them.
/// `src`/`tgt` identify the functors a value promotes to; identity functors
/// are keyed as `IDENT | dom`.
#[derive(Clone, Copy, Debug)]
struct Info {
    kind: Kind,
    dom: Id,
    cod: Id,
    src: u64,
    tgt: u64,
}

#[derive(Clone, Debug)]
struct Record {
    depth: usize,
    body: String,
}

/// Shorter text first, then lexicographic.
fn shortlex(a: &str, b: &str) -> bool {
    (a.len(), a) < (b.len(), b)
}

fn offer(slot: &mut Option<Record>, depth: usize, body: impl FnOnce() -> String) {
    match slot {
        Some(r) if r.depth < depth => {}
        Some(r) if r.depth == depth => {
            let b = body();
            if shortlex(&b, &r.body) {
                r.body = b;
            }
        }
        _ => *slot = Some(Record { depth, body: body() }),
    }
}

struct State {
    vals: Vec<Id>,
    slots: Vec<Id>,
    body: String,
}

/// The children of one level, keeping only the `cap` least keys.
struct Children {
    map: BTreeMap<Vec<Id>, State>,
    cap: usize,
    overflow: bool,
}

impl Children {
    fn keep(&mut self, child: State) {
        if let Some(prev) = self.map.get_mut(&child.vals) {
            if shortlex(&child.body, &prev.body) {
                *prev = child;
            }
            return;
        }
        if self.map.len() == self.cap {
            self.overflow = true;
            if self.map.last_key_value().is_some_and(|(last, _)| child.vals > *last) {
                return;
            }
            self.map.pop_last();
        }
        self.map.insert(child.vals.clone(), child);
    }
}

enum Goal {
    None,
    Table(u32),
    Class(u32),
    Values(Vec<Id>),
}

struct Engine {
    mode: Mode,
    budget: Budget,
    given: Vec<(String, Id)>,
    names: Vec<String>,
    values: Vec<Value>,
    index: HashMap<Value, Id>,
    info: Vec<Info>,
    consts: Vec<(Op, Id)>,
    memo: HashMap<Call, Option<Vec<Id>>>,
    tables: HashMap<Arc<FinCat>, u32>,
    table_class: Vec<u32>,
    table_rec: Vec<Option<Record>>,
    classes: HashMap<Vec<u32>, u32>,
    class_rec: Vec<Option<Record>>,
    goal: Goal,
    found: Option<Record>,
    states_per_depth: Vec<usize>,
    proven: usize,
    scanned: usize,
}

fn fresh_names(count: usize, taken: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut round = 0;
    while out.len() < count {
        for c in b'A'..=b'Z' {
            let name = if round == 0 { (c as char).to_string() } else { format!("{}{round}", c as char) };
            if Op::from_name(&name).is_none() && !taken.contains(&name) && out.len() < count {
                out.push(name);
            }
        }
        round += 1;
    }
    out
}

impl Engine {
    fn new(given: &[(String, Value)], cfg: &SearchConfig) -> Engine {
        let taken: Vec<String> = given.iter().map(|(n, _)| n.clone()).collect();
        let mut e = Engine {
            mode: cfg.mode,
            budget: cfg.budget,
            given: Vec::new(),
            names: fresh_names(3 * cfg.budget.max_len + 3, &taken),
            values: Vec::new(),
            index: HashMap::new(),
            info: Vec::new(),
            consts: Vec::new(),
            memo: HashMap::new(),
            tables: HashMap::new(),
            table_class: Vec::new(),
            table_rec: Vec::new(),
            classes: HashMap::new(),
            class_rec: Vec::new(),
            goal: Goal::None,
            found: None,
            states_per_depth: Vec::new(),
            proven: 0,
            scanned: 0,
        };
        for op in CONSTANTS {
            let id = e.intern(constant(op));
            e.consts.push((op, id));
        }
        for (n, v) in given {
            let id = e.intern(v.clone());
            e.given.push((n.clone(), id));
        }
        e
    }

    fn const_id(&self, op: Op) -> Id {
        self.consts.iter().find(|c| c.0 == op).unwrap().1
    }

    fn intern(&mut self, v: Value) -> Id {
        if let Some(&id) = self.index.get(&v) {
            return id;
        }
        let info = match &v {
            Value::Category(_) => {
                let id = self.values.len() as Id;
                Info { kind: Kind::Category, dom: id, cod: id, src: IDENT | id as u64, tgt: IDENT | id as u64 }
            }
            Value::Functor(f) => {
                let (dom, cod) = (self.cat(f.dom()), self.cat(f.cod()));
                let key = if *f == Functor::identity(f.dom()) {
                    IDENT | dom as u64
                } else {
                    // the functor's own id, assigned below
                    self.values.len() as u64
                };
                Info { kind: Kind::Functor, dom, cod, src: key, tgt: key }
            }
            Value::NatTrans(a) => {
                let (dom, cod) = (self.cat(a.dom()), self.cat(a.cod()));
                let (src, tgt) = (self.functor_key(a.source()), self.functor_key(a.target()));
                Info { kind: Kind::NatTrans, dom, cod, src, tgt }
            }
            Value::Object { home, id } => {
                let f = Functor::determine_object(home, *id).expect("object of its home");
                let key = self.functor_key(&f);
                Info { kind: Kind::Object, dom: self.cat(f.dom()), cod: self.cat(home), src: key, tgt: key }
            }
            Value::Morphism { home, id } => {
                let f = Functor::determine_morphism(home, *id).expect("morphism of its home");
                let key = self.functor_key(&f);
                Info { kind: Kind::Morphism, dom: self.cat(f.dom()), cod: self.cat(home), src: key, tgt: key }
            }
        };
        // interning the parts may have interned `v` itself (a functor that
        // is its own boundary), so look again
        if let Some(&id) = self.index.get(&v) {
            return id;
        }
        let id = self.values.len() as Id;
        let info = if info.kind == Kind::Functor && info.src & IDENT == 0 {
            Info { src: id as u64, tgt: id as u64, ..info }
        } else {
            info
        };
        self.values.push(v.clone());
        self.info.push(info);
        self.index.insert(v, id);
        id
    }

    fn cat(&mut self, c: &Arc<FinCat>) -> Id {
        self.intern(Value::Category(c.clone()))
    }

    fn functor_key(&mut self, f: &Functor) -> u64 {
        if *f == Functor::identity(f.dom()) {
            IDENT | self.cat(f.dom()) as u64
        } else {
            self.intern(Value::Functor(f.clone())) as u64
        }
    }

    fn lookup_functor_key(&self, f: &Functor) -> Option<u64> {
        if *f == Functor::identity(f.dom()) {
            let d = self.index.get(&Value::Category(f.dom().clone()))?;
            Some(IDENT | *d as u64)
        } else {
            self.index.get(&Value::Functor(f.clone())).map(|&id| id as u64)
        }
    }

    fn table(&mut self, c: &Arc<FinCat>) -> u32 {
        if let Some(&t) = self.tables.get(c) {
            return t;
        }
        let key = table_key(&canonical(c).table);
        let next = self.classes.len() as u32;
        let class = *self.classes.entry(key).or_insert(next);
        if class as usize == self.class_rec.len() {
            self.class_rec.push(None);
        }
        let t = self.table_class.len() as u32;
        self.tables.insert(c.clone(), t);
        self.table_class.push(class);
        self.table_rec.push(None);
        t
    }

    fn offer_category(&mut self, c: &Arc<FinCat>, depth: usize, body: &dyn Fn() -> String) {
        let t = self.table(c);
        let class = self.table_class[t as usize];
        // compute the text at most once
        let mut cached: Option<String> = None;
        let mut text = || cached.get_or_insert_with(body).clone();
        offer(&mut self.table_rec[t as usize], depth, &mut text);
        offer(&mut self.class_rec[class as usize], depth, &mut text);
    }

    fn name_of(&self, st: &State, id: Id) -> String {
        if let Some(&(op, _)) = self.consts.iter().find(|c| c.1 == id) {
            return op.name().to_string();
        }
        if let Some(i) = st.slots.iter().position(|&s| s == id) {
            return self.names[i].clone();
        }
        let (n, _) = self.given.iter().find(|g| g.1 == id).expect("argument is in scope");
        n.clone()
    }

    fn statement(&self, st: &State, call: &Call, n_out: usize) -> String {
        let lhs = self.names[st.slots.len()..st.slots.len() + n_out].join(", ");
        let args: Vec<String> = call.args().iter().map(|&a| self.name_of(st, a)).collect();
        if args.is_empty() {
            format!("{lhs} = {}\n", call.op)
        } else {
            format!("{lhs} = {}({})\n", call.op, args.join(", "))
        }
    }

    /// Well-typed calls available in `st`, in a fixed order.
    fn calls(&self, st: &State) -> Vec<Call> {
        let mut avail: Vec<Id> = self.consts.iter().map(|c| c.1).collect();
        avail.extend(st.vals.iter().filter(|v| !self.consts.iter().any(|c| c.1 == **v)));
        let of = |k: Kind| -> Vec<Id> { avail.iter().copied().filter(|&v| self.info[v as usize].kind == k).collect() };
        let (cats, funs, nats) = (of(Kind::Category), of(Kind::Functor), of(Kind::NatTrans));
        let (objs, mors) = (of(Kind::Object), of(Kind::Morphism));
        let inf = |v: Id| self.info[v as usize];
        let (zero, one, two, iso) =
            (self.const_id(Op::Zero), self.const_id(Op::One), self.const_id(Op::Two), self.const_id(Op::IsoTwo));
        let cat_or_fun = |v: Id| matches!(inf(v).kind, Kind::Category | Kind::Functor);
        let mut out = Vec::new();
        for op in ALL_OPS {
            match op {
                Op::Zero | Op::One | Op::Two | Op::IsoTwo => {}
                Op::S | Op::T => {
                    for &x in &cats {
                        if x == two || x == iso {
                            out.push(Call::new(op, &[x]));
                        }
                    }
                }
                Op::Ident => {
                    for &x in cats.iter().chain(&funs) {
                        out.push(Call::new(op, &[x]));
                    }
                }
                Op::Source | Op::Target => {
                    for &x in funs.iter().chain(&nats).chain(&mors) {
                        out.push(Call::new(op, &[x]));
                    }
                }
                Op::Op => {
                    for &x in cats.iter().chain(&funs).chain(&nats) {
                        out.push(Call::new(op, &[x]));
                    }
                }
                Op::Pick => {
                    for &x in &funs {
                        if inf(x).dom == one || inf(x).dom == two {
                            out.push(Call::new(op, &[x]));
                        }
                    }
                }
                Op::Determine => {
                    for &x in objs.iter().chain(&mors) {
                        out.push(Call::new(op, &[x]));
                    }
                }
                Op::Composable => {
                    for &x in &cats {
                        out.push(Call::new(op, &[x]));
                    }
                }
                Op::Bang => {
                    for &a in &cats {
                        for &b in &cats {
                            if a == zero || b == one {
                                out.push(Call::new(op, &[a, b]));
                            }
                        }
                    }
                }
                Op::Hcomp => {
                    for &a in &avail {
                        for &b in &avail {
                            if inf(a).dom == inf(b).cod {
                                out.push(Call::new(op, &[a, b]));
                            }
                        }
                    }
                }
                Op::Vcomp => {
                    for &a in &avail {
                        for &b in &avail {
                            if !(cat_or_fun(a) && cat_or_fun(b)) && inf(a).src == inf(b).tgt {
                                out.push(Call::new(op, &[a, b]));
                            }
                        }
                    }
                }
                Op::Pow => {
                    for &a in cats.iter().chain(&funs) {
                        for &b in cats.iter().chain(&funs) {
                            if cat_or_fun(a) && (inf(a).kind == Kind::Category || inf(b).kind == Kind::Category) {
                                out.push(Call::new(op, &[a, b]));
                            }
                        }
                    }
                }
                Op::KanExL | Op::KanExR => {
                    for &g in &funs {
                        for &f in &funs {
                            if inf(g).dom == inf(f).dom {
                                out.push(Call::new(op, &[g, f]));
                            }
                        }
                    }
                }
                Op::KanLif | Op::Pullback => {
                    for &g in &funs {
                        for &f in &funs {
                            if inf(g).cod == inf(f).cod {
                                out.push(Call::new(op, &[g, f]));
                            }
                        }
                    }
                }
                Op::Coprod => {
                    for &a in &cats {
                        for &b in &cats {
                            out.push(Call::new(op, &[a, b]));
                        }
                    }
                    for &f in &funs {
                        for &g in &funs {
                            if inf(f).cod == inf(g).cod {
                                out.push(Call::new(op, &[f, g]));
                            }
                        }
                    }
                }
                Op::Coeq => {
                    for &f in &funs {
                        for &g in &funs {
                            if inf(f).dom == inf(g).dom && inf(f).cod == inf(g).cod {
                                out.push(Call::new(op, &[f, g]));
                            }
                        }
                    }
                }
                Op::KanInd => self.kan_ind_calls(&funs, &nats, &mut out),
            }
        }
        out
    }

    fn kan_ind_calls(&self, funs: &[Id], nats: &[Id], out: &mut Vec<Call>) {
        let inf = |v: Id| self.info[v as usize];
        for &g in funs {
            for &f in funs {
                if inf(g).dom != inf(f).dom {
                    continue;
                }
                for &h in funs {
                    if inf(h).dom != inf(g).cod || inf(h).cod != inf(f).cod {
                        continue;
                    }
                    let (gv, hv) = (self.values[g as usize].as_functor(), self.values[h as usize].as_functor());
                    let Some(hg) = hv.and_then(|h| gv.and_then(|g| h.after(g))).ok() else { continue };
                    let Some(hg) = self.lookup_functor_key(&hg) else { continue };
                    let fk = inf(f).src;
                    for &beta in nats {
                        let b = inf(beta);
                        if (b.src == hg && b.tgt == fk) || (b.src == fk && b.tgt == hg) {
                            out.push(Call::new(Op::KanInd, &[g, f, h, beta]));
                        }
                    }
                }
            }
        }
    }

    fn eval(&self, call: &Call) -> Option<Vec<Value>> {
        let args: Vec<Value> = call.args().iter().map(|&a| self.values[a as usize].clone()).collect();
        apply(call.op, &args, self.budget.bounds()).ok()
    }

    fn goal_met(&self) -> bool {
        self.goal_record().is_some()
    }

    fn goal_record(&self) -> Option<&Record> {
        match self.goal {
            Goal::None => None,
            Goal::Table(t) => self.table_rec[t as usize].as_ref(),
            Goal::Class(c) => self.class_rec[c as usize].as_ref(),
            Goal::Values(_) => self.found.as_ref(),
        }
    }

    fn check_values_goal(&mut self, depth: usize, has: &dyn Fn(Id) -> Option<String>, prefix: &dyn Fn() -> String) {
        if let Goal::Values(ts) = &self.goal {
            let mut first = None;
            for &t in ts {
                match has(t) {
                    Some(n) => {
                        first.get_or_insert(n);
                    }
                    None => return,
                }
            }
            let name = first.expect("at least one target");
            offer(&mut self.found, depth, || format!("{}Return {name}\n", prefix()));
        }
    }

    fn run(&mut self, pool: &rayon::ThreadPool) {
        let root = State {
            vals: {
                let mut v: Vec<Id> = self.given.iter().map(|g| g.1).collect();
                v.sort_unstable();
                v.dedup();
                v
            },
            slots: Vec::new(),
            body: String::new(),
        };
        // depth 0: the inputs themselves
        for (n, id) in self.given.clone() {
            if let Value::Category(c) = self.values[id as usize].clone() {
                self.offer_category(&c, 0, &|| format!("Return {n}\n"));
            }
        }
        let given = self.given.clone();
        self.check_values_goal(0, &|t| given.iter().find(|g| g.1 == t).map(|g| g.0.clone()), &String::new);
        if self.goal_met() || self.budget.max_len == 0 {
            return;
        }
        // depth 1: loading a constant
        let first = self.names[0].clone();
        for (op, id) in self.consts.clone() {
            let stmt = format!("{first} = {op}\n");
            if let Value::Category(c) = self.values[id as usize].clone() {
                self.offer_category(&c, 1, &|| format!("{stmt}Return {first}\n"));
            }
            let given = self.given.clone();
            let f = first.clone();
            self.check_values_goal(
                1,
                &|t| if t == id { Some(f.clone()) } else { given.iter().find(|g| g.1 == t).map(|g| g.0.clone()) },
                &|| stmt.clone(),
            );
        }

        let mut level = vec![root];
        let mut expanded = 0usize;
        let mut complete = true;
        for depth in 1..=self.budget.max_len {
            let room = self.budget.max_states.saturating_sub(expanded);
            if level.len() > room {
                level.truncate(room);
                complete = false;
            }
            if level.is_empty() {
                break;
            }
            expanded += level.len();
            self.states_per_depth.push(level.len());
            let cap = self.budget.max_states.saturating_sub(expanded);
            let store = depth < self.budget.max_len && cap > 0;
            let mut children = Children { map: BTreeMap::new(), cap, overflow: false };
            for chunk in level.chunks(CHUNK) {
                self.expand(pool, chunk, depth, store, &mut children);
            }
            self.scanned = depth;
            if complete {
                self.proven = depth;
            }
            if self.goal_met() || !store {
                break;
            }
            complete &= !children.overflow;
            level = children.map.into_values().collect();
        }
    }

    fn expand(
        &mut self,
        pool: &rayon::ThreadPool,
        chunk: &[State],
        depth: usize,
        store: bool,
        children: &mut Children,
    ) {
        let cands: Vec<Vec<Call>> = {
            let this = &*self;
            pool.install(|| chunk.par_iter().map(|s| this.calls(s)).collect())
        };
        let mut todo: Vec<Call> = cands.iter().flatten().filter(|c| !self.memo.contains_key(c)).copied().collect();
        todo.sort_unstable();
        todo.dedup();
        let results: Vec<Option<Vec<Value>>> = {
            let this = &*self;
            pool.install(|| todo.par_iter().map(|c| this.eval(c)).collect())
        };
        if store {
            for (c, r) in todo.into_iter().zip(results) {
                let ids = r.map(|vs| vs.into_iter().map(|v| self.intern(v)).collect());
                self.memo.insert(c, ids);
            }
            for (st, calls) in chunk.iter().zip(&cands) {
                for call in calls {
                    let Some(outs) = self.memo[call].clone() else { continue };
                    self.step_stored(st, call, &outs, depth, children);
                }
            }
        } else {
            let local: HashMap<Call, Option<Vec<Value>>> = todo.into_iter().zip(results).collect();
            for (st, calls) in chunk.iter().zip(&cands) {
                for call in calls {
                    let outs: Vec<Value> = match self.memo.get(call) {
                        Some(Some(ids)) => ids.iter().map(|&i| self.values[i as usize].clone()).collect(),
                        Some(None) => continue,
                        None => match &local[call] {
                            Some(vs) => vs.clone(),
                            None => continue,
                        },
                    };
                    self.step_scanned(st, call, &outs, depth);
                }
            }
        }
    }

    fn step_stored(&mut self, st: &State, call: &Call, outs: &[Id], depth: usize, children: &mut Children) {
        let fresh: Vec<Id> = outs.iter().copied().filter(|o| st.vals.binary_search(o).is_err()).collect();
        if fresh.is_empty() {
            return;
        }
        let prefix = format!("{}{}", st.body, self.statement(st, call, outs.len()));
        for (k, &o) in outs.iter().enumerate() {
            if !fresh.contains(&o) || outs[..k].contains(&o) {
                continue;
            }
            if let Value::Category(c) = self.values[o as usize].clone() {
                let name = self.names[st.slots.len() + k].clone();
                self.offer_category(&c, depth, &|| format!("{prefix}Return {name}\n"));
            }
        }
        let mut vals = st.vals.clone();
        vals.extend(&fresh);
        vals.sort_unstable();
        vals.dedup();
        let mut slots = st.slots.clone();
        slots.extend_from_slice(outs);
        let child = State { vals, slots, body: prefix };
        if let Goal::Values(ts) = &self.goal {
            let names: Vec<Option<String>> = ts
                .iter()
                .map(|&t| child.vals.binary_search(&t).is_ok().then(|| self.name_of(&child, t)))
                .collect();
            if names.iter().all(|n| n.is_some()) {
                let name = names[0].clone().unwrap();
                let p = &child.body;
                offer(&mut self.found, depth, || format!("{p}Return {name}\n"));
            }
        }
        children.keep(child);
    }

    fn step_scanned(&mut self, st: &State, call: &Call, outs: &[Value], depth: usize) {
        let mut prefix: Option<String> = None;
        for (k, o) in outs.iter().enumerate() {
            if let Value::Category(c) = o {
                if outs[..k].contains(o) {
                    continue;
                }
                let t = self.table(c);
                let class = self.table_class[t as usize];
                let worse = |r: &Option<Record>| r.as_ref().is_some_and(|r| r.depth < depth);
                if worse(&self.table_rec[t as usize]) && worse(&self.class_rec[class as usize]) {
                    continue;
                }
                let p = prefix.get_or_insert_with(|| format!("{}{}", st.body, self.statement(st, call, outs.len())));
                let body = format!("{p}Return {}\n", self.names[st.slots.len() + k]);
                offer(&mut self.table_rec[t as usize], depth, || body.clone());
                offer(&mut self.class_rec[class as usize], depth, || body);
            }
        }
        if let Goal::Values(ts) = &self.goal {
            let mut first = None;
            for &t in ts {
                let name = if let Some(k) = outs.iter().position(|o| *o == self.values[t as usize]) {
                    self.names[st.slots.len() + k].clone()
                } else if st.vals.binary_search(&t).is_ok() {
                    self.name_of(st, t)
                } else {
                    return;
                };
                first.get_or_insert(name);
            }
            let name = first.unwrap();
            let p = prefix.unwrap_or_else(|| format!("{}{}", st.body, self.statement(st, call, outs.len())));
            offer(&mut self.found, depth, || format!("{p}Return {name}\n"));
        }
    }

    /// Depth through which every program was examined.
    fn proven_through(&self) -> usize {
        self.proven
    }

    fn categories_per_depth(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.scanned + 1];
        for r in self.class_rec.iter().flatten() {
            for x in out.iter_mut().skip(r.depth) {
                *x += 1;
            }
        }
        out
    }

    fn header(&self) -> String {
        self.given
            .iter()
            .map(|(n, id)| format!("Input {n} : {}\n", self.values[*id as usize].kind()))
            .collect()
    }

    fn report(&self, target: String, rec: Option<&Record>) -> ComplexityReport {
        ComplexityReport {
            target,
            given: self.given.iter().map(|g| g.0.clone()).collect(),
            mode: self.mode,
            k: rec.map(|r| r.depth),
            exact: rec.is_some_and(|r| r.depth <= self.proven_through()),
            witness: rec.map(|r| format!("{}{}", self.header(), r.body)),
            lower_bound: rec.map_or(self.proven_through() + 1, |r| r.depth.min(self.proven_through() + 1)),
            budget: self.budget,
            states_per_depth: self.states_per_depth.clone(),
            categories_per_depth: self.categories_per_depth(),
            scope: SCOPE.to_string(),
        }
    }
}

fn thread_pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool")
}

fn finish(report: ComplexityReport) -> Result<ComplexityReport> {
    if report.k.is_some() {
        Ok(report)
    } else {
        Err(Error::BudgetExhausted(Box::new(report)))
    }
}

/// Shortest straight-line program producing `target` from the named inputs.
///
/// Categories are matched per `cfg.mode`; other values exactly. Fails with
/// `BudgetExhausted` (carrying the partial report) when no program within
/// the budget was found.
pub fn k_search(target: &Value, given: &[(String, Value)], cfg: &SearchConfig) -> Result<ComplexityReport> {
    k_search_all(std::slice::from_ref(target), given, cfg)
}

/// Shortest program after which every value in `targets` has been computed.
/// The witness returns the first target.
pub fn k_search_all(targets: &[Value], given: &[(String, Value)], cfg: &SearchConfig) -> Result<ComplexityReport> {
    if targets.is_empty() {
        return Err(Error::ty("no search target"));
    }
    for t in targets {
        t.validate()?;
    }
    let mut e = Engine::new(given, cfg);
    e.goal = match targets {
        [Value::Category(c)] => {
            let t = e.table(c);
            match cfg.mode {
                Mode::Iso => Goal::Class(e.table_class[t as usize]),
                Mode::Eq => Goal::Table(t),
            }
        }
        _ => Goal::Values(targets.iter().map(|t| e.intern(t.clone())).collect()),
    };
    e.run(&thread_pool(cfg.workers));
    let name: Vec<String> = targets.iter().map(|t| t.summary()).collect();
    let report = e.report(name.join(" + "), e.goal_record());
    finish(report)
}

/// Every category reachable within the budget, with its shortest program.
pub struct Frontier {
    engine: Engine,
}

/// Searches the whole budget once and keeps one record per category.
pub fn explore(given: &[(String, Value)], cfg: &SearchConfig) -> Frontier {
    let mut engine = Engine::new(given, cfg);
    engine.run(&thread_pool(cfg.workers));
    Frontier { engine }
}

impl Frontier {
    /// The report `k_search` would give for a category target.
    pub fn report(&self, target: &Arc<FinCat>) -> Result<ComplexityReport> {
        let e = &self.engine;
        let rec = match e.mode {
            Mode::Eq => e.tables.get(target).and_then(|&t| e.table_rec[t as usize].as_ref()),
            Mode::Iso => e
                .classes
                .get(&table_key(&canonical(target).table))
                .and_then(|&c| e.class_rec[c as usize].as_ref()),
        };
        finish(e.report(Value::Category(target.clone()).summary(), rec))
    }

    /// Distinct isomorphism classes of categories produced within `d`
    /// statements, for each `d` that was scanned.
    pub fn categories_per_depth(&self) -> Vec<usize> {
        self.engine.categories_per_depth()
    }

    pub fn states_per_depth(&self) -> &[usize] {
        &self.engine.states_per_depth
    }

    /// Depth through which the search was exhaustive.
    pub fn proven_through(&self) -> usize {
        self.engine.proven_through()
    }
}
