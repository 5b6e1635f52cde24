//! Finite categories as explicit tables.
//!
//! A [`FinCat`] stores objects and morphisms as dense indices, the
//! source/target maps, one identity per object and a composition table that
//! is defined exactly on composable pairs. Tables may be built unchecked (for
//! instance when decoding untrusted JSON) and then audited with
//! [`FinCat::validate`].

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

/// A broken category law together with the witnesses that break it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    /// An index points outside the table.
    Range { detail: String },
    /// `identity(obj)` is not an endomorphism of `obj`.
    IdentityTyping { obj: u32, mor: u32 },
    /// `g . f` is undefined although `src(g) = tgt(f)`.
    MissingComposite { g: u32, f: u32 },
    /// `g . f` is defined although `src(g) != tgt(f)`.
    SpuriousComposite { g: u32, f: u32 },
    /// `g . f` does not run from `src(f)` to `tgt(g)`.
    CompositeTyping { g: u32, f: u32, gf: u32 },
    /// `id . f != f`.
    LeftIdentity { id: u32, f: u32, got: u32 },
    /// `f . id != f`.
    RightIdentity { f: u32, id: u32, got: u32 },
    /// `h . (g . f) != (h . g) . f`.
    Associativity { h: u32, g: u32, f: u32 },
    /// A functor fails to preserve structure.
    Functor { detail: String },
    /// The naturality square at morphism `mor` of the domain does not commute.
    Naturality { mor: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Range { detail } => write!(f, "index out of range: {detail}"),
            Violation::IdentityTyping { obj, mor } => {
                write!(f, "identity m{mor} of o{obj} is not an endomorphism of o{obj}")
            }
            Violation::MissingComposite { g, f: ff } => {
                write!(f, "composite m{g} . m{ff} missing")
            }
            Violation::SpuriousComposite { g, f: ff } => {
                write!(f, "composite m{g} . m{ff} defined on a non-composable pair")
            }
            Violation::CompositeTyping { g, f: ff, gf } => {
                write!(f, "composite m{g} . m{ff} = m{gf} has the wrong endpoints")
            }
            Violation::LeftIdentity { id, f: ff, got } => {
                write!(f, "left identity fails: m{id} . m{ff} = m{got}")
            }
            Violation::RightIdentity { f: ff, id, got } => {
                write!(f, "right identity fails: m{ff} . m{id} = m{got}")
            }
            Violation::Associativity { h, g, f: ff } => {
                write!(f, "associativity fails on (m{h}, m{g}, m{ff})")
            }
            Violation::Functor { detail } => write!(f, "functor law: {detail}"),
            Violation::Naturality { mor } => write!(f, "naturality square at m{mor} does not commute"),
        }
    }
}

/// A finite category.
///
/// `compose(g, f)` is `g . f` (apply `f` first). The composition table is
/// stored row-per-`g`, indexed by the position of `f` among the morphisms
/// into `src(g)`, so the table only has slots for composable pairs.
#[derive(Clone)]
pub struct FinCat {
    n_obj: usize,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    ident: Vec<MorId>,
    comp: Vec<u32>,
    // composites recorded on non-composable pairs; only raw tables have these
    spurious: Vec<(MorId, MorId, MorId)>,
    // derived indices
    into: Vec<Vec<MorId>>,
    outof: Vec<Vec<MorId>>,
    pos_in_into: Vec<u32>,
    row_offset: Vec<usize>,
    homs: Vec<Vec<MorId>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.n_obj == other.n_obj
            && self.src == other.src
            && self.tgt == other.tgt
            && self.ident == other.ident
            && self.comp == other.comp
            && self.spurious == other.spurious
    }
}

impl Eq for FinCat {}

impl Hash for FinCat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n_obj.hash(state);
        self.src.hash(state);
        self.tgt.hash(state);
        self.ident.hash(state);
        self.comp.hash(state);
        self.spurious.hash(state);
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} morphisms)", self.n_obj, self.src.len())
    }
}

/// Named constant categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    Zero,
    One,
    Two,
    IsoTwo,
}

impl FinCat {
    /// Lays out an empty composition table for the given graph.
    fn skeleton_table(n_obj: usize, edges: &[(ObjId, ObjId)], ident: Vec<MorId>) -> Self {
        let n_mor = edges.len();
        let mut into = vec![Vec::new(); n_obj];
        let mut outof = vec![Vec::new(); n_obj];
        let mut pos_in_into = vec![0u32; n_mor];
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (m, &(s, t)) in edges.iter().enumerate() {
            pos_in_into[m] = into[t.idx()].len() as u32;
            into[t.idx()].push(MorId(m as u32));
            outof[s.idx()].push(MorId(m as u32));
            homs[s.idx() * n_obj + t.idx()].push(MorId(m as u32));
        }
        let mut row_offset = Vec::with_capacity(n_mor);
        let mut total = 0usize;
        for &(s, _) in edges {
            row_offset.push(total);
            total += into[s.idx()].len();
        }
        FinCat {
            n_obj,
            src: edges.iter().map(|e| e.0).collect(),
            tgt: edges.iter().map(|e| e.1).collect(),
            ident,
            comp: vec![NONE; total],
            spurious: Vec::new(),
            into,
            outof,
            pos_in_into,
            row_offset,
            homs,
        }
    }

    fn check_ranges(n_obj: usize, edges: &[(ObjId, ObjId)], ident: &[MorId]) -> Result<()> {
        let mut bad = Vec::new();
        for (m, &(s, t)) in edges.iter().enumerate() {
            if s.idx() >= n_obj || t.idx() >= n_obj {
                bad.push(Violation::Range {
                    detail: format!("morphism m{m} has endpoint outside {n_obj} objects"),
                });
            }
        }
        if ident.len() != n_obj {
            bad.push(Violation::Range {
                detail: format!("{} identities for {n_obj} objects", ident.len()),
            });
        }
        for (o, &i) in ident.iter().enumerate() {
            if i.idx() >= edges.len() {
                bad.push(Violation::Range { detail: format!("identity of o{o} is m{}", i.0) });
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(bad))
        }
    }

    /// Builds a table from explicit entries without checking the category
    /// laws. Only index ranges are checked, since out-of-range indices cannot
    /// be represented at all.
    pub fn from_parts_unchecked(
        n_obj: usize,
        edges: Vec<(ObjId, ObjId)>,
        ident: Vec<MorId>,
        entries: &[(MorId, MorId, MorId)],
    ) -> Result<Self> {
        Self::check_ranges(n_obj, &edges, &ident)?;
        let mut c = Self::skeleton_table(n_obj, &edges, ident);
        let n_mor = edges.len();
        for &(g, f, gf) in entries {
            if g.idx() >= n_mor || f.idx() >= n_mor || gf.idx() >= n_mor {
                return Err(Error::Invalid(vec![Violation::Range {
                    detail: format!("composite entry ({}, {}, {})", g.0, f.0, gf.0),
                }]));
            }
            c.set_comp_unchecked(g, f, Some(gf));
        }
        Ok(c)
    }

    /// Builds and validates a category from explicit entries.
    pub fn from_parts(
        n_obj: usize,
        edges: Vec<(ObjId, ObjId)>,
        ident: Vec<MorId>,
        entries: &[(MorId, MorId, MorId)],
    ) -> Result<Self> {
        let c = Self::from_parts_unchecked(n_obj, edges, ident, entries)?;
        c.into_valid()
    }

    /// Builds a table by asking `compose(g, f)` for every composable pair.
    /// The caller is responsible for the laws; constructions call this with
    /// closures that are lawful by construction.
    pub(crate) fn from_fn(
        n_obj: usize,
        edges: Vec<(ObjId, ObjId)>,
        ident: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Self {
        let mut c = Self::skeleton_table(n_obj, &edges, ident);
        for g in 0..edges.len() {
            let s = c.src[g];
            let off = c.row_offset[g];
            for (k, &f) in c.into[s.idx()].iter().enumerate() {
                c.comp[off + k] = compose(MorId(g as u32), f).0;
            }
        }
        c
    }

    pub fn into_valid(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Overwrites (or clears) one composition entry. Intended for tests and
    /// for assembling raw tables; the result may violate the laws.
    pub fn set_comp_unchecked(&mut self, g: MorId, f: MorId, gf: Option<MorId>) {
        if self.src[g.idx()] == self.tgt[f.idx()] {
            let slot = self.row_offset[g.idx()] + self.pos_in_into[f.idx()] as usize;
            self.comp[slot] = gf.map_or(NONE, |m| m.0);
        } else {
            self.spurious.retain(|&(a, b, _)| !(a == g && b == f));
            if let Some(gf) = gf {
                self.spurious.push((g, f, gf));
                self.spurious.sort();
            }
        }
    }

    /// Replaces the designated identity of an object without any checks.
    pub fn set_identity_unchecked(&mut self, o: ObjId, m: MorId) {
        self.ident[o.idx()] = m;
    }

    pub fn n_objects(&self) -> usize {
        self.n_obj
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.n_obj as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.src.len() as u32).map(MorId)
    }

    #[inline]
    pub fn src(&self, m: MorId) -> ObjId {
        self.src[m.idx()]
    }

    #[inline]
    pub fn tgt(&self, m: MorId) -> ObjId {
        self.tgt[m.idx()]
    }

    #[inline]
    pub fn identity(&self, o: ObjId) -> MorId {
        self.ident[o.idx()]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.ident
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        let s = self.src[m.idx()];
        s == self.tgt[m.idx()] && self.ident[s.idx()] == m
    }

    /// `g . f`, or `None` when the pair is not composable or the entry is
    /// missing.
    #[inline]
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.src[g.idx()] != self.tgt[f.idx()] {
            return None;
        }
        let v = self.comp[self.row_offset[g.idx()] + self.pos_in_into[f.idx()] as usize];
        (v != NONE).then_some(MorId(v))
    }

    /// `g . f` for a pair known to be composable in a valid category.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).expect("composable pair in a valid category")
    }

    /// Every defined composition entry as `(g, f, g . f)`, ordered by `(g, f)`.
    pub fn comp_entries(&self) -> Vec<(MorId, MorId, MorId)> {
        let mut out = Vec::new();
        for g in self.morphisms() {
            let s = self.src(g);
            for &f in &self.into[s.idx()] {
                if let Some(gf) = self.compose(g, f) {
                    out.push((g, f, gf));
                }
            }
        }
        out.extend(self.spurious.iter().copied());
        out.sort();
        out
    }

    /// Morphisms `a -> b` in index order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.idx() * self.n_obj + b.idx()]
    }

    /// Checked variant of [`FinCat::hom`].
    pub fn hom_set(&self, a: ObjId, b: ObjId) -> Result<Vec<MorId>> {
        for o in [a, b] {
            if o.idx() >= self.n_obj {
                return Err(Error::Runtime(format!("unknown object {o}")));
            }
        }
        Ok(self.hom(a, b).to_vec())
    }

    pub fn morphisms_into(&self, o: ObjId) -> &[MorId] {
        &self.into[o.idx()]
    }

    pub fn morphisms_out_of(&self, o: ObjId) -> &[MorId] {
        &self.outof[o.idx()]
    }

    /// Checks every category law and reports each failure with witnesses.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let n_mor = self.n_morphisms();
        for (o, &i) in self.ident.iter().enumerate() {
            if self.src[i.idx()].idx() != o || self.tgt[i.idx()].idx() != o {
                v.push(Violation::IdentityTyping { obj: o as u32, mor: i.0 });
            }
        }
        for &(g, f, _) in &self.spurious {
            v.push(Violation::SpuriousComposite { g: g.0, f: f.0 });
        }
        // Identity entries are judged by the identity laws alone; the typing
        // check covers the remaining entries.
        let mut well_typed = vec![true; self.comp.len()];
        for g in 0..n_mor {
            let g = MorId(g as u32);
            let s = self.src(g);
            for &f in &self.into[s.idx()] {
                let slot = self.row_offset[g.idx()] + self.pos_in_into[f.idx()] as usize;
                let Some(gf) = self.compose(g, f) else {
                    v.push(Violation::MissingComposite { g: g.0, f: f.0 });
                    well_typed[slot] = false;
                    continue;
                };
                let g_id = self.ident[s.idx()] == g;
                let f_id = self.ident[s.idx()] == f;
                if g_id && gf != f {
                    v.push(Violation::LeftIdentity { id: g.0, f: f.0, got: gf.0 });
                    well_typed[slot] = false;
                } else if f_id && !g_id && gf != g {
                    v.push(Violation::RightIdentity { f: g.0, id: f.0, got: gf.0 });
                    well_typed[slot] = false;
                } else if !g_id
                    && !f_id
                    && (self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g))
                {
                    v.push(Violation::CompositeTyping { g: g.0, f: f.0, gf: gf.0 });
                    well_typed[slot] = false;
                }
            }
        }
        let typed = |g: MorId, f: MorId| -> Option<MorId> {
            let slot = self.row_offset[g.idx()] + self.pos_in_into[f.idx()] as usize;
            if well_typed[slot] {
                self.compose(g, f)
            } else {
                None
            }
        };
        for f in self.morphisms().filter(|&m| !self.is_identity(m)) {
            for &g in &self.outof[self.tgt(f).idx()] {
                if self.is_identity(g) {
                    continue;
                }
                let Some(gf) = typed(g, f) else { continue };
                for &h in &self.outof[self.tgt(g).idx()] {
                    if self.is_identity(h) {
                        continue;
                    }
                    let (Some(h_gf), Some(hg)) = (typed(h, gf), typed(h, g)) else {
                        continue;
                    };
                    let Some(hg_f) = typed(hg, f) else { continue };
                    if h_gf != hg_f {
                        v.push(Violation::Associativity { h: h.0, g: g.0, f: f.0 });
                    }
                }
            }
        }
        v
    }

    pub fn constant(c: Constant) -> Self {
        match c {
            Constant::Zero => Self::discrete(0),
            Constant::One => Self::discrete(1),
            Constant::Two => Self::chain(2),
            Constant::IsoTwo => Self::codiscrete(2),
        }
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> Self {
        Self::preorder(n, |a, b| a == b)
    }

    /// The total order `0 -> 1 -> ... -> n-1`.
    pub fn chain(n: usize) -> Self {
        Self::preorder(n, |a, b| a <= b)
    }

    /// `n` objects with exactly one morphism between any two of them.
    pub fn codiscrete(n: usize) -> Self {
        Self::preorder(n, |_, _| true)
    }

    /// The thin category of a preorder. `le` must be reflexive and
    /// transitive. Morphisms are ordered by `(src, tgt)`.
    pub fn preorder(n: usize, le: impl Fn(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        let mut index = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                if le(a, b) {
                    index[a * n + b] = edges.len() as u32;
                    edges.push((ObjId(a as u32), ObjId(b as u32)));
                }
            }
        }
        let ident = (0..n).map(|a| MorId(index[a * n + a])).collect();
        let e2 = edges.clone();
        Self::from_fn(n, edges, ident, |g, f| {
            MorId(index[e2[f.idx()].0.idx() * n + e2[g.idx()].1.idx()])
        })
    }

    /// The opposite category. Object and morphism indices are unchanged, so
    /// taking the opposite twice gives back an identical table.
    pub fn opposite(&self) -> Self {
        let edges: Vec<_> = self.morphisms().map(|m| (self.tgt(m), self.src(m))).collect();
        let mut c = Self::skeleton_table(self.n_obj, &edges, self.ident.clone());
        for g in self.morphisms() {
            for &f in &self.into[self.src(g).idx()] {
                // op: f^op . g^op = (g . f)^op
                if let Some(gf) = self.compose(g, f) {
                    c.set_comp_unchecked(f, g, Some(gf));
                }
            }
        }
        for &(g, f, gf) in &self.spurious {
            c.set_comp_unchecked(f, g, Some(gf));
        }
        c
    }

    /// True when `m` has a two-sided inverse.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose(g, m) == Some(self.identity(a)) && self.compose(m, g) == Some(self.identity(b))
        })
    }

    /// Relabels objects and morphisms: object `o` becomes `obj_perm[o]`,
    /// morphism `m` becomes `mor_perm[m]`. Both maps must be bijections.
    pub fn relabel(&self, obj_perm: &[ObjId], mor_perm: &[MorId]) -> Self {
        let n_mor = self.n_morphisms();
        let mut edges = vec![(ObjId(0), ObjId(0)); n_mor];
        for m in self.morphisms() {
            edges[mor_perm[m.idx()].idx()] =
                (obj_perm[self.src(m).idx()], obj_perm[self.tgt(m).idx()]);
        }
        let mut ident = vec![MorId(0); self.n_obj];
        for o in self.objects() {
            ident[obj_perm[o.idx()].idx()] = mor_perm[self.identity(o).idx()];
        }
        let mut inv = vec![MorId(0); n_mor];
        for m in self.morphisms() {
            inv[mor_perm[m.idx()].idx()] = m;
        }
        let mut c = Self::skeleton_table(self.n_obj, &edges, ident);
        for g in 0..n_mor {
            let og = inv[g];
            for &f in &self.into[self.src(og).idx()] {
                if let Some(gf) = self.compose(og, f) {
                    c.set_comp_unchecked(MorId(g as u32), mor_perm[f.idx()], Some(mor_perm[gf.idx()]));
                }
            }
        }
        for &(g, f, gf) in &self.spurious {
            c.set_comp_unchecked(mor_perm[g.idx()], mor_perm[f.idx()], Some(mor_perm[gf.idx()]));
        }
        c
    }
}
