//! JSON documents for categories and values.
//!
//! A category is `{"objects": n, "morphisms": [{"src": i, "tgt": j}],
//! "identities": [...], "comp": [[g, f, gf], ...]}` with composites sorted
//! by `(g, f)`. Other values carry a `"kind"` tag and embed the categories
//! they live in.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::{Functor, NatTrans};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: u32,
    pub tgt: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: usize,
    pub morphisms: Vec<Edge>,
    pub identities: Vec<u32>,
    pub comp: Vec<[u32; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub dom: CategoryDoc,
    pub cod: CategoryDoc,
    pub obj_map: Vec<u32>,
    pub mor_map: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTransDoc {
    pub source: FunctorDoc,
    pub target: FunctorDoc,
    pub components: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueDoc {
    Category(CategoryDoc),
    Functor(FunctorDoc),
    NatTrans(NatTransDoc),
    Object { home: CategoryDoc, id: u32 },
    Morphism { home: CategoryDoc, id: u32 },
}

impl From<&FinCat> for CategoryDoc {
    fn from(c: &FinCat) -> Self {
        CategoryDoc {
            objects: c.n_objects(),
            morphisms: c.morphisms().map(|m| Edge { src: c.src(m).0, tgt: c.tgt(m).0 }).collect(),
            identities: c.identities().iter().map(|m| m.0).collect(),
            comp: c.comp_entries().into_iter().map(|(g, f, gf)| [g.0, f.0, gf.0]).collect(),
        }
    }
}

impl CategoryDoc {
    /// The raw table, without checking the category laws.
    pub fn to_table(&self) -> Result<FinCat> {
        let edges = self.morphisms.iter().map(|e| (ObjId(e.src), ObjId(e.tgt))).collect();
        let ident = self.identities.iter().map(|&m| MorId(m)).collect();
        let entries: Vec<_> =
            self.comp.iter().map(|&[g, f, gf]| (MorId(g), MorId(f), MorId(gf))).collect();
        FinCat::from_parts_unchecked(self.objects, edges, ident, &entries)
    }

    pub fn to_category(&self) -> Result<FinCat> {
        self.to_table()?.into_valid()
    }
}

impl From<&Functor> for FunctorDoc {
    fn from(f: &Functor) -> Self {
        FunctorDoc {
            dom: CategoryDoc::from(&**f.dom()),
            cod: CategoryDoc::from(&**f.cod()),
            obj_map: f.obj_map().iter().map(|o| o.0).collect(),
            mor_map: f.mor_map().iter().map(|m| m.0).collect(),
        }
    }
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::Runtime(format!("{what}: expected {want} entries, found {got}")))
    }
}

impl FunctorDoc {
    pub fn to_functor(&self) -> Result<Functor> {
        let dom = Arc::new(self.dom.to_category()?);
        let cod = Arc::new(self.cod.to_category()?);
        check_len("obj_map", self.obj_map.len(), dom.n_objects())?;
        check_len("mor_map", self.mor_map.len(), dom.n_morphisms())?;
        if self.obj_map.iter().any(|&o| o as usize >= cod.n_objects())
            || self.mor_map.iter().any(|&m| m as usize >= cod.n_morphisms())
        {
            return Err(Error::Runtime("functor map points outside its codomain".into()));
        }
        Functor::new(
            dom,
            cod,
            self.obj_map.iter().map(|&o| ObjId(o)).collect(),
            self.mor_map.iter().map(|&m| MorId(m)).collect(),
        )
    }
}

impl From<&NatTrans> for NatTransDoc {
    fn from(a: &NatTrans) -> Self {
        NatTransDoc {
            source: a.source().into(),
            target: a.target().into(),
            components: a.components().iter().map(|m| m.0).collect(),
        }
    }
}

impl NatTransDoc {
    pub fn to_nat_trans(&self) -> Result<NatTrans> {
        let s = self.source.to_functor()?;
        let t = self.target.to_functor()?;
        check_len("components", self.components.len(), s.dom().n_objects())?;
        if self.components.iter().any(|&m| m as usize >= s.cod().n_morphisms()) {
            return Err(Error::Runtime("component outside the codomain".into()));
        }
        NatTrans::new(s, t, self.components.iter().map(|&m| MorId(m)).collect())
    }
}

impl From<&Value> for ValueDoc {
    fn from(v: &Value) -> Self {
        match v {
            Value::Category(c) => ValueDoc::Category((&**c).into()),
            Value::Functor(f) => ValueDoc::Functor(f.into()),
            Value::NatTrans(a) => ValueDoc::NatTrans(a.into()),
            Value::Object { home, id } => ValueDoc::Object { home: (&**home).into(), id: id.0 },
            Value::Morphism { home, id } => ValueDoc::Morphism { home: (&**home).into(), id: id.0 },
        }
    }
}

impl ValueDoc {
    pub fn to_value(&self) -> Result<Value> {
        let v = match self {
            ValueDoc::Category(c) => Value::Category(Arc::new(c.to_category()?)),
            ValueDoc::Functor(f) => Value::Functor(f.to_functor()?),
            ValueDoc::NatTrans(a) => Value::NatTrans(a.to_nat_trans()?),
            ValueDoc::Object { home, id } => {
                Value::Object { home: Arc::new(home.to_category()?), id: ObjId(*id) }
            }
            ValueDoc::Morphism { home, id } => {
                Value::Morphism { home: Arc::new(home.to_category()?), id: MorId(*id) }
            }
        };
        v.validate()?;
        Ok(v)
    }
}

pub fn category_to_string(c: &FinCat) -> String {
    serde_json::to_string(&CategoryDoc::from(c)).expect("serializable")
}

/// Parses a category document without checking the laws.
pub fn table_from_str(s: &str) -> Result<FinCat> {
    let doc: CategoryDoc = match serde_json::from_str::<ValueDoc>(s) {
        Ok(ValueDoc::Category(c)) => c,
        Ok(other) => {
            return Err(Error::ty(format!("expected a category document, got {}", kind_name(&other))))
        }
        Err(_) => serde_json::from_str(s)?,
    };
    doc.to_table()
}

pub fn category_from_str(s: &str) -> Result<FinCat> {
    table_from_str(s)?.into_valid()
}

pub fn value_to_string(v: &Value) -> String {
    serde_json::to_string(&ValueDoc::from(v)).expect("serializable")
}

/// Parses any value document. An untagged document is read as a category.
pub fn value_from_str(s: &str) -> Result<Value> {
    let raw: serde_json::Value = serde_json::from_str(s)?;
    if raw.get("kind").is_some() {
        serde_json::from_value::<ValueDoc>(raw)?.to_value()
    } else {
        let doc: CategoryDoc = serde_json::from_value(raw)?;
        Ok(Value::Category(Arc::new(doc.to_category()?)))
    }
}

fn kind_name(d: &ValueDoc) -> &'static str {
    match d {
        ValueDoc::Category(_) => "category",
        ValueDoc::Functor(_) => "functor",
        ValueDoc::NatTrans(_) => "nat_trans",
        ValueDoc::Object { .. } => "object",
        ValueDoc::Morphism { .. } => "morphism",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Constant;
    use crate::functor::ConstFunctor;

    #[test]
    fn category_round_trip_is_exact() {
        for c in [Constant::Zero, Constant::One, Constant::Two, Constant::IsoTwo] {
            let c = FinCat::constant(c);
            let s = category_to_string(&c);
            let back = category_from_str(&s).unwrap();
            assert_eq!(back, c);
            assert_eq!(category_to_string(&back), s);
        }
    }

    #[test]
    fn two_document_layout() {
        let s = category_to_string(&FinCat::constant(Constant::Two));
        assert_eq!(
            s,
            r#"{"objects":2,"morphisms":[{"src":0,"tgt":0},{"src":0,"tgt":1},{"src":1,"tgt":1}],"identities":[0,2],"comp":[[0,0,0],[1,0,1],[2,1,1],[2,2,2]]}"#
        );
    }

    #[test]
    fn value_round_trip() {
        let s = Value::Functor(Functor::constant(ConstFunctor::S));
        let a = Value::NatTrans(NatTrans::identity(&Functor::constant(ConstFunctor::T)));
        for v in [s, a] {
            let text = value_to_string(&v);
            assert_eq!(value_from_str(&text).unwrap(), v);
        }
    }

    #[test]
    fn broken_table_is_reported() {
        let mut doc = CategoryDoc::from(&FinCat::constant(Constant::Two));
        doc.comp.retain(|e| e != &[2, 1, 1]);
        let s = serde_json::to_string(&doc).unwrap();
        assert!(table_from_str(&s).is_ok());
        assert!(matches!(category_from_str(&s), Err(Error::Invalid(_))));
    }
}
