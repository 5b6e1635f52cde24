//! Runtime values of the language.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::functor::{Functor, NatTrans};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Category(Arc<FinCat>),
    Functor(Functor),
    NatTrans(NatTrans),
    Object { home: Arc<FinCat>, id: ObjId },
    Morphism { home: Arc<FinCat>, id: MorId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Category,
    Functor,
    NatTrans,
    Object,
    Morphism,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::NatTrans => "nat_trans",
            Kind::Object => "object",
            Kind::Morphism => "morphism",
        })
    }
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "category" | "Category" | "Cat" => Kind::Category,
            "functor" | "Functor" => Kind::Functor,
            "nat_trans" | "NatTrans" => Kind::NatTrans,
            "object" | "Object" => Kind::Object,
            "morphism" | "Morphism" => Kind::Morphism,
            _ => return None,
        })
    }
}

impl From<FinCat> for Value {
    fn from(c: FinCat) -> Self {
        Value::Category(Arc::new(c))
    }
}

impl From<Arc<FinCat>> for Value {
    fn from(c: Arc<FinCat>) -> Self {
        Value::Category(c)
    }
}

impl From<Functor> for Value {
    fn from(f: Functor) -> Self {
        Value::Functor(f)
    }
}

impl From<NatTrans> for Value {
    fn from(a: NatTrans) -> Self {
        Value::NatTrans(a)
    }
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Category(_) => Kind::Category,
            Value::Functor(_) => Kind::Functor,
            Value::NatTrans(_) => Kind::NatTrans,
            Value::Object { .. } => Kind::Object,
            Value::Morphism { .. } => Kind::Morphism,
        }
    }

    pub fn as_category(&self) -> Result<&Arc<FinCat>> {
        match self {
            Value::Category(c) => Ok(c),
            v => Err(Error::ty(format!("expected a category, got a {}", v.kind()))),
        }
    }

    pub fn as_functor(&self) -> Result<&Functor> {
        match self {
            Value::Functor(f) => Ok(f),
            v => Err(Error::ty(format!("expected a functor, got a {}", v.kind()))),
        }
    }

    pub fn as_nat_trans(&self) -> Result<&NatTrans> {
        match self {
            Value::NatTrans(a) => Ok(a),
            v => Err(Error::ty(format!("expected a natural transformation, got a {}", v.kind()))),
        }
    }

    /// Views a category or functor as the identity transformation on it, so
    /// that all kinds can be compared the same way.
    pub fn promote(&self) -> Result<NatTrans> {
        Ok(match self {
            Value::Category(c) => NatTrans::identity(&Functor::identity(c)),
            Value::Functor(f) => NatTrans::identity(f),
            Value::NatTrans(a) => a.clone(),
            Value::Object { home, id } => NatTrans::identity(&Functor::determine_object(home, *id)?),
            Value::Morphism { home, id } => {
                NatTrans::identity(&Functor::determine_morphism(home, *id)?)
            }
        })
    }

    /// Every category the value refers to.
    pub fn categories(&self) -> Vec<&Arc<FinCat>> {
        match self {
            Value::Category(c) => vec![c],
            Value::Functor(f) => vec![f.dom(), f.cod()],
            Value::NatTrans(a) => vec![a.dom(), a.cod()],
            Value::Object { home, .. } | Value::Morphism { home, .. } => vec![home],
        }
    }

    /// Checks the laws for the value's kind.
    pub fn validate(&self) -> Result<()> {
        let mut v = Vec::new();
        for c in self.categories() {
            v.extend(c.validate());
        }
        match self {
            Value::Functor(f) => v.extend(f.validate()),
            Value::NatTrans(a) => {
                v.extend(a.source().validate());
                v.extend(a.target().validate());
                v.extend(a.validate());
            }
            Value::Object { home, id } if id.idx() >= home.n_objects() => {
                return Err(Error::Runtime(format!("unknown object {id}")))
            }
            Value::Morphism { home, id } if id.idx() >= home.n_morphisms() => {
                return Err(Error::Runtime(format!("unknown morphism {id}")))
            }
            _ => {}
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// One-line description for reports.
    pub fn summary(&self) -> String {
        let cat = |c: &FinCat| format!("{} objects, {} morphisms", c.n_objects(), c.n_morphisms());
        match self {
            Value::Category(c) => format!("category ({})", cat(c)),
            Value::Functor(f) => format!("functor ({}) -> ({})", cat(f.dom()), cat(f.cod())),
            Value::NatTrans(a) => format!("nat_trans on ({}) -> ({})", cat(a.dom()), cat(a.cod())),
            Value::Object { id, .. } => format!("object {id}"),
            Value::Morphism { id, .. } => format!("morphism {id}"),
        }
    }
}
