//! Semantics of each operation, dispatched on the kinds of its arguments.


use crate::constructions::{
    self, coequalizer, composable_functor, kan_extension, kan_induced, kan_lifting, pow, Bounds,
    FunctorCategory, Side,
};
use crate::error::{Error, Result};
use crate::fincat::{Constant, FinCat, ObjId};
use crate::functor::{ConstFunctor, Functor, NatTrans, Picked};
use crate::value::Value;

use super::ast::Op;

/// The value of an inline constant.
pub fn constant(op: Op) -> Value {
    match op {
        Op::Zero => FinCat::constant(Constant::Zero).into(),
        Op::One => FinCat::constant(Constant::One).into(),
        Op::Two => FinCat::constant(Constant::Two).into(),
        Op::IsoTwo => FinCat::constant(Constant::IsoTwo).into(),
        Op::S => Functor::constant(ConstFunctor::S).into(),
        Op::T => Functor::constant(ConstFunctor::T).into(),
        other => panic!("{other} is not a constant"),
    }
}

fn functor_or_identity(v: &Value) -> Option<Functor> {
    match v {
        Value::Category(c) => Some(Functor::identity(c)),
        Value::Functor(f) => Some(f.clone()),
        _ => None,
    }
}

fn is_two_like(c: &FinCat) -> bool {
    *c == FinCat::constant(Constant::Two) || *c == FinCat::constant(Constant::IsoTwo)
}

/// Applies `op` and returns its outputs in order. Every output category is
/// checked against `bounds`.
pub fn apply(op: Op, args: &[Value], bounds: Bounds) -> Result<Vec<Value>> {
    if !op.arities().contains(&args.len()) {
        return Err(Error::ty(format!("{op} takes {:?} arguments, got {}", op.arities(), args.len())));
    }
    let out = eval(op, args, bounds)?;
    for v in &out {
        for c in v.categories() {
            bounds.check(c, op.name())?;
        }
    }
    Ok(out)
}

fn eval(op: Op, args: &[Value], bounds: Bounds) -> Result<Vec<Value>> {
    let one = |v: Value| Ok(vec![v]);
    match op {
        Op::Zero | Op::One | Op::Two | Op::IsoTwo => one(constant(op)),
        Op::S | Op::T if args.is_empty() => one(constant(op)),
        Op::S | Op::T => {
            let c = args[0].as_category()?;
            if !is_two_like(c) {
                return Err(Error::ty(format!("{op}(X) needs X to be Two or IsoTwo")));
            }
            let o = if op == Op::S { ObjId(0) } else { ObjId(1) };
            one(Functor::determine_object(c, o)?.into())
        }
        Op::Bang => {
            let (a, b) = (args[0].as_category()?, args[1].as_category()?);
            if a.n_objects() == 0 {
                one(Functor::from_empty(a, b).into())
            } else if b.n_objects() == 1 && b.n_morphisms() == 1 {
                one(Functor::to_terminal(a, b).into())
            } else {
                Err(Error::ty("Bang(A, B) needs A empty or B terminal"))
            }
        }
        Op::Ident => match &args[0] {
            Value::Category(c) => one(Functor::identity(c).into()),
            Value::Functor(f) => one(NatTrans::identity(f).into()),
            v => Err(Error::ty(format!("Ident of a {}", v.kind()))),
        },
        Op::Source | Op::Target => {
            let src = op == Op::Source;
            match &args[0] {
                Value::Functor(f) => one(Value::Category(if src { f.dom() } else { f.cod() }.clone())),
                Value::NatTrans(a) => one(Value::Functor(if src { a.source() } else { a.target() }.clone())),
                Value::Morphism { home, id } => {
                    let o = if src { home.src(*id) } else { home.tgt(*id) };
                    one(Value::Object { home: home.clone(), id: o })
                }
                v => Err(Error::ty(format!("{op} of a {}", v.kind()))),
            }
        }
        Op::Op => match &args[0] {
            Value::Category(c) => one(c.opposite().into()),
            Value::Functor(f) => one(f.opposite().into()),
            Value::NatTrans(a) => one(a.opposite().into()),
            v => Err(Error::ty(format!("Op of a {}", v.kind()))),
        },
        Op::Pick => {
            let f = args[0].as_functor()?;
            let home = f.cod().clone();
            one(match f.pick()? {
                Picked::Object(id) => Value::Object { home, id },
                Picked::Morphism(id) => Value::Morphism { home, id },
            })
        }
        Op::Determine => {
            let x = args.last().unwrap();
            if args.len() == 2 {
                let c = args[0].as_category()?;
                if x.categories().first().map(|h| *h != c).unwrap_or(true) {
                    return Err(Error::ty("Determine(C, x): x does not belong to C"));
                }
            }
            match x {
                Value::Object { home, id } => one(Functor::determine_object(home, *id)?.into()),
                Value::Morphism { home, id } => one(Functor::determine_morphism(home, *id)?.into()),
                v => Err(Error::ty(format!("Determine of a {}", v.kind()))),
            }
        }
        Op::Hcomp => {
            if let (Some(f), Some(g)) = (functor_or_identity(&args[0]), functor_or_identity(&args[1])) {
                return one(f.after(&g)?.into());
            }
            let (b, a) = (args[0].promote()?, args[1].promote()?);
            one(b.hcomp(&a)?.into())
        }
        Op::Vcomp => {
            if let (Some(f), Some(g)) = (functor_or_identity(&args[0]), functor_or_identity(&args[1])) {
                if f != g {
                    return Err(Error::ty("Vcomp of two different functors"));
                }
                return one(f.into());
            }
            let (b, a) = (args[0].promote()?, args[1].promote()?);
            one(b.vcomp(&a)?.into())
        }
        Op::Pow => power(&args[0], &args[1], bounds),
        Op::KanExL | Op::KanExR => {
            let (g, f) = (args[0].as_functor()?, args[1].as_functor()?);
            let side = if op == Op::KanExL { Side::Left } else { Side::Right };
            let kr = kan_extension(side, g, f)?;
            Ok(vec![kr.extension.into(), kr.unit.into()])
        }
        Op::KanInd => {
            let (g, f, h) = (args[0].as_functor()?, args[1].as_functor()?, args[2].as_functor()?);
            let beta = args[3].as_nat_trans()?;
            let hg = h.after(g)?;
            let side = if *beta.source() == hg && beta.target() == f {
                Side::Right
            } else if beta.source() == f && *beta.target() == hg {
                Side::Left
            } else {
                return Err(Error::ty("KanInd: beta must go H.G => F or F => H.G"));
            };
            let kr = kan_extension(side, g, f)?;
            one(kan_induced(side, g, &kr, h, beta)?.into())
        }
        Op::KanLif => {
            let (g, f) = (args[0].as_functor()?, args[1].as_functor()?);
            let kr = kan_lifting(g, f)?;
            Ok(vec![kr.extension.into(), kr.unit.into()])
        }
        Op::Coprod => match (&args[0], &args[1]) {
            (Value::Category(a), Value::Category(b)) => {
                let s = constructions::coproduct(a, b);
                Ok(vec![s.category.into(), s.left.into(), s.right.into()])
            }
            (Value::Functor(f), Value::Functor(g)) => {
                let s = constructions::coproduct(f.dom(), g.dom());
                one(constructions::copair(&s, f, g)?.into())
            }
            (x, y) => Err(Error::ty(format!("Coprod of a {} and a {}", x.kind(), y.kind()))),
        },
        Op::Coeq => {
            let (f, g) = (args[0].as_functor()?, args[1].as_functor()?);
            let (q, quot) = coequalizer(f, g, bounds)?;
            Ok(vec![q.into(), quot.into()])
        }
        Op::Pullback => {
            let (f, g) = (args[0].as_functor()?, args[1].as_functor()?);
            let p = constructions::pullback(f, g)?;
            Ok(vec![p.category.into(), p.left.into(), p.right.into()])
        }
        Op::Composable => one(composable_functor(args[0].as_category()?, bounds)?.into()),
    }
}

fn power(x: &Value, y: &Value, bounds: Bounds) -> Result<Vec<Value>> {
    match (x, y) {
        (Value::Category(a), Value::Category(b)) => {
            Ok(vec![FunctorCategory::new(a, b, bounds)?.category.into()])
        }
        (Value::Functor(f), Value::Category(c)) => {
            let from = FunctorCategory::new(f.cod(), c, bounds)?;
            let to = FunctorCategory::new(f.dom(), c, bounds)?;
            Ok(vec![pow::precompose(f, &from, &to)?.into()])
        }
        (Value::Category(c), Value::Functor(k)) => {
            let from = FunctorCategory::new(c, k.dom(), bounds)?;
            let to = FunctorCategory::new(c, k.cod(), bounds)?;
            Ok(vec![pow::postcompose(k, &from, &to)?.into()])
        }
        (a, b) => Err(Error::ty(format!("Pow of a {} and a {}", a.kind(), b.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn pow_two_two() {
        let two = constant(Op::Two);
        let out = apply(Op::Pow, &[two.clone(), two], Bounds::default()).unwrap();
        assert_eq!(*out[0].as_category().unwrap().as_ref(), FinCat::chain(3));
    }

    #[test]
    fn endpoints_of_iso_two() {
        let iso = constant(Op::IsoTwo);
        let s = apply(Op::S, std::slice::from_ref(&iso), Bounds::default()).unwrap();
        let t = apply(Op::T, &[iso], Bounds::default()).unwrap();
        assert_ne!(s, t);
        assert!(apply(Op::S, &[constant(Op::One)], Bounds::default()).is_err());
    }

    #[test]
    fn bang_cases() {
        let (z, o, t) = (constant(Op::Zero), constant(Op::One), constant(Op::Two));
        assert!(apply(Op::Bang, &[z, t.clone()], Bounds::default()).is_ok());
        assert!(apply(Op::Bang, &[t.clone(), o], Bounds::default()).is_ok());
        assert!(matches!(apply(Op::Bang, &[t.clone(), t], Bounds::default()), Err(Error::Type(_))));
    }

    #[test]
    fn pick_and_determine() {
        let s = constant(Op::S);
        let x = apply(Op::Pick, std::slice::from_ref(&s), Bounds::default()).unwrap().remove(0);
        assert!(matches!(x, Value::Object { id: ObjId(0), .. }));
        let back = apply(Op::Determine, &[x], Bounds::default()).unwrap().remove(0);
        assert_eq!(back, s);
    }

    #[test]
    fn mismatched_kan_is_a_type_error() {
        let r = apply(Op::KanExR, &[constant(Op::S), Value::Functor(Functor::identity(&Arc::new(FinCat::constant(Constant::Two))))], Bounds::default());
        assert!(matches!(r, Err(Error::Type(_))));
    }
}
