//! Macro library and number encodings.

use std::fmt::Write;
use std::sync::Arc;

use crate::fincat::{Constant, FinCat, MorId, ObjId};
use crate::functor::Functor;
use crate::value::Value;

use super::ast::Program;
use super::interp::Env;
use super::parser::parse;

pub const SPAN_CATEGORY: &str = include_str!("../../sam/span_category.sam");
pub const ISO_TWO_ATTEMPT: &str = include_str!("../../sam/iso_two_attempt.sam");
pub const OMEGA: &str = include_str!("../../sam/omega.sam");
pub const SKELETON: &str = include_str!("../../sam/skeleton.sam");
pub const COMMA: &str = include_str!("../../sam/comma.sam");
pub const CONCAT_NUMBERS: &str = include_str!("../../sam/concat_numbers.sam");
pub const BINARY_READER: &str = include_str!("../../sam/binary_reader.sam");

/// Statement count bound `a * floor(log2 n) + b` met by [`binary_encode`].
pub const BINARY_ENCODE_SLOPE: usize = 24;
pub const BINARY_ENCODE_OFFSET: usize = 3;

/// All shipped macros by name.
pub fn stdlib() -> Vec<(&'static str, Program)> {
    [
        ("span_category", SPAN_CATEGORY),
        ("iso_two_attempt", ISO_TWO_ATTEMPT),
        ("omega", OMEGA),
        ("skeleton", SKELETON),
        ("comma", COMMA),
        ("concat_numbers", CONCAT_NUMBERS),
        ("binary_reader", BINARY_READER),
    ]
    .into_iter()
    .map(|(n, t)| (n, parse(t).expect("shipped macro parses")))
    .collect()
}

pub fn macro_program(name: &str) -> Option<Program> {
    stdlib().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
}

/// Appends the eight statements gluing the end of `N` to the start of
/// `other` (either `N` itself or the constant `Two`).
fn concat_block(out: &mut String, other: &str) {
    let (yb, ye) = if other == "N" { ("Nb", "Ne") } else { ("S", "T") };
    let _ = writeln!(out, "D, i, j = Coprod(N, {other})");
    let _ = writeln!(out, "e = Hcomp(i, Ne)");
    let _ = writeln!(out, "b = Hcomp(j, {yb})");
    let _ = writeln!(out, "N, q = Coeq(e, b)");
    let _ = writeln!(out, "t1 = Hcomp(i, Nb)");
    let _ = writeln!(out, "t2 = Hcomp(j, {ye})");
    let _ = writeln!(out, "Nb = Hcomp(q, t1)");
    let _ = writeln!(out, "Ne = Hcomp(q, t2)");
}

/// A program without inputs building the chain with `n` objects by
/// doubling along the binary digits of `n`: `m -> 2m` glues the chain to
/// itself and appends an arrow, `m -> 2m + 1` appends one more.
pub fn binary_encode(n: u64) -> Program {
    assert!(n >= 1, "numbers start at 1");
    let mut text = String::from("N = One\nNb = Ident(One)\nNe = Ident(One)\n");
    let bits = 64 - n.leading_zeros();
    for k in (0..bits - 1).rev() {
        concat_block(&mut text, "N");
        concat_block(&mut text, "Two");
        if n >> k & 1 == 1 {
            concat_block(&mut text, "Two");
        }
    }
    text.push_str("Return N\n");
    parse(&text).expect("generated program parses")
}

/// `(n, P_b, P_e)` as an environment `{prefix, prefix_b, prefix_e}`.
pub fn number_env(n: usize, names: [&str; 3]) -> Env {
    let c = Arc::new(FinCat::chain(n));
    let mut env = Env::new();
    env.insert(names[1].into(), Functor::determine_object(&c, ObjId(0)).unwrap().into());
    env.insert(names[2].into(), Functor::determine_object(&c, ObjId(n as u32 - 1)).unwrap().into());
    env.insert(names[0].into(), Value::Category(c));
    env
}

/// Input for the binary reader: the digits of `n` as a functor
/// `k -> IsoTwo`, most significant digit at object 0.
pub fn binary_input(n: u64) -> Functor {
    assert!(n >= 1);
    let k = (64 - n.leading_zeros()) as usize;
    let chain = Arc::new(FinCat::chain(k));
    let iso = Arc::new(FinCat::constant(Constant::IsoTwo));
    let bit = |x: usize| ObjId((n >> (k - 1 - x) & 1) as u32);
    let obj_map: Vec<ObjId> = (0..k).map(bit).collect();
    let mor_map: Vec<MorId> = chain
        .morphisms()
        .map(|m| iso.hom(obj_map[chain.src(m).idx()], obj_map[chain.tgt(m).idx()])[0])
        .collect();
    Functor::new(chain, iso, obj_map, mor_map).expect("maps into a codiscrete category are functors")
}
