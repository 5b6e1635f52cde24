use sammy::lang::stdlib::{
    binary_encode, binary_input, macro_program, number_env, BINARY_ENCODE_OFFSET, BINARY_ENCODE_SLOPE,
};
use sammy::constructions::Bounds;
use sammy::lang::{parse, run, run_with_env, Env, Limits};
use sammy::{Error, FinCat, Functor, ObjId, Value};

/// Room for chains of up to 100 objects.
fn roomy() -> Limits {
    Limits { bounds: Bounds { max_objects: 4096, max_morphisms: 6000 }, ..Limits::default() }
}

fn log2_floor(n: u64) -> usize {
    63 - n.leading_zeros() as usize
}

#[test]
fn binary_encoding_length_bound() {
    for n in 2..=4096u64 {
        let len = binary_encode(n).length();
        assert!(len <= BINARY_ENCODE_SLOPE * log2_floor(n) + BINARY_ENCODE_OFFSET, "n = {n}: {len}");
    }
}

#[test]
fn binary_encoding_builds_the_chain() {
    for n in (1..=40u64).chain([63, 64, 65, 100]) {
        let v = run(&binary_encode(n), &Env::new(), roomy()).unwrap();
        assert_eq!(**v.as_category().unwrap(), FinCat::chain(n as usize), "n = {n}");
    }
}

#[test]
fn reader_has_one_length_for_every_input() {
    let p = macro_program("binary_reader").unwrap();
    let len = p.length();
    for n in [1u64, 2, 3, 7, 8, 20, 33] {
        let mut env = Env::new();
        env.insert("F".into(), binary_input(n).into());
        let v = run(&p, &env, roomy()).unwrap();
        assert_eq!(**v.as_category().unwrap(), FinCat::chain(n as usize), "n = {n}");
        assert_eq!(macro_program("binary_reader").unwrap().length(), len);
    }
}

#[test]
fn concatenation_of_numbers() {
    let p = macro_program("concat_numbers").unwrap();
    for n in 1..=12usize {
        for m in 1..=12usize {
            let mut env = number_env(n, ["X", "Xb", "Xe"]);
            env.extend(number_env(m, ["Y", "Yb", "Ye"]));
            let (v, env) = run_with_env(&p, &env, Limits::default()).unwrap();
            let z = v.as_category().unwrap();
            assert_eq!(**z, FinCat::chain(n + m - 1), "{n} + {m}");
            assert_eq!(env["Zb"], Value::Functor(Functor::determine_object(z, ObjId(0)).unwrap()));
            assert_eq!(env["Ze"], Value::Functor(Functor::determine_object(z, ObjId((n + m - 2) as u32)).unwrap()));
        }
    }
}

#[test]
fn control_flow_loops_until_equal() {
    // walk along T until reaching the end object; the loop runs once
    let text = "\
x = Pick(S)
e = Pick(T)
L: If x == e Goto Done
x = Pick(T)
Goto L
Done: Return x
";
    let v = run(&parse(text).unwrap(), &Env::new(), Limits::default()).unwrap();
    assert!(matches!(v, Value::Object { id: ObjId(1), .. }));
}

#[test]
fn infinite_loop_hits_the_step_limit() {
    let p = parse("L: A = One\nGoto L\nReturn A").unwrap();
    let e = run(&p, &Env::new(), Limits { max_steps: 50, ..Limits::default() }).unwrap_err();
    assert!(matches!(e, Error::StepLimit(50)));
}

#[test]
fn parse_errors_carry_positions() {
    match parse("A = One\nB = Frob(A)\n").unwrap_err() {
        Error::Parse { line, col, .. } => assert_eq!((line, col), (2, 5)),
        e => panic!("{e}"),
    }
    assert!(matches!(parse("A = Cat"), Err(Error::Parse { .. })));
    assert!(matches!(parse("A = One\nReturn Q"), Err(Error::Parse { .. })));
}

#[test]
fn type_errors_name_the_statement() {
    let e = run(&parse("A = Source(One)\nReturn A").unwrap(), &Env::new(), Limits::default()).unwrap_err();
    match e {
        Error::Type(m) => assert!(m.contains("line 1"), "{m}"),
        e => panic!("{e}"),
    }
}

#[test]
fn missing_input_is_reported() {
    let p = parse("Input C : category\nReturn C").unwrap();
    assert!(matches!(run(&p, &Env::new(), Limits::default()), Err(Error::Runtime(_))));
}
