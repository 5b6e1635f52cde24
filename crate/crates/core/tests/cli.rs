use std::path::PathBuf;
use std::process::{Command, Output};

use sammy::{json, Constant, FinCat, MorId};

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn file(name: &str, text: &str) -> String {
    let p = dir().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn cat_file(name: &str, c: &FinCat) -> String {
    file(name, &json::category_to_string(c))
}

fn sammy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sammy")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn span_macro_prints_three_objects() {
    let o = sammy(&["run", "@span_category"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let c = json::value_from_str(&stdout(&o)).unwrap();
    assert_eq!(c.as_category().unwrap().n_objects(), 3);
}

#[test]
fn omega_is_a_size_bound_error() {
    let o = sammy(&["run", "@omega"]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stderr(&o).contains("Coeq"), "{}", stderr(&o));
}

#[test]
fn missing_files_are_io_errors() {
    let o = sammy(&["run", "/nonexistent/prog.sammy"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sammy(&["run", "@comma", "-i", "L=/nonexistent/l.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_macro_and_bad_flags_are_usage_errors() {
    assert_eq!(sammy(&["run", "@nope"]).status.code(), Some(1));
    assert_eq!(sammy(&["--max-len", "x", "run", "@span_category"]).status.code(), Some(1));
    assert_eq!(sammy(&["--max-states", "0", "search", "x"]).status.code(), Some(1));
    assert_eq!(sammy(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_lists_violations() {
    let mut c = FinCat::chain(3);
    let good = cat_file("chain3.json", &c);
    assert_eq!(sammy(&["check", &good]).status.code(), Some(0));
    // send the composite of the two generating arrows back to the first one
    let (a, b) = (c.hom(sammy::ObjId(0), sammy::ObjId(1))[0], c.hom(sammy::ObjId(1), sammy::ObjId(2))[0]);
    c.set_comp_unchecked(b, a, Some(MorId(a.0)));
    let bad = cat_file("broken.json", &c);
    let o = sammy(&["--json", "check", &bad]);
    assert_eq!(o.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["valid"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn iso_two_is_equivalent_to_one() {
    let a = cat_file("isotwo.json", &FinCat::constant(Constant::IsoTwo));
    let b = cat_file("one.json", &FinCat::constant(Constant::One));
    let o = sammy(&["--json", "equiv", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["equivalent"], true);
    let o = sammy(&["--json", "iso", &a, &b]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["isomorphic"], false);
    let o = sammy(&["skeleton", &a]);
    let s = json::category_from_str(&stdout(&o)).unwrap();
    assert_eq!(s, FinCat::constant(Constant::One));
}

#[test]
fn entropy_of_three_points() {
    let p = cat_file("discrete3.json", &FinCat::discrete(3));
    let o = sammy(&["--json", "entropy", &p]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((r["entropy"].as_f64().unwrap() - 6f64.log2()).abs() < 1e-9);
    assert_eq!(r["automorphisms"], 6);
}

#[test]
fn search_finds_zero_in_one_statement() {
    let p = cat_file("zero.json", &FinCat::constant(Constant::Zero));
    let o = sammy(&["--json", "--max-len", "2", "search", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["k"], 1);
    assert_eq!(r["witness"], "A = Zero\nReturn A\n");
}

#[test]
fn zero_length_search_exhausts_the_budget() {
    let p = cat_file("discrete2.json", &FinCat::discrete(2));
    let o = sammy(&["--json", "--max-len", "0", "search", &p]);
    assert_eq!(o.status.code(), Some(9));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["k"], serde_json::Value::Null);
    assert!(stderr(&o).contains("BudgetExhausted"));
}

#[test]
fn theorems_on_a_small_suite() {
    let doc = |c: FinCat| serde_json::from_str::<serde_json::Value>(&json::category_to_string(&c)).unwrap();
    let suite = serde_json::json!({
        "categories": [
            {"name": "One", "category": doc(FinCat::constant(Constant::One))},
            {"name": "Two", "category": doc(FinCat::constant(Constant::Two))},
        ],
        "pairs": [["One", "Two"]],
        "pool": [
            {"name": "One", "category": doc(FinCat::constant(Constant::One))},
            {"name": "IsoTwo", "category": doc(FinCat::constant(Constant::IsoTwo))},
        ],
    });
    let p = file("suite.json", &suite.to_string());
    let o = sammy(&["--json", "--max-len", "3", "theorems", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in r["theorems"]["rows"].as_array().unwrap() {
        assert_eq!(row["verdict"], "holds", "{row}");
    }
    assert_eq!(r["equivalence"]["classes"][0]["verdict"], "holds");
}
