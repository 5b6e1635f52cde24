use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use sammy::complexity::{
    default_pool, equivalence_experiment, k_search, theorem_constants, Budget, Mode, SearchConfig, Suite,
};
use sammy::constructions::{skeleton, Bounds};
use sammy::iso::{entropy, equivalent, isomorphic};
use sammy::json::{self, CategoryDoc};
use sammy::lang::{parse, run, stdlib, Env, Limits, Program};
use sammy::{Error, FinCat, Value};

#[derive(Parser, Debug)]
#[command(name = "sammy", version, about = "Finite categories, the Sammy language and shortest-program search")]
struct Cli {
    /// Statement budget for `run`.
    #[arg(long, global = true, value_parser = positive)]
    max_steps: Option<usize>,
    /// Object bound for constructed categories.
    #[arg(long, global = true, value_parser = positive)]
    max_objects: Option<usize>,
    /// Morphism bound for constructed categories.
    #[arg(long, global = true, value_parser = positive)]
    max_morphisms: Option<usize>,
    /// Search states expanded over all lengths.
    #[arg(long, global = true, value_parser = positive)]
    max_states: Option<usize>,
    /// Longest program the search considers.
    #[arg(long, global = true)]
    max_len: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "iso")]
    mode: ModeArg,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Iso,
    Eq,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a program (a path, or @name for a shipped macro).
    Run {
        program: String,
        /// Bind an input, NAME=path to a value document.
        #[arg(long = "input", short = 'i', value_parser = binding)]
        inputs: Vec<(String, PathBuf)>,
    },
    /// Check the category laws of a table.
    Check { category: PathBuf },
    /// Find an isomorphism between two categories.
    Iso { a: PathBuf, b: PathBuf },
    /// Decide whether two categories are equivalent.
    Equiv { a: PathBuf, b: PathBuf },
    /// Print the skeleton of a category.
    Skeleton { category: PathBuf },
    /// log2 of the number of automorphisms.
    Entropy { category: PathBuf },
    /// Shortest straight-line program producing a value.
    Search {
        target: PathBuf,
        /// Make a value available as an input, NAME=path.
        #[arg(long = "given", short = 'g', value_parser = binding)]
        given: Vec<(String, PathBuf)>,
    },
    /// Measured inequality constants and the equivalence experiment.
    Theorems { suite: Option<PathBuf> },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn binding(s: &str) -> Result<(String, PathBuf), String> {
    let (n, p) = s.split_once('=').ok_or("expected NAME=path")?;
    if n.is_empty() {
        return Err("empty name".into());
    }
    Ok((n.to_string(), PathBuf::from(p)))
}

/// A failure with the exit code it maps to.
struct Failure {
    class: &'static str,
    code: u8,
    msg: String,
    partial: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => 2,
            Error::Parse { .. } | Error::Json(_) => 3,
            Error::Invalid(_) => 4,
            Error::Type(_) => 5,
            Error::SizeBound { .. } => 6,
            Error::StepLimit(_) => 7,
            Error::NoUniversal(_) => 8,
            Error::BudgetExhausted(_) => 9,
            Error::Runtime(_) => 10,
            Error::Internal(_) => 11,
        };
        Failure { class: e.class(), code, msg: e.to_string(), partial: None }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { class: "IoError", code: 2, msg: format!("{}: {e}", path.display()), partial: None }
}

type Out = Result<String, Failure>;

struct Ctx {
    json: bool,
    limits: Limits,
    search: SearchConfig,
}

impl Ctx {
    fn new(cli: &Cli) -> Ctx {
        let run_bounds = Bounds::default();
        let limits = Limits {
            max_steps: cli.max_steps.unwrap_or(Limits::default().max_steps),
            bounds: Bounds {
                max_objects: cli.max_objects.unwrap_or(run_bounds.max_objects),
                max_morphisms: cli.max_morphisms.unwrap_or(run_bounds.max_morphisms),
            },
        };
        let d = Budget::default();
        let budget = Budget {
            max_len: cli.max_len.unwrap_or(d.max_len),
            max_objects: cli.max_objects.unwrap_or(d.max_objects),
            max_morphisms: cli.max_morphisms.unwrap_or(d.max_morphisms),
            max_states: cli.max_states.unwrap_or(d.max_states),
        };
        let mode = match cli.mode {
            ModeArg::Iso => Mode::Iso,
            ModeArg::Eq => Mode::Eq,
        };
        Ctx { json: cli.json, limits, search: SearchConfig { mode, budget, workers: cli.workers } }
    }

    fn emit<T: Serialize>(&self, v: &T, text: impl FnOnce() -> String) -> String {
        if self.json {
            serde_json::to_string_pretty(v).expect("serializable") + "\n"
        } else {
            text()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn read_value(path: &Path) -> Result<Value, Failure> {
    Ok(json::value_from_str(&read(path)?)?)
}

fn read_category(path: &Path) -> Result<Arc<FinCat>, Failure> {
    Ok(read_value(path)?.as_category()?.clone())
}

fn load_program(spec: &str) -> Result<Program, Failure> {
    match spec.strip_prefix('@') {
        Some(name) => stdlib::macro_program(name).ok_or_else(|| {
            let known: Vec<_> = stdlib::stdlib().into_iter().map(|(n, _)| n).collect();
            Failure {
                class: "Usage",
                code: 1,
                msg: format!("no macro named '{name}' (known: {})", known.join(", ")),
                partial: None,
            }
        }),
        None => Ok(parse(&read(Path::new(spec))?)?),
    }
}

fn cmd_run(ctx: &Ctx, program: &str, inputs: &[(String, PathBuf)]) -> Out {
    let p = load_program(program)?;
    let mut env = Env::new();
    for (n, path) in inputs {
        env.insert(n.clone(), read_value(path)?);
    }
    let v = run(&p, &env, ctx.limits)?;
    Ok(json::value_to_string(&v) + "\n")
}

#[derive(Serialize)]
struct CheckReport {
    valid: bool,
    violations: Vec<sammy::Violation>,
}

fn cmd_check(ctx: &Ctx, path: &Path) -> Out {
    let table = json::table_from_str(&read(path)?)?;
    let violations = table.validate();
    let report = CheckReport { valid: violations.is_empty(), violations };
    let out = ctx.emit(&report, || {
        if report.valid {
            "valid\n".to_string()
        } else {
            report.violations.iter().map(|v| format!("{v}\n")).collect()
        }
    });
    if report.valid {
        Ok(out)
    } else {
        print!("{out}");
        Err(Error::Invalid(report.violations).into())
    }
}

#[derive(Serialize)]
struct IsoReport {
    isomorphic: bool,
    witness: Option<serde_json::Value>,
}

fn cmd_iso(ctx: &Ctx, a: &Path, b: &Path) -> Out {
    let (a, b) = (read_category(a)?, read_category(b)?);
    let w = isomorphic(&a, &b);
    let witness = w.as_ref().map(|f| {
        serde_json::from_str(&json::value_to_string(&Value::Functor(f.clone()))).expect("valid json")
    });
    let report = IsoReport { isomorphic: w.is_some(), witness };
    Ok(ctx.emit(&report, || match &w {
        Some(f) => {
            let objs: Vec<String> = f.obj_map().iter().enumerate().map(|(i, o)| format!("{i}->{}", o.0)).collect();
            let mors: Vec<String> = f.mor_map().iter().enumerate().map(|(i, m)| format!("{i}->{}", m.0)).collect();
            format!("isomorphic\nobjects    {}\nmorphisms  {}\n", objs.join(" "), mors.join(" "))
        }
        None => "not isomorphic\n".to_string(),
    }))
}

fn cmd_equiv(ctx: &Ctx, a: &Path, b: &Path) -> Out {
    let e = equivalent(&read_category(a)?, &read_category(b)?);
    Ok(ctx.emit(&serde_json::json!({ "equivalent": e }), || format!("{e}\n")))
}

fn cmd_skeleton(path: &Path) -> Out {
    let s = skeleton(&read_category(path)?);
    Ok(json::category_to_string(&s.category) + "\n")
}

fn cmd_entropy(ctx: &Ctx, path: &Path) -> Out {
    let c = read_category(path)?;
    let h = entropy(&c);
    let n = sammy::iso::automorphisms(&c);
    Ok(ctx.emit(&serde_json::json!({ "entropy": h, "automorphisms": n }), || format!("{h:.12}\n")))
}

fn cmd_search(ctx: &Ctx, target: &Path, given: &[(String, PathBuf)]) -> Out {
    let t = read_value(target)?;
    let mut g = Vec::new();
    for (n, path) in given {
        g.push((n.clone(), read_value(path)?));
    }
    match k_search(&t, &g, &ctx.search) {
        Ok(r) => Ok(ctx.emit(&r, || r.to_text())),
        Err(Error::BudgetExhausted(r)) => {
            let partial = ctx.emit(&*r, || r.to_text());
            let mut f = Failure::from(Error::BudgetExhausted(r));
            f.partial = Some(partial);
            Err(f)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Deserialize)]
struct Entry {
    name: String,
    category: CategoryDoc,
}

#[derive(Deserialize)]
struct SuiteDoc {
    categories: Vec<Entry>,
    #[serde(default)]
    pairs: Vec<(String, String)>,
    #[serde(default)]
    pool: Option<Vec<Entry>>,
}

fn entries(v: Vec<Entry>) -> Result<Vec<(String, Arc<FinCat>)>, Failure> {
    v.into_iter().map(|e| Ok((e.name, Arc::new(e.category.to_category()?)))).collect()
}

fn load_suite(path: &Path) -> Result<(Suite, Vec<(String, Arc<FinCat>)>), Failure> {
    let doc: SuiteDoc = serde_json::from_str(&read(path)?).map_err(Error::from)?;
    let categories = entries(doc.categories)?;
    let index: BTreeMap<&str, usize> = categories.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect();
    let find = |n: &str| {
        index.get(n).copied().ok_or_else(|| Failure::from(Error::Type(format!("suite pair names unknown category '{n}'"))))
    };
    let pairs = doc.pairs.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>, Failure>>()?;
    let pool = match doc.pool {
        Some(p) => entries(p)?,
        None => default_pool(),
    };
    Ok((Suite { categories, pairs }, pool))
}

fn cmd_theorems(ctx: &Ctx, suite: Option<&Path>) -> Out {
    let (suite, pool) = match suite {
        Some(p) => load_suite(p)?,
        None => (Suite::default(), default_pool()),
    };
    let table = theorem_constants(&suite, &ctx.search);
    let eq = equivalence_experiment(&pool, &ctx.search);
    Ok(ctx.emit(&serde_json::json!({ "theorems": table, "equivalence": eq }), || {
        format!("{}\n{}", table.to_text(), eq.to_text())
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx::new(&cli);
    let out = match &cli.cmd {
        Cmd::Run { program, inputs } => cmd_run(&ctx, program, inputs),
        Cmd::Check { category } => cmd_check(&ctx, category),
        Cmd::Iso { a, b } => cmd_iso(&ctx, a, b),
        Cmd::Equiv { a, b } => cmd_equiv(&ctx, a, b),
        Cmd::Skeleton { category } => cmd_skeleton(category),
        Cmd::Entropy { category } => cmd_entropy(&ctx, category),
        Cmd::Search { target, given } => cmd_search(&ctx, target, given),
        Cmd::Theorems { suite } => cmd_theorems(&ctx, suite.as_deref()),
    };
    let mut stdout = std::io::stdout().lock();
    match out {
        Ok(s) => {
            let _ = stdout.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(p) = f.partial {
                let _ = stdout.write_all(p.as_bytes());
            }
            let _ = stdout.flush();
            eprintln!("error[{}]: {}", f.class, f.msg);
            ExitCode::from(f.code)
        }
    }
}
