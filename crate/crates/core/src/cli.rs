//! Command-line front end. Every subcommand reads JSON files (or inline JSON) and prints JSON.

use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::convex::{
    conjugate, floor_body, lift_ha, replace_by_body, support_lift, DcPair, PolyConvexFunction, Value as FnValue,
};
use crate::dual::{epi_distance, epi_mult, inf_conv};
use crate::error::{Error, Result};
use crate::geom::Polyhedron;
use crate::hessian::{dc_decompose_catalog, integrate_against_theta0, subdifferential, theta0, PiecewisePolyDensity, Shape};
use crate::json::{
    decomposition_json, field, polynomial_json, support_report_json, to_float_mode, verify_report_json, Json,
};
use crate::scalar::{Mode, Point, Scalar};
use crate::suite;
use crate::valuation::{
    affine_poly_fit, decompose_homogeneous, dualize_valuation, epi_translation_fit, extend_valuation, gw_evaluate,
    polarize, support_estimate, verify_valuation_identity, Probe, Valuation,
};

pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_FALSIFIED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cvlab", version, about = "Exact lab for valuations on convex PL functions")]
struct Cli {
    /// Output arithmetic; CVLAB_MODE overrides it.
    #[arg(long, global = true, default_value = "rational")]
    mode: String,
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Operations on PL convex functions.
    #[command(name = "fn")]
    Func {
        #[command(subcommand)]
        cmd: FnCmd,
    },
    /// Bodies in R^{n+1} and their functions.
    Body {
        #[command(subcommand)]
        cmd: BodyCmd,
    },
    /// Epi-calculus and conjugation.
    Dual {
        #[command(subcommand)]
        cmd: DualCmd,
    },
    /// Subdifferentials and Hessian measures.
    Measure {
        #[command(subcommand)]
        cmd: MeasureCmd,
    },
    /// Valuations.
    Val {
        #[command(subcommand)]
        cmd: ValCmd,
    },
    /// Acceptance suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand, Debug)]
enum FnCmd {
    Eval { f: String, x: String },
    Max { f: String, g: String },
    Min { f: String, g: String },
    Add { f: String, g: String },
    Scale { f: String, t: String },
    Conj { f: String },
    Translate { f: String, x: String, t: String },
}

#[derive(Subcommand, Debug)]
enum BodyCmd {
    /// `h_K(·,−1)`, plus `I_A` when `--a` is given.
    Lift {
        k: String,
        #[arg(long)]
        a: Option<String>,
    },
    Floor { k: String },
    Replace { f: String, a: String, eps: String },
}

#[derive(Subcommand, Debug)]
enum DualCmd {
    Conj { f: String },
    Infconv { f: String, g: String },
    Epimult { f: String, lambda: String },
    Dist { f: String, g: String, rho: String },
    Dualize { z: String },
}

#[derive(Subcommand, Debug)]
enum MeasureCmd {
    Subdiff { f: String, x: String },
    Theta0 { f: String, region: String },
    Integrate { f: String, phi: String, region: String },
}

#[derive(Args, Debug)]
struct MakeArgs {
    /// top_degree, dirichlet, dualized, extended, component, broken_max or zero.
    kind: String,
    /// Parameter object or file.
    #[arg(long, default_value = "{}")]
    params: String,
    /// Cone object or file.
    #[arg(long)]
    cone: Option<String>,
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Subcommand, Debug)]
enum ValCmd {
    Make(MakeArgs),
    Eval { z: String, f: String },
    /// Fits `ℓ ↦ Z(f+ℓ)`; with `--epi` fits `X ↦ Z(τ_X f)` instead.
    Fit {
        z: String,
        f: String,
        #[arg(long)]
        epi: bool,
    },
    Decompose {
        z: String,
        f: String,
        #[arg(long)]
        nodes: Option<String>,
    },
    Polarize { z: String, fs: Vec<String> },
    /// Test functions are DC pairs `{"g","h"}` or catalog bumps `{"shape","center","delta"}`.
    Gw { z: String, tests: Vec<String> },
    /// Probes as a list of `{"center","delta"}` objects.
    Support { z: String, probes: String },
    Extend { z: String, a: String, cone: String, eps: String },
    Verify {
        z: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteCmd {
    Run { name: String },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Error(Error),
    Falsified(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn load(arg: &str) -> Result<Value> {
    let text = match arg.trim_start().chars().next() {
        Some('{') | Some('[') | Some('"') => arg.to_string(),
        _ if Path::new(arg).exists() => {
            std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?
        }
        // bare numbers and rationals
        _ => return Ok(Value::String(arg.to_string())),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn get<T: Json>(arg: &str) -> Result<T> {
    T::from_json(&load(arg)?)
}

fn value_json(v: &FnValue) -> Value {
    match v {
        FnValue::Finite(x) => x.to_json(),
        FnValue::PlusInfinity => Value::String("+inf".into()),
    }
}

fn test_function(v: &Value) -> Result<DcPair> {
    if let Some(name) = v.get("shape").and_then(Value::as_str) {
        let center: Point = Vec::from_json(field(v, "center")?)?;
        let delta = Scalar::from_json(field(v, "delta")?)?;
        let (g, h) = dc_decompose_catalog(&Shape::from_name(name, center, delta)?)?;
        return DcPair::new(g, h);
    }
    DcPair::from_json(v)
}

fn func(cmd: FnCmd) -> Outcome {
    Ok(match cmd {
        FnCmd::Eval { f, x } => {
            let f: PolyConvexFunction = get(&f)?;
            json!({"value": value_json(&f.eval(&get::<Point>(&x)?))})
        }
        FnCmd::Max { f, g } => get::<PolyConvexFunction>(&f)?.pointwise_max(&get(&g)?)?.to_json(),
        FnCmd::Min { f, g } => match get::<PolyConvexFunction>(&f)?.pointwise_min_checked(&get(&g)?)? {
            Some(m) => m.to_json(),
            None => return Err(Error::NotConvex("the pointwise minimum is not convex".into()).into()),
        },
        FnCmd::Add { f, g } => get::<PolyConvexFunction>(&f)?.add(&get(&g)?)?.to_json(),
        FnCmd::Scale { f, t } => get::<PolyConvexFunction>(&f)?.scale(&get(&t)?)?.to_json(),
        FnCmd::Conj { f } => conjugate(&get(&f)?)?.to_json(),
        FnCmd::Translate { f, x, t } => {
            get::<PolyConvexFunction>(&f)?.epi_translate(&get::<Point>(&x)?, &get(&t)?)?.to_json()
        }
    })
}

fn body(cmd: BodyCmd) -> Outcome {
    Ok(match cmd {
        BodyCmd::Lift { k, a: None } => support_lift(&get(&k)?)?.to_json(),
        BodyCmd::Lift { k, a: Some(a) } => lift_ha(&get(&k)?, &get(&a)?)?.to_json(),
        BodyCmd::Floor { k } => floor_body(&get(&k)?)?.to_json(),
        BodyCmd::Replace { f, a, eps } => replace_by_body(&get(&f)?, &get(&a)?, &get(&eps)?)?.to_json(),
    })
}

fn dual(cmd: DualCmd) -> Outcome {
    Ok(match cmd {
        DualCmd::Conj { f } => conjugate(&get(&f)?)?.to_json(),
        DualCmd::Infconv { f, g } => inf_conv(&get(&f)?, &get(&g)?)?.to_json(),
        DualCmd::Epimult { f, lambda } => epi_mult(&get(&f)?, &get(&lambda)?)?.to_json(),
        DualCmd::Dist { f, g, rho } => {
            let d = epi_distance(&get(&f)?, &get(&g)?, &get(&rho)?)?;
            let d = if d.is_finite() { json!(d) } else { json!("+inf") };
            json!({"distance": d, "mode": "float"})
        }
        DualCmd::Dualize { z } => dualize_valuation(&get(&z)?)?.to_json(),
    })
}

fn measure(cmd: MeasureCmd) -> Outcome {
    Ok(match cmd {
        MeasureCmd::Subdiff { f, x } => subdifferential(&get(&f)?, &get::<Point>(&x)?)?.to_json(),
        MeasureCmd::Theta0 { f, region } => theta0(&get(&f)?, &get(&region)?)?.to_json(),
        MeasureCmd::Integrate { f, phi, region } => {
            let phi: PiecewisePolyDensity = get(&phi)?;
            json!({"value": integrate_against_theta0(&get(&f)?, &phi, &get(&region)?)?.to_json()})
        }
    })
}

fn val(cmd: ValCmd, seed: u64) -> Outcome {
    Ok(match cmd {
        ValCmd::Make(args) => {
            let mut obj = json!({"kind": args.kind, "params": load(&args.params)?, "m": args.m});
            if let Some(c) = args.cone {
                let cone = load(&c)?;
                if let Some(n) = cone.get("n") {
                    obj["n"] = n.clone();
                }
                obj["cone"] = cone;
            }
            Valuation::from_json(&obj)?.to_json()
        }
        ValCmd::Eval { z, f } => {
            json!({"value": get::<Valuation>(&z)?.evaluate(&get(&f)?)?.to_json()})
        }
        ValCmd::Fit { z, f, epi } => {
            let (z, f): (Valuation, PolyConvexFunction) = (get(&z)?, get(&f)?);
            let p = if epi { epi_translation_fit(&z, &f)? } else { affine_poly_fit(&z, &f)? };
            let out = polynomial_json(&p);
            if !p.is_exact() {
                return Err(Failure::Falsified(json!({
                    "reason": "not_polynomial_of_declared_degree",
                    "fit": out,
                    "reproducer": {"Z": z.to_json(), "f": f.to_json()},
                })));
            }
            out
        }
        ValCmd::Decompose { z, f, nodes } => {
            let nodes: Option<Vec<Scalar>> = nodes.map(|n| get(&n)).transpose()?;
            let (z, f): (Valuation, PolyConvexFunction) = (get(&z)?, get(&f)?);
            let r = decompose_homogeneous(&z, &f, nodes.as_deref())?;
            let out = decomposition_json(&r);
            if !r.top_slot_zero || r.sum() != z.evaluate(&f)? {
                return Err(Failure::Falsified(json!({
                    "reason": "decomposition_identity_failed",
                    "result": out,
                    "reproducer": {"Z": z.to_json(), "f": f.to_json()},
                })));
            }
            out
        }
        ValCmd::Polarize { z, fs } => {
            let fs = fs.iter().map(|f| get(f)).collect::<Result<Vec<PolyConvexFunction>>>()?;
            json!({"value": polarize(&get(&z)?, &fs)?.to_json()})
        }
        ValCmd::Gw { z, tests } => {
            let tests = tests.iter().map(|t| test_function(&load(t)?)).collect::<Result<Vec<_>>>()?;
            json!({"value": gw_evaluate(&get(&z)?, &tests)?.to_json()})
        }
        ValCmd::Support { z, probes } => {
            let probes: Vec<Probe> = get(&probes)?;
            support_report_json(&support_estimate(&get(&z)?, &probes)?)
        }
        ValCmd::Extend { z, a, cone, eps } => {
            extend_valuation(&get(&z)?, &get::<Polyhedron>(&a)?, get(&cone)?, &get(&eps)?)?.to_json()
        }
        ValCmd::Verify { z, trials } => {
            let z: Valuation = get(&z)?;
            let rep = verify_valuation_identity(&z, trials, seed)?;
            let out = verify_report_json(&rep);
            if !rep.violations.is_empty() {
                return Err(Failure::Falsified(json!({"reason": "valuation_identity_violated", "report": out})));
            }
            out
        }
    })
}

fn dispatch(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.group {
        Group::Func { cmd } => func(cmd),
        Group::Body { cmd } => body(cmd),
        Group::Dual { cmd } => dual(cmd),
        Group::Measure { cmd } => measure(cmd),
        Group::Val { cmd } => val(cmd, seed),
        Group::Suite { cmd: SuiteCmd::Run { name } } => {
            let report = suite::run(&name, seed)?;
            if report["passed"] != Value::Bool(true) {
                return Err(Failure::Falsified(report));
            }
            Ok(report)
        }
    }
}

fn error_json(e: &Error) -> String {
    json!({"error": e.code(), "message": e.to_string()}).to_string()
}

fn render(v: Value, mode: Mode) -> String {
    let v = if mode == Mode::Float { to_float_mode(v) } else { v };
    serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
}

/// Parses `args` (program name first) and runs one command.
pub fn execute<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                let err = Error::Parse(text.lines().next().unwrap_or_default().to_string());
                Output { code, stdout: String::new(), stderr: error_json(&err) + "\n" }
            };
        }
    };
    let requested = std::env::var("CVLAB_MODE").ok().unwrap_or_else(|| cli.mode.clone());
    let mode: Mode = match requested.parse() {
        Ok(m) => m,
        Err(e) => return Output { code: EXIT_MALFORMED, stdout: String::new(), stderr: error_json(&e) + "\n" },
    };
    match dispatch(cli) {
        Ok(v) => Output { code: 0, stdout: render(v, mode), stderr: String::new() },
        Err(Failure::Error(e)) => {
            let code = if matches!(e, Error::Parse(_)) { EXIT_MALFORMED } else { EXIT_PRECONDITION };
            Output { code, stdout: String::new(), stderr: error_json(&e) + "\n" }
        }
        Err(Failure::Falsified(v)) => Output {
            code: EXIT_FALSIFIED,
            stdout: render(v.clone(), mode),
            stderr: json!({"error": "falsified", "detail": v["reason"].clone()}).to_string() + "\n",
        },
    }
}

/// Runs with the process arguments and returns the exit code.
pub fn run() -> i32 {
    let out = execute(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
