//! Command-line front end for `torus-wrt`.

pub mod scan;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use torus_wrt::asymp::{aec_terms_su2, aec_terms_su3, verify_aec};
use torus_wrt::dynamics::{root_limit, spectral_estimate, stretch_via_invariant};
use torus_wrt::moduli::{growth_rate_seeded, su2_components, su3_cs_phase_set, DEFAULT_SEED};
use torus_wrt::wrt::{
    classify, conjugating_matrix, invariant, invariant_su2_link_closed, invariant_su2_link_direct, sl2z_word,
    word_trace, BundleClass, FiniteOrderTag, InvariantResult, Method, SL2ZMatrix,
};
use torus_wrt::{Error, Q, C64};

#[derive(Parser, Debug)]
#[command(name = "torus-wrt", version, about = "Quantum invariants of torus bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one invariant.
    Invariant(InvariantArgs),
    /// Tabulate a shear-bundle invariant over a range of levels as CSV.
    Scan(ScanArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Chern-Simons values of the moduli components.
    CsValues(CsArgs),
    /// Growth rates of the moduli components.
    GrowthRate(GrowthArgs),
    /// Asymptotic expansion terms and truncation decay.
    Asymptotics(AsymptoticsArgs),
    /// Stretch factor of an Anosov matrix.
    Stretch(StretchArgs),
    /// Conjugacy class of a matrix.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("monodromy").required(true).args(["shear", "matrix", "finite_order"])))]
pub struct InvariantArgs {
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub level: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub shear: Option<i64>,
    /// Entries "a,b,c,d".
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<SL2ZMatrix>,
    #[arg(long)]
    pub finite_order: Option<FiniteOrderTag>,
    /// Negate the shear (trace −2).
    #[arg(long, requires = "shear")]
    pub minus: bool,
    /// Colour of the fibre knot (SU(2) shears only).
    #[arg(long)]
    pub colour: Option<u32>,
    #[arg(long, default_value = "direct")]
    pub method: Method,
    #[arg(long, allow_hyphen_values = true)]
    pub framing_correction: Option<i64>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub shear: i64,
    #[arg(long)]
    pub minus: bool,
    #[arg(long, default_value_t = 0)]
    pub kmin: u32,
    #[arg(long)]
    pub kmax: u32,
    #[arg(long, default_value = "direct")]
    pub method: Method,
    #[arg(long)]
    pub colour: Option<u32>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write a scatter plot of the values.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of the suite names or "all".
    pub suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 200)]
    pub kmax: u32,
    #[arg(long, default_value_t = 12)]
    pub bmax: i64,
}

#[derive(Args, Debug)]
pub struct CsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 300)]
    pub kmax: u32,
    #[arg(long = "L", default_value_t = 3)]
    pub l: usize,
}

#[derive(Args, Debug)]
pub struct StretchArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: SL2ZMatrix,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value = "invariant")]
    pub method: String,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: SL2ZMatrix,
}

/// Failure modes, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: 2.
    Invalid(String),
    /// Method not available for the class: 3.
    Unsupported(String),
    /// A verification did not pass: 1.
    Failed(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Unsupported(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn q_str(q: Q) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let report = match cli.command {
        Command::Invariant(a) => cmd_invariant(&a)?,
        Command::Scan(a) => return cmd_scan(&a, out),
        Command::Verify(a) => return cmd_verify(&a, out),
        Command::CsValues(a) => cmd_cs(&a)?,
        Command::GrowthRate(a) => cmd_growth(&a)?,
        Command::Asymptotics(a) => return cmd_asymptotics(&a, out),
        Command::Stretch(a) => cmd_stretch(&a)?,
        Command::Classify(a) => cmd_classify(&a)?,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"))?;
    Ok(())
}

fn shear_class(b: i64, minus: bool) -> BundleClass {
    if minus {
        BundleClass::TraceMinus2(b)
    } else {
        BundleClass::Trace2(b)
    }
}

/// Colour-j value for a shear class; only SU(2) trace-2 shears carry one.
fn coloured(n: usize, k: u32, class: BundleClass, j: u32, method: Method) -> CliResult<C64> {
    let BundleClass::Trace2(b) = class else {
        return Err(CliError::Unsupported(format!("coloured invariants of {class}")));
    };
    if n != 2 {
        return Err(CliError::Unsupported(format!("coloured invariants for N = {n}")));
    }
    Ok(match method {
        Method::Direct => invariant_su2_link_direct(k, b, j)?,
        Method::Closed => invariant_su2_link_closed(k, b, j)?,
        Method::Word => return Err(CliError::Unsupported("coloured word products".into())),
    })
}

fn cmd_invariant(a: &InvariantArgs) -> CliResult<Value> {
    let (class, matrix) = if let Some(b) = a.shear {
        (shear_class(b, a.minus), None)
    } else if let Some(u) = a.matrix {
        (classify(u)?, Some(u))
    } else {
        (BundleClass::FiniteOrder(a.finite_order.expect("group is required")), None)
    };
    let mut res = match (a.colour, a.method, matrix) {
        (Some(j), m, _) => {
            let value = coloured(a.n, a.level, class, j, m)?;
            InvariantResult { value, n: a.n, k: a.level, r: a.level as i64 + 2, method: m, framing_corrected: false }
        }
        (None, Method::Word, Some(u)) if a.n == 2 => InvariantResult {
            value: word_trace(a.level, &sl2z_word(u)),
            n: 2,
            k: a.level,
            r: a.level as i64 + 2,
            method: Method::Word,
            framing_corrected: false,
        },
        (None, m, _) => invariant(a.n, a.level, class, m)?,
    };
    if let Some(p) = a.framing_correction {
        res = res.with_framing(p)?;
    }
    let mut v = json!({
        "N": res.n,
        "k": res.k,
        "r": res.r,
        "method": res.method.name(),
        "class": class.to_string(),
        "re": res.value.re,
        "im": res.value.im,
        "abs": res.value.norm(),
        "framing_corrected": res.framing_corrected,
    });
    let modulus_only = matches!(class, BundleClass::Hyperbolic(_)) || res.method == Method::Word;
    if modulus_only {
        v["note"] = json!("only the modulus is determined; the phase is not meaningful");
    }
    Ok(v)
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> CliResult<()> {
    if a.kmin > a.kmax {
        return Err(CliError::Invalid(format!("kmin {} exceeds kmax {}", a.kmin, a.kmax)));
    }
    let spec = scan::ScanSpec {
        n: a.n,
        class: shear_class(a.shear, a.minus),
        method: a.method,
        colour: a.colour,
        levels: a.kmin..=a.kmax,
    };
    let rows = scan::run_scan(&spec, a.threads)?;
    let csv = scan::to_csv(&rows);
    match &a.output {
        Some(p) => fs::write(p, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(p) = &a.svg {
        fs::write(p, scan::to_svg(&rows))?;
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let params = verify::Params { seed: a.seed, trials: a.trials, kmax: a.kmax, bmax: a.bmax };
    let names: Vec<&str> = if a.suite == "all" { verify::SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let mut suites = Vec::new();
    let mut ok = true;
    for name in names {
        let checks = verify::run_suite(name, &params).ok_or_else(|| {
            CliError::Invalid(format!("unknown suite {name:?}; expected one of {:?} or \"all\"", verify::SUITES))
        })?;
        let pass = checks.iter().all(|c| c.pass);
        ok &= pass;
        suites.push(json!({
            "suite": name,
            "pass": pass,
            "checks": checks.iter().map(verify::Check::to_json).collect::<Vec<_>>(),
        }));
    }
    let report = json!({ "seed": a.seed, "pass": ok, "suites": suites });
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"))?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}

fn cmd_cs(a: &CsArgs) -> CliResult<Value> {
    match a.n {
        2 => {
            let comps = su2_components(a.b)?;
            let list: Vec<Value> = comps
                .iter()
                .map(|c| json!({ "kind": c.kind.to_string(), "j": c.j, "cs": q_str(c.cs), "irreducible": c.irreducible }))
                .collect();
            let set: Vec<String> = torus_wrt::moduli::cs_set(&comps).into_iter().map(q_str).collect();
            Ok(json!({ "N": 2, "b": a.b, "components": list, "cs_values": set }))
        }
        3 => {
            let set: Vec<String> = su3_cs_phase_set(a.b)?.into_iter().map(q_str).collect();
            Ok(json!({ "N": 3, "b": a.b, "cs_values": set }))
        }
        n => Err(CliError::Unsupported(format!("moduli components for N = {n}"))),
    }
}

fn cmd_growth(a: &GrowthArgs) -> CliResult<Value> {
    let list = su2_components(a.b)?
        .iter()
        .map(|c| {
            let g = growth_rate_seeded(c, a.b, a.seed)?;
            Ok(json!({ "kind": c.kind.to_string(), "j": c.j, "cs": q_str(c.cs), "growth": q_str(g) }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "b": a.b, "seed": a.seed, "components": list }))
}

fn cmd_asymptotics(a: &AsymptoticsArgs, out: &mut dyn Write) -> CliResult<()> {
    let terms = match a.n {
        2 => aec_terms_su2(a.b)?,
        3 => aec_terms_su3(a.b)?,
        n => return Err(CliError::Unsupported(format!("expansions for N = {n}"))),
    };
    let term_json: Vec<Value> = terms
        .iter()
        .map(|t| {
            json!({
                "c": q_str(t.c),
                "d": q_str(t.d),
                "series": t.series(a.l).into_iter().map(c_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut report = json!({ "N": a.n, "b": a.b, "terms": term_json });
    let mut pass = true;
    if a.n == 2 {
        let rep = verify_aec(a.b, a.kmax, a.l)?;
        pass = rep.pass;
        report["kmax"] = json!(rep.k_max);
        report["exact_max_residual"] = json!(rep.exact_max_residual);
        report["slopes"] = rep
            .slopes
            .iter()
            .map(|s| json!({ "L": s.order, "slope": s.slope, "expected": s.expected, "bound_holds": s.bound_holds, "matches": s.matches }))
            .collect();
        report["pass"] = json!(pass);
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"))?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Failed("expansion check failed".into()))
    }
}

fn cmd_stretch(a: &StretchArgs) -> CliResult<Value> {
    let est = match a.method.as_str() {
        "invariant" => stretch_via_invariant(a.matrix, a.n)?,
        "root" => root_limit(a.matrix, a.n)?,
        "spectral" => spectral_estimate(a.matrix)?,
        m => return Err(CliError::Invalid(format!("unknown stretch method {m:?}"))),
    };
    let exact = spectral_estimate(a.matrix)?.lambda;
    Ok(json!({
        "matrix": a.matrix.to_string(),
        "method": est.method.to_string(),
        "n": est.n,
        "lambda": est.lambda,
        "error_vs_spectral": (est.lambda - exact).abs(),
    }))
}

fn cmd_classify(a: &ClassifyArgs) -> CliResult<Value> {
    let class = classify(a.matrix)?;
    let mut v = json!({ "matrix": a.matrix.to_string(), "class": class.to_string() });
    match class {
        BundleClass::Trace2(b) | BundleClass::TraceMinus2(b) => {
            v["kind"] = json!(if matches!(class, BundleClass::Trace2(_)) { "trace2" } else { "trace-2" });
            v["b"] = json!(b);
            v["conjugator"] = json!(conjugating_matrix(a.matrix)?.to_string());
        }
        BundleClass::Hyperbolic(u) => {
            v["kind"] = json!("hyperbolic");
            v["representative"] = json!(u.to_string());
        }
        BundleClass::FiniteOrder(t) => {
            v["kind"] = json!("finite");
            v["tag"] = json!(t.name());
        }
    }
    v["representative_matrix"] = json!(class.representative().to_string());
    Ok(v)
}
