//! Command-line front end. `dmod <subcommand> [--input FILE]... [flags]`.
//!
//! Exit codes: 0 pass, 1 a mathematical check failed, 2 input or limit error, 3 reduction stuck.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::conn::{dictionary_report, Connection, DictionaryReport};
use crate::error::{Error, Result};
use crate::exactalg::{parse_loc, parse_poly, vars_of, LocRing, Ring};
use crate::gaussmanin::{compare_routes, CompareReport, Family};
use crate::homalg::exactness::MAX_DEGREE_BOUND;
use crate::homalg::lemma::{LemmaReport, LeraySquare};
use crate::homalg::{truncated_exactness, Certificate, ResolutionKind};
use crate::io::{self, ConnectionFile, FamilyFile, MapFile};
use crate::pullback::{compare_pullbacks, PolyMap, PullbackReport};
use crate::random;

pub const MAX_ORDER_CAP: u32 = 4;

/// Every certificate is a statement about a finite truncation only.
pub const SCOPE_NOTE: &str = "exact over Q on the stated truncation; saturated ranges only, no claim beyond the caps";

#[derive(Parser, Debug)]
#[command(name = "dmod", version, about = "Exact D-module and Gauss-Manin checks on affine charts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Input file (repeatable). Without inputs the seeded suite runs.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation degree bound D for resolutions (at most 12).
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    /// Weyl truncation level for the homotopy instance (at most 4).
    #[arg(long, global = true)]
    pub order_cap: Option<u32>,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmd {
    /// ∇ ↔ Δ ↔ δ round trips and curvature on connection files.
    Dictionary,
    /// Connection route vs D-module route for inverse images (map file, then connection file).
    Pullback,
    /// Three-route Gauss-Manin comparison on family files.
    Gaussmanin,
    /// Truncated resolution certificates and the homotopy instance.
    Homalg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Cmd,
    pub inputs: Vec<PathBuf>,
    pub seed: u64,
    pub degree_cap: Option<u32>,
    pub order_cap: u32,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(command: Cmd) -> Self {
        RunConfig { command, inputs: Vec::new(), seed: 0, degree_cap: None, order_cap: 2, jobs: 1 }
    }

    pub fn from_cli(c: &Cli) -> Result<Self> {
        let cfg = RunConfig {
            command: c.command,
            inputs: c.input.clone(),
            seed: c.seed,
            degree_cap: c.degree_cap,
            order_cap: c.order_cap.unwrap_or(2),
            jobs: c.jobs,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.degree_cap {
            if d == 0 || d > MAX_DEGREE_BOUND {
                return Err(Error::CapExceeded(format!("--degree-cap {d} outside 1..={MAX_DEGREE_BOUND}")));
            }
        }
        if self.order_cap == 0 || self.order_cap > MAX_ORDER_CAP {
            return Err(Error::CapExceeded(format!("--order-cap {} outside 1..={MAX_ORDER_CAP}", self.order_cap)));
        }
        if self.jobs == 0 {
            return Err(Error::Input("--jobs must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::ReductionStuck(_) => 3,
        _ => 2,
    }
}

fn error_outcome(e: &Error, cfg: Option<&RunConfig>) -> Outcome {
    let report = serde_json::json!({
        "config": cfg,
        "pass": false,
        "error": e.to_string(),
    });
    Outcome { code: error_code(e), report }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

/// Runs `f` over the items on a pool of `jobs` threads; results keep input order.
fn parallel<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    if let Err(e) = cfg.validate() {
        return error_outcome(&e, Some(cfg));
    }
    let r = match cfg.command {
        Cmd::Dictionary => cmd_dictionary(cfg),
        Cmd::Pullback => cmd_pullback(cfg),
        Cmd::Gaussmanin => cmd_gaussmanin(cfg),
        Cmd::Homalg => cmd_homalg(cfg),
    };
    r.unwrap_or_else(|e| error_outcome(&e, Some(cfg)))
}

fn input_name(p: &std::path::Path) -> String {
    p.display().to_string()
}

// ---- dictionary

#[derive(Serialize)]
struct DictionaryEntry {
    instance: String,
    report: DictionaryReport,
}

/// Seeded suite: rank ≤ 3, n ≤ 2, coefficient degree ≤ 3; every other instance flat.
pub fn dictionary_suite(seed: u64, count: usize) -> Vec<(String, Connection, bool)> {
    use rand::Rng;
    let mut g = random::gen(seed);
    let r1 = localized(&["x"], &["x"]);
    let r2 = localized(&["x", "y"], &["x", "y"]);
    (0..count)
        .map(|i| {
            let ring = if g.gen_bool(0.5) { &r1 } else { &r2 };
            let rank = g.gen_range(1..=3);
            let flat = i % 2 == 0;
            let c = if flat {
                Connection::random_integrable(&mut g, ring, rank, 3)
            } else {
                Connection::random(&mut g, ring, rank, 3)
            };
            (format!("random #{i} (n={}, rank={rank}, flat={flat})", ring.nvars()), c, flat)
        })
        .collect()
}

fn localized(vars: &[&str], dens: &[&str]) -> Ring {
    let v = vars_of(vars);
    let d = dens.iter().map(|s| parse_poly(&v, s).expect("literal")).collect();
    LocRing::new(v, d).expect("literal ring")
}

fn cmd_dictionary(cfg: &RunConfig) -> Result<Outcome> {
    let instances: Vec<(String, Connection, bool)> = if cfg.inputs.is_empty() {
        dictionary_suite(cfg.seed, 100)
    } else {
        cfg.inputs
            .iter()
            .map(|p| Ok((input_name(p), io::read_json::<ConnectionFile>(p)?.build()?, true)))
            .collect::<Result<_>>()?
    };
    let reports = parallel(cfg.jobs, &instances, |(_, c, flat)| dictionary_report(c, *flat));
    let mut entries = Vec::new();
    for ((name, _, _), r) in instances.iter().zip(reports) {
        entries.push(DictionaryEntry { instance: name.clone(), report: r? });
    }
    let failures: Vec<String> = entries
        .iter()
        .flat_map(|e| e.report.failures().into_iter().map(move |f| format!("{}: {f}", e.instance)))
        .collect();
    let pass = failures.is_empty();
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        report: serde_json::json!({
            "config": cfg,
            "pass": pass,
            "failures": failures,
            "instances": to_value(&entries),
        }),
    })
}

// ---- pullback

#[derive(Serialize)]
struct PullbackEntry {
    instance: String,
    map: MapFile,
    connection: ConnectionFile,
    report: PullbackReport,
}

/// `f(x) = x²` with `A_y = (3/y)`, the identity map, and `count` seeded instances.
pub fn pullback_suite(seed: u64, count: usize) -> Result<Vec<(String, PolyMap, Connection)>> {
    use rand::Rng;
    let rx = localized(&["x"], &["x"]);
    let ry = localized(&["y"], &["y"]);
    let sq = PolyMap::new(&rx, &ry, vec![parse_loc(&rx, "x^2")?])?;
    let c = Connection::new(&ry, 1, vec![vec![vec![parse_loc(&ry, "3/y")?]]])?;
    let mut out = vec![("squaring, A_y = 3/y".to_string(), sq, c.clone())];
    out.push(("identity".to_string(), PolyMap::identity(&ry), c));
    let mut g = random::gen(seed);
    for i in 0..count {
        let (n, m) = (g.gen_range(1..=2), g.gen_range(1..=2));
        let f = random::poly_map(&mut g, n, m)?;
        let rank = g.gen_range(1..=2);
        let c = Connection::random(&mut g, f.target(), rank, 2);
        out.push((format!("random #{i} (n={n}, m={m}, rank={rank})"), f, c));
    }
    Ok(out)
}

fn cmd_pullback(cfg: &RunConfig) -> Result<Outcome> {
    let instances = if cfg.inputs.is_empty() {
        pullback_suite(cfg.seed, 50)?
    } else {
        if cfg.inputs.len() % 2 != 0 {
            return Err(Error::Input("pullback takes pairs of inputs: map file, then connection file".into()));
        }
        cfg.inputs
            .chunks(2)
            .map(|pair| {
                let f = io::read_json::<MapFile>(&pair[0])?.build()?;
                let c = io::connection_on_target(&f, &io::read_json::<ConnectionFile>(&pair[1])?)?;
                Ok((format!("{} <- {}", input_name(&pair[0]), input_name(&pair[1])), f, c))
            })
            .collect::<Result<_>>()?
    };
    let reports = parallel(cfg.jobs, &instances, |(_, f, c)| compare_pullbacks(f, c));
    let mut entries = Vec::new();
    for ((name, f, c), r) in instances.iter().zip(reports) {
        entries.push(PullbackEntry {
            instance: name.clone(),
            map: MapFile::of(f),
            connection: ConnectionFile::of(c),
            report: r?,
        });
    }
    let failures: Vec<&str> = entries.iter().filter(|e| !e.report.equal).map(|e| e.instance.as_str()).collect();
    let pass = failures.is_empty();
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        report: serde_json::json!({
            "config": cfg,
            "pass": pass,
            "failures": failures,
            "instances": to_value(&entries),
        }),
    })
}

// ---- gaussmanin

/// The family file's output object: the four fixed fields first, then the detail.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyOutput {
    pub basis: Vec<String>,
    pub gm_matrix: Vec<Vec<String>>,
    pub routes_agree: bool,
    pub picard_fuchs: Vec<String>,
    pub family: FamilyFile,
    pub detail: CompareReport,
}

impl FamilyOutput {
    pub fn new(f: &Family, r: CompareReport) -> Self {
        FamilyOutput {
            basis: r.basis.labels.clone(),
            gm_matrix: r.gm_matrix.clone(),
            routes_agree: r.routes_agree,
            picard_fuchs: r.picard_fuchs.clone(),
            family: FamilyFile::of(f),
            detail: r,
        }
    }

    /// Routes agree and, when the cross-check ran, `d₁` equals route a.
    pub fn pass(&self) -> bool {
        self.routes_agree && self.detail.e1.as_ref().map(|e| e.d1_equals_route_a).unwrap_or(true)
    }
}

/// The corpus (including `h = 1` and a constant twist) plus `random` seeded families,
/// alternating untwisted and Kummer-twisted.
pub fn gaussmanin_suite(seed: u64, random: usize) -> Result<Vec<(String, FamilyFile)>> {
    let mut out: Vec<(String, FamilyFile)> = vec![
        ("x - lam".into(), FamilyFile::untwisted("x - lam", &[])),
        ("x^2 - lam".into(), FamilyFile::untwisted("x^2 - lam", &["lam"])),
        ("x^3 - lam".into(), FamilyFile::untwisted("x^3 - lam", &["lam"])),
        ("h = 1".into(), FamilyFile::untwisted("1", &[])),
    ];
    let mut tw = FamilyFile::untwisted("x - lam", &[]);
    tw.a_lam = Some(vec![vec!["1".into()]]);
    out.push(("x - lam, A_lam = 1".into(), tw));
    let mut g = random::gen(seed);
    for i in 0..random {
        let f = random::family(&mut g, i % 2 == 1);
        out.push((format!("random #{i}"), FamilyFile::of(&f)));
    }
    Ok(out)
}

#[derive(Serialize)]
struct FamilyEntry {
    instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<FamilyOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn run_family(desc: &FamilyFile) -> Result<FamilyOutput> {
    let f = desc.build()?;
    let r = compare_routes(&f)?;
    Ok(FamilyOutput::new(&f, r))
}

fn cmd_gaussmanin(cfg: &RunConfig) -> Result<Outcome> {
    let instances: Vec<(String, FamilyFile)> = if cfg.inputs.is_empty() {
        gaussmanin_suite(cfg.seed, 20)?
    } else {
        cfg.inputs.iter().map(|p| Ok((input_name(p), io::read_json::<FamilyFile>(p)?))).collect::<Result<_>>()?
    };
    let results = parallel(cfg.jobs, &instances, |(_, s)| run_family(s));
    let mut code = 0;
    let mut entries = Vec::new();
    for ((name, _), r) in instances.iter().zip(results) {
        match r {
            Ok(o) => {
                // a failed route is reported per route; stuck reductions dominate
                if o.detail.routes.iter().any(|x| x.error.as_deref().is_some_and(|e| e.starts_with("reduction stuck"))) {
                    code = code.max(3);
                } else if !o.pass() {
                    code = code.max(1);
                }
                entries.push(FamilyEntry { instance: name.clone(), output: Some(o), error: None });
            }
            Err(e) => {
                code = code.max(error_code(&e));
                entries.push(FamilyEntry { instance: name.clone(), output: None, error: Some(e.to_string()) });
            }
        }
    }
    // a single family file prints its output object at top level
    let report = if cfg.inputs.len() == 1 && entries[0].output.is_some() {
        let mut v = to_value(entries[0].output.as_ref().unwrap());
        if let Value::Object(m) = &mut v {
            m.insert("pass".into(), Value::Bool(code == 0));
        }
        v
    } else {
        serde_json::json!({
            "config": cfg,
            "pass": code == 0,
            "families": to_value(&entries),
        })
    };
    Ok(Outcome { code, report })
}

// ---- homalg

#[derive(Serialize)]
struct HomalgReport {
    scope: &'static str,
    certificates: Vec<Certificate>,
    homotopy: LemmaReport,
    pass: bool,
}

fn cmd_homalg(cfg: &RunConfig) -> Result<Outcome> {
    let jobs: Vec<(ResolutionKind, usize, u32)> = [ResolutionKind::LeftDeRham, ResolutionKind::RightSpencer]
        .into_iter()
        .flat_map(|k| [(k, 1usize, cfg.degree_cap.unwrap_or(8)), (k, 2, cfg.degree_cap.unwrap_or(6))])
        .collect();
    let certs = parallel(cfg.jobs, &jobs, |&(k, n, d)| truncated_exactness(k, n, d));
    let certificates = certs.into_iter().collect::<Result<Vec<_>>>()?;
    let homotopy = LeraySquare::build(cfg.order_cap)?.report()?;
    let pass = certificates.iter().all(|c| c.pass) && homotopy.all_pass();
    let rep = HomalgReport { scope: SCOPE_NOTE, certificates, homotopy, pass };
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        report: serde_json::json!({ "config": cfg, "report": to_value(&rep), "pass": pass }),
    })
}

// ---- output

/// JSON or the text mirror (`key: value`, fixed field order, nested keys indented).
pub fn render(v: &Value, f: Format) -> String {
    match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text_into(v, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_into(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_into(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_into(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Parses the process arguments, runs, prints, returns the exit code.
pub fn main_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match RunConfig::from_cli(&cli) {
        Ok(cfg) => run(&cfg),
        Err(e) => error_outcome(&e, None),
    };
    print!("{}", render(&out.report, cli.format));
    out.code
}
