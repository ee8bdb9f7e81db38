//! The `kbhom` command-line driver.
//!
//! [`run`] takes the argument list and returns what the process should print
//! and its exit code, so the whole CLI can be exercised in-process.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 validation or model
//! error, 3 inconsistent data.

pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use kbhom_core::calculus::{
    blowup_hodge, blowup_kb, blowup_point_kb, flag_bundle_hh, flag_manifold_kb, kunneth_dims, leray_hirsch_hh,
    mv_euler_check, projective_bundle_hodge, BlowupData, CalculusError, ClassBidegrees,
};
use kbhom_core::complexes::SpectralPages;
use kbhom_core::kbengine::{euler_char, hodge_diamond, kb_homology, kb_spectral_pages, KbError};
use kbhom_core::modelzoo::{build_model, by_name, catalog, load_model, save_model, ModelFile, Strictness, ZooError};
use kbhom_core::poissonmodel::{validate_model, ModelError};
use kbhom_core::polyforms::{PolyFormSlice, SteinError, DEFAULT_CAP};
use kbhom_core::{HHDims, HodgeDiamond, KBDims, PolyBivector, PolyTerm};

pub use report::{InputDigest, Report, REPORT_FORMAT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "kbhom", version, about = "Koszul–Brylinski homology of holomorphic Poisson models")]
struct Cli {
    /// Print a JSON report instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Leave the timestamp out of JSON reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the operator identities of a model file.
    Check(ModelArgs),
    /// KB homology, Euler characteristic, Hodge diamond and spectral pages.
    Compute {
        #[command(flatten)]
        model: ModelArgs,
        /// Also print the pages E_1..E_R of the spectral sequence.
        #[arg(long, value_name = "R")]
        pages: Option<usize>,
    },
    /// Weight slices of polynomial forms on C^n.
    Stein {
        #[arg(long)]
        n: usize,
        /// JSON array of terms {"i", "j", "coeff", "alpha"}; omit for π = 0.
        #[arg(long, value_name = "FILE")]
        pi: Option<PathBuf>,
        /// Inclusive range "a..b" or a single weight.
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// KB dimensions of a product.
    Kunneth {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        assert_compact: bool,
    },
    /// Hochschild dimensions of a bundle from those of the base.
    LerayHirsch {
        hh: PathBuf,
        /// Fibre class bidegrees, e.g. "0,0;1,1".
        #[arg(long)]
        classes: String,
    },
    /// Flag manifolds (--n) or flag bundles over a base (--hh).
    Flag {
        #[arg(long, conflicts_with = "hh", required_unless_present = "hh")]
        n: Option<usize>,
        #[arg(long, value_name = "FILE")]
        hh: Option<PathBuf>,
        /// Total Betti number of the fibre.
        #[arg(long)]
        b: usize,
    },
    /// Hodge diamond of a projective bundle of rank R.
    Pbundle {
        diamond: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Blow-up along a centre of codimension R.
    Blowup {
        #[arg(long)]
        r: usize,
        /// Read Hodge diamonds of X and Y instead of KB tables of X, Y, E.
        #[arg(long)]
        hodge: bool,
        #[arg(long)]
        assert_star: bool,
        #[arg(required = true, num_args = 2..=3)]
        files: Vec<PathBuf>,
    },
    /// Blow-up at a point.
    BlowupPoint {
        x: PathBuf,
        #[arg(long)]
        assert_star: bool,
    },
    /// Mayer–Vietoris Euler characteristic check.
    MvCheck {
        u: PathBuf,
        v: PathBuf,
        uv: PathBuf,
        union: PathBuf,
    },
    /// List or export the built-in models.
    Zoo {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    model: PathBuf,
    /// Ignore unknown fields in the model file.
    #[arg(long)]
    lax: bool,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn inconsistent(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INCONSISTENT,
        message: message.into(),
    }
}

impl From<ZooError> for Failure {
    fn from(e: ZooError) -> Self {
        match e {
            ZooError::Model(ModelError::Invalid { .. } | ModelError::Jacobi { .. }) => invalid(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<KbError> for Failure {
    fn from(e: KbError) -> Self {
        invalid(e.to_string())
    }
}

impl From<CalculusError> for Failure {
    fn from(e: CalculusError) -> Self {
        match e {
            CalculusError::InconsistentBlowup { .. } => inconsistent(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<SteinError> for Failure {
    fn from(e: SteinError) -> Self {
        match e {
            SteinError::CapExceeded { .. } => inconsistent(e.to_string()),
            _ => invalid(e.to_string()),
        }
    }
}

/// A finished command: its report, the text rendering and the exit code.
struct Done {
    report: Report,
    text: String,
    code: i32,
    warnings: Vec<String>,
}

impl Done {
    fn ok(report: Report, text: String) -> Self {
        Self {
            report,
            text,
            code: EXIT_OK,
            warnings: Vec::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli.command) {
        Ok(mut done) => {
            if !cli.no_timestamp {
                done.report.stamp();
            }
            let stdout = if cli.json { done.report.to_json() } else { done.text };
            let stderr = done.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            Outcome {
                code: done.code,
                stdout,
                stderr,
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Done, Failure> {
    match cmd {
        Command::Check(a) => cmd_check(&a.model, a.lax),
        Command::Compute { model, pages } => cmd_compute(&model.model, model.lax, *pages),
        Command::Stein { n, pi, weights, cap } => cmd_stein(*n, pi.as_deref(), weights, *cap),
        Command::Kunneth { a, b, assert_compact } => cmd_kunneth(a, b, *assert_compact),
        Command::LerayHirsch { hh, classes } => cmd_leray_hirsch(hh, classes),
        Command::Flag { n, hh, b } => cmd_flag(*n, hh.as_deref(), *b),
        Command::Pbundle { diamond, r } => cmd_pbundle(diamond, *r),
        Command::Blowup {
            r,
            hodge,
            assert_star,
            files,
        } => cmd_blowup(*r, *hodge, *assert_star, files),
        Command::BlowupPoint { x, assert_star } => cmd_blowup_point(x, *assert_star),
        Command::MvCheck { u, v, uv, union } => cmd_mv_check([u, v, uv, union]),
        Command::Zoo { name, list, out } => cmd_zoo(name.as_deref(), *list, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, Failure> {
    serde_json::from_slice(bytes).map_err(|e| usage(format!("malformed {what}: {e}")))
}

/// Reads a JSON input, recording its digest under `role`.
fn input<T: DeserializeOwned>(report: &mut Report, role: &str, path: &Path, what: &str) -> Result<T, Failure> {
    let bytes = read(path)?;
    report.inputs.push(InputDigest::of(role, &bytes));
    parse_json(&bytes, what)
}

fn read_model_file(report: &mut Report, path: &Path, lax: bool) -> Result<ModelFile, Failure> {
    let bytes = read(path)?;
    report.inputs.push(InputDigest::of("model", &bytes));
    let text = String::from_utf8(bytes).map_err(|_| usage("model file is not UTF-8"))?;
    let strictness = if lax { Strictness::Lax } else { Strictness::Strict };
    Ok(ModelFile::from_json(&text, strictness)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

fn kb_text(out: &mut String, title: &str, d: &KBDims) {
    let _ = writeln!(out, "{title} (n = {})", d.n);
    let _ = writeln!(out, "  k  dim");
    for (k, v) in d.as_slice().iter().enumerate() {
        let _ = writeln!(out, "{k:>3}  {v}");
    }
}

fn hh_text(out: &mut String, title: &str, d: &HHDims) {
    let _ = writeln!(out, "{title} (n = {})", d.n);
    let _ = writeln!(out, "  k  dim");
    for (k, v) in d.iter() {
        let _ = writeln!(out, "{k:>3}  {v}");
    }
}

fn diamond_text(out: &mut String, title: &str, h: &HodgeDiamond) {
    let _ = writeln!(out, "{title} (n = {}), row p lists h^{{p,q}} for q = 0..n", h.n);
    for (p, row) in h.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  p={p}: {}", cells.join(" "));
    }
}

fn hypothesis(report: &mut Report, warnings: &mut Vec<String>, name: &str, flag: &str, asserted: bool) {
    report.meta(&format!("asserted.{name}"), asserted);
    if !asserted {
        warnings.push(format!("{name} hypothesis not asserted (pass {flag}); result assumes it"));
    }
}

fn cmd_check(path: &Path, lax: bool) -> Result<Done, Failure> {
    let mut report = Report::new("check");
    report.option("lax", lax);
    let file = read_model_file(&mut report, path, lax)?;
    let model = build_model(&file)?;
    let v = validate_model(&model);
    let mut text = String::new();
    let mut checks = Vec::new();
    for c in &v.checks {
        let at = c.at.map(|b| json!([b.0, b.1]));
        checks.push(json!({"identity": c.identity.key(), "passed": c.passed, "at": at}));
        match c.at {
            Some(b) if !c.passed => {
                let _ = writeln!(text, "FAIL  {}  {}  at source bidegree ({}, {})", c.identity.key(), c.identity, b.0, b.1);
            }
            _ => {
                let _ = writeln!(text, "{}  {}  {}", if c.passed { "ok  " } else { "FAIL" }, c.identity.key(), c.identity);
            }
        }
    }
    let passed = v.passed();
    let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
    report.result = json!({"model": file.name, "n": file.n, "passed": passed, "checks": checks});
    Ok(Done {
        report,
        text,
        code: if passed { EXIT_OK } else { EXIT_INVALID },
        warnings: Vec::new(),
    })
}

fn pages_value(sp: &SpectralPages) -> Value {
    let cells = |m: &BTreeMap<(i32, i32), usize>| -> Vec<Value> {
        m.iter().map(|(c, d)| json!({"p": c.0, "q": c.1, "dim": d})).collect()
    };
    json!({
        "pages": sp.pages.iter().map(|p| json!({"r": p.r, "dims": cells(&p.dims)})).collect::<Vec<_>>(),
        "limit": cells(&sp.limit),
        "degeneration_page": sp.degeneration_page,
    })
}

fn pages_text(out: &mut String, sp: &SpectralPages) {
    let page = |out: &mut String, label: String, m: &BTreeMap<(i32, i32), usize>| {
        let cells: Vec<String> = m.iter().filter(|(_, d)| **d > 0).map(|(c, d)| format!("({},{}):{d}", c.0, c.1)).collect();
        let _ = writeln!(out, "{label}: {}", if cells.is_empty() { "0".to_string() } else { cells.join(" ") });
    };
    for p in &sp.pages {
        page(out, format!("E_{}", p.r), &p.dims);
    }
    page(out, "E_inf".to_string(), &sp.limit);
    let _ = writeln!(out, "degeneration page: {}", sp.degeneration_page);
}

fn cmd_compute(path: &Path, lax: bool, pages: Option<usize>) -> Result<Done, Failure> {
    let mut report = Report::new("compute");
    report.option("lax", lax);
    if let Some(r) = pages {
        report.option("pages", r);
    }
    let file = read_model_file(&mut report, path, lax)?;
    let model = load_model(&file)?;
    let kb = kb_homology(&model)?;
    let chi = euler_char(&kb);
    let hodge = hodge_diamond(&model)?;
    let mut text = String::new();
    let _ = writeln!(text, "model: {}", file.name);
    kb_text(&mut text, "KB homology", &kb);
    let _ = writeln!(text, "euler characteristic: {chi}");
    diamond_text(&mut text, "Hodge diamond", &hodge);
    let mut result = json!({
        "model": file.name,
        "n": file.n,
        "kb": to_value(&kb),
        "euler_characteristic": chi,
        "hodge": to_value(&hodge),
    });
    if let Some(r) = pages {
        if r == 0 {
            return Err(usage("--pages must be at least 1"));
        }
        let sp = kb_spectral_pages(&model, r)?;
        pages_text(&mut text, &sp);
        result["spectral"] = pages_value(&sp);
    }
    for (k, v) in &file.metadata {
        report.meta(&format!("model.{k}"), v.as_str());
    }
    report.result = result;
    Ok(Done::ok(report, text))
}

fn parse_weights(s: &str) -> Result<Vec<i64>, Failure> {
    let bad = || usage(format!("--weights expects \"a..b\" or a single integer, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn cmd_stein(n: usize, pi: Option<&Path>, weights: &str, cap: usize) -> Result<Done, Failure> {
    let mut report = Report::new("stein");
    report.option("n", n);
    report.option("weights", weights);
    report.option("cap", cap);
    let weights = parse_weights(weights)?;
    let bivector = match pi {
        Some(path) => {
            let terms: Vec<PolyTerm> = input(&mut report, "pi", path, "bivector terms")?;
            PolyBivector::from_terms(n, &terms)?
        }
        None => PolyBivector::zero(n),
    };
    let mut text = String::new();
    let _ = writeln!(text, "Stein slices on C^{n}, bivector degree {}", bivector.degree());
    let _ = writeln!(text, "   w  k  dim  slice");
    let mut slices = Vec::new();
    for &w in &weights {
        let slice = PolyFormSlice::new(&bivector, w, cap)?;
        let h = kbhom_core::complexes::homology_dims(&slice.complex()?);
        let mut homology = Vec::new();
        let mut chi = 0i64;
        for k in 0..=n {
            let p = n - k;
            let d = h.get(&-(p as i32)).copied().unwrap_or(0);
            chi += if k % 2 == 0 { d as i64 } else { -(d as i64) };
            homology.push(json!({"k": k, "dim": d, "slice_dim": slice.dim(p)}));
            let _ = writeln!(text, "{w:>4} {k:>2} {d:>4}  {:>5}", slice.dim(p));
        }
        let _ = writeln!(
            text,
            "   w = {w}: euler characteristic {chi}, alternating slice dimension {}",
            slice.alternating_dim()
        );
        slices.push(json!({
            "w": w,
            "homology": homology,
            "euler_characteristic": chi,
            "alternating_slice_dim": slice.alternating_dim(),
        }));
    }
    report.result = json!({"n": n, "degree": bivector.degree(), "slices": slices});
    Ok(Done::ok(report, text))
}

fn cmd_kunneth(a: &Path, b: &Path, assert_compact: bool) -> Result<Done, Failure> {
    let mut report = Report::new("kunneth");
    let mut warnings = Vec::new();
    hypothesis(&mut report, &mut warnings, "compact", "--assert-compact", assert_compact);
    let da: KBDims = input(&mut report, "a", a, "KB table")?;
    let db: KBDims = input(&mut report, "b", b, "KB table")?;
    let out = kunneth_dims(&da, &db);
    let mut text = String::new();
    kb_text(&mut text, "KB homology of the product", &out);
    report.result = json!({"kb": to_value(&out), "euler_characteristic": euler_char(&out)});
    let _ = writeln!(text, "euler characteristic: {}", euler_char(&out));
    Ok(Done {
        warnings,
        ..Done::ok(report, text)
    })
}

fn parse_classes(s: &str) -> Result<ClassBidegrees, Failure> {
    let bad = || usage(format!("--classes expects \"u,v;u,v;...\", got {s:?}"));
    let mut out = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (u, v) = part.split_once(',').ok_or_else(bad)?;
        out.push((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?));
    }
    Ok(ClassBidegrees::new(out)?)
}

fn classes_value(c: &ClassBidegrees) -> Value {
    Value::Array(c.as_slice().iter().map(|&(u, v)| json!([u, v])).collect())
}

fn cmd_leray_hirsch(hh: &Path, classes: &str) -> Result<Done, Failure> {
    let mut report = Report::new("leray-hirsch");
    let classes = parse_classes(classes)?;
    report.option("classes", classes_value(&classes));
    let x: HHDims = input(&mut report, "base", hh, "Hochschild table")?;
    let out = leray_hirsch_hh(&x, &classes);
    let mut text = String::new();
    hh_text(&mut text, "Hochschild homology of the bundle", &out);
    report.result = json!({"hh": to_value(&out)});
    Ok(Done::ok(report, text))
}

fn cmd_flag(n: Option<usize>, hh: Option<&Path>, b: usize) -> Result<Done, Failure> {
    let mut report = Report::new("flag");
    report.option("b", b);
    let mut text = String::new();
    match (n, hh) {
        (Some(n), None) => {
            report.option("n", n);
            let out = flag_manifold_kb(n, b)?;
            kb_text(&mut text, "KB homology of the flag manifold", &out);
            report.result = json!({"kb": to_value(&out)});
        }
        (None, Some(path)) => {
            let x: HHDims = input(&mut report, "base", path, "Hochschild table")?;
            let out = flag_bundle_hh(&x, b)?;
            hh_text(&mut text, "Hochschild homology of the flag bundle", &out);
            report.result = json!({"hh": to_value(&out)});
        }
        _ => return Err(usage("pass exactly one of --n and --hh")),
    }
    Ok(Done::ok(report, text))
}

fn cmd_pbundle(diamond: &Path, r: usize) -> Result<Done, Failure> {
    let mut report = Report::new("pbundle");
    report.option("r", r);
    let hy: HodgeDiamond = input(&mut report, "base", diamond, "Hodge diamond")?;
    let out = projective_bundle_hodge(&hy, r)?;
    let mut text = String::new();
    diamond_text(&mut text, "Hodge diamond of the projective bundle", &out);
    report.result = json!({"hodge": to_value(&out)});
    Ok(Done::ok(report, text))
}

fn cmd_blowup(r: usize, hodge: bool, assert_star: bool, files: &[PathBuf]) -> Result<Done, Failure> {
    let mut report = Report::new("blowup");
    let mut warnings = Vec::new();
    report.option("r", r);
    report.option("hodge", hodge);
    let mut text = String::new();
    if hodge {
        let [x, y] = files else {
            return Err(usage("blowup --hodge takes two diamonds: X and Y"));
        };
        let hx: HodgeDiamond = input(&mut report, "x", x, "Hodge diamond")?;
        let hy: HodgeDiamond = input(&mut report, "y", y, "Hodge diamond")?;
        let out = blowup_hodge(&hx, &hy, r)?;
        diamond_text(&mut text, "Hodge diamond of the blow-up", &out);
        report.result = json!({"hodge": to_value(&out)});
    } else {
        let [x, y, e] = files else {
            return Err(usage("blowup takes three KB tables: X, Y and E"));
        };
        hypothesis(&mut report, &mut warnings, "star", "--assert-star", assert_star);
        let dx: KBDims = input(&mut report, "x", x, "KB table")?;
        let dy: KBDims = input(&mut report, "y", y, "KB table")?;
        let de: KBDims = input(&mut report, "e", e, "KB table")?;
        let out = blowup_kb(&BlowupData::new(r, dx, dy, de)?)?;
        kb_text(&mut text, "KB homology of the blow-up", &out);
        report.result = json!({"kb": to_value(&out)});
    }
    Ok(Done {
        warnings,
        ..Done::ok(report, text)
    })
}

fn cmd_blowup_point(x: &Path, assert_star: bool) -> Result<Done, Failure> {
    let mut report = Report::new("blowup-point");
    let mut warnings = Vec::new();
    hypothesis(&mut report, &mut warnings, "star", "--assert-star", assert_star);
    let dx: KBDims = input(&mut report, "x", x, "KB table")?;
    let out = blowup_point_kb(&dx)?;
    let mut text = String::new();
    kb_text(&mut text, "KB homology of the blow-up at a point", &out);
    report.result = json!({"kb": to_value(&out)});
    Ok(Done {
        warnings,
        ..Done::ok(report, text)
    })
}

fn cmd_mv_check(paths: [&PathBuf; 4]) -> Result<Done, Failure> {
    let mut report = Report::new("mv-check");
    let roles = ["u", "v", "intersection", "union"];
    let mut tables = Vec::new();
    for (role, path) in roles.iter().zip(paths) {
        tables.push(input::<KBDims>(&mut report, role, path, "KB table")?);
    }
    let verdict = mv_euler_check(&tables[0], &tables[1], &tables[2], &tables[3])?;
    let chis: Vec<i64> = tables.iter().map(euler_char).collect();
    let mut text = String::new();
    let mut chi_obj = serde_json::Map::new();
    for (role, chi) in roles.iter().zip(&chis) {
        let _ = writeln!(text, "euler characteristic of {role}: {chi}");
        chi_obj.insert(role.to_string(), json!(chi));
    }
    let _ = writeln!(text, "verdict: {verdict}");
    report.result = json!({"verdict": verdict, "euler_characteristic": chi_obj});
    Ok(Done {
        code: if verdict { EXIT_OK } else { EXIT_INCONSISTENT },
        ..Done::ok(report, text)
    })
}

fn cmd_zoo(name: Option<&str>, list: bool, out: Option<&Path>) -> Result<Done, Failure> {
    let mut report = Report::new("zoo");
    let mut text = String::new();
    match name {
        None => {
            let names: Vec<String> = catalog().into_iter().map(|e| e.name).collect();
            for (e, name) in catalog().iter().zip(&names) {
                let _ = writeln!(text, "{name}  n = {}  dim = {}", e.model.n(), e.model.total_dim());
            }
            report.result = json!({"models": names});
        }
        Some(_) if list => return Err(usage("--list takes no model name")),
        Some(name) => {
            let e = by_name(name).ok_or_else(|| usage(format!("no zoo model named {name:?}")))?;
            let file = save_model(&e.model, &e.name, &e.metadata).to_json();
            match out {
                Some(path) => {
                    std::fs::write(path, &file)
                        .map_err(|err| usage(format!("cannot write {}: {err}", path.display())))?;
                    let _ = writeln!(text, "wrote {name}");
                }
                None => text = file.clone(),
            }
            report.inputs.push(InputDigest::of("written", file.as_bytes()));
            report.result = json!({"model": name});
        }
    }
    Ok(Done::ok(report, text))
}
