//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the process exit code: 0 success, 1 a negative geometric verdict,
//! 2 usage, input or convention errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{self, causal_map_sampled, generate, FamilyId, SignChoice};
use crate::classify::{classify, verify_structure_odes, ClassifyOptions};
use crate::error::{Error, Result};
use crate::existence::{
    self, brute_force_cross_check, existence_oracle, replay_certificate, NormPattern, SignVerdict,
};
use crate::export::{to_json_string, Mesh};
use crate::grid::{parse_grid_spec, Grid, Interval};
use crate::metric::Signature;
use crate::surface::{
    gauge_normalize, is_minimal, is_totally_geodesic, RuledSurface, SurfaceSpec, Tolerances,
    Verdict,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(
    name = "ruledmin",
    version,
    about = "Minimal ruled surfaces in pseudo-Euclidean spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check minimality of a surface from JSON or from the catalog.
    Verify(RunConfig),
    /// Scan genericity, compute the case invariants and identify the family.
    Classify(RunConfig),
    /// Existence table, witness frames and non-existence certificates.
    Existence(ExistenceArgs),
    /// Write a lattice mesh as OBJ (with a CSV sidecar) or CSV.
    Mesh(RunConfig),
    /// Causal regions of a catalog family from the closed-form det g.
    CausalMap(RunConfig),
    /// Reparametrize the rulings so that <gamma, x'> = 0.
    Gauge(RunConfig),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Obj,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Surface JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Ambient signature as n,p.
    #[arg(long)]
    pub sig: Option<Signature>,
    #[arg(long)]
    pub family: Option<FamilyId>,
    /// Sign choice as s1,s2,s3 with entries +, -, 0.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<SignChoice>,
    /// Sampling lattice as NSxNT.
    #[arg(long, value_parser = parse_grid_spec)]
    pub grid: Option<(usize, usize)>,
    #[arg(long, allow_hyphen_values = true)]
    pub s_range: Option<Interval>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_range: Option<Interval>,
    /// Bound on max |H|.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Points with |det g| at or below this are skipped.
    #[arg(long)]
    pub deg_tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct ExistenceArgs {
    /// Print the existence table.
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub sig: Option<Signature>,
    #[arg(long)]
    pub family: Option<FamilyId>,
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<SignChoice>,
    /// Run the randomized witness search for every norm pattern of size 3.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Verify(c) => cmd_verify(c),
        Command::Classify(c) => cmd_classify(c),
        Command::Existence(c) => cmd_existence(c),
        Command::Mesh(c) => cmd_mesh(c),
        Command::CausalMap(c) => cmd_causal_map(c),
        Command::Gauge(c) => cmd_gauge(c),
    };
    let (code, text) = match outcome {
        Ok(o) => (o.code, o.text),
        Err(e) => (exit_code_for(&e), to_json_string(&error_report(&e))),
    };
    let _ = stdout.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    code
}

/// Exit code and the text written to stdout.
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

impl Outcome {
    fn json<T: Serialize>(code: i32, value: &T) -> Self {
        Self {
            code,
            text: to_json_string(value),
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::CaseViiExcluded | Error::NotMinimalByNullDirection => 1,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::InvalidSignature { .. } => "InvalidSignature",
        Error::DegenerateMetric { .. } => "DegenerateMetric",
        Error::EverywhereDegenerate { .. } => "EverywhereDegenerate",
        Error::Precondition { .. } => "Precondition",
        Error::ConventionViolation { .. } => "ConventionViolation",
        Error::NonGeneric { .. } => "NonGeneric",
        Error::NotMinimalByNullDirection => "NotMinimalByNullDirection",
        Error::CaseViiExcluded => "NC_vii_Excluded",
        Error::NonExistence(_) => "NonExistence",
        Error::NoWitness { .. } => "NoWitness",
        Error::Usage(_) => "Usage",
        Error::Json { .. } => "MalformedInput",
        Error::Io(_) => "Io",
    }
}

fn error_report(e: &Error) -> serde_json::Value {
    let mut v = json!({ "error": error_kind(e), "message": e.to_string() });
    match e {
        Error::NonExistence(ne) => {
            v["certificate"] = serde_json::to_value(ne.as_ref()).unwrap_or_default()
        }
        Error::Json { path, .. } => v["path"] = json!(path),
        _ => {}
    }
    v
}

fn read_surface(path: &Path) -> Result<(Signature, RuledSurface)> {
    let text = fs::read_to_string(path)?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let spec: SurfaceSpec = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Json {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    spec.into_surface()
}

/// A surface taken from `--input` or generated from `--family/--sig/--signs`.
struct Loaded {
    sig: Signature,
    surface: RuledSurface,
    family: Option<FamilyId>,
    signs: Option<SignChoice>,
}

fn require_sig(sig: Option<Signature>) -> Result<Signature> {
    sig.ok_or_else(|| Error::Usage("--sig n,p is required".into()))
}

/// First realizable sign choice, or the aggregate certificate.
fn realizable_signs(
    sig: Signature,
    family: FamilyId,
    signs: Option<SignChoice>,
) -> Result<SignChoice> {
    let res = existence_oracle(sig, family, signs)?;
    if let Some((s, _)) = res.witness() {
        return Ok(s);
    }
    match res.non_existence() {
        Some(ne) => Err(Error::NonExistence(Box::new(ne))),
        None => Err(Error::Usage("no admissible sign choice".into())),
    }
}

fn load(c: &RunConfig) -> Result<Loaded> {
    let mut loaded = match (&c.input, c.family) {
        (Some(_), Some(_)) => {
            return Err(Error::Usage(
                "give either --input or --family, not both".into(),
            ))
        }
        (Some(path), None) => {
            let (sig, surface) = read_surface(path)?;
            if let Some(s) = c.sig {
                if s != sig {
                    return Err(Error::Usage(format!(
                        "--sig {s} contradicts the input signature {sig}"
                    )));
                }
            }
            Loaded {
                sig,
                surface,
                family: None,
                signs: None,
            }
        }
        (None, Some(family)) => {
            let sig = require_sig(c.sig)?;
            let signs = realizable_signs(sig, family, c.signs)?;
            let cat = generate(sig, family, signs)?;
            Loaded {
                sig,
                surface: cat.surface,
                family: Some(family),
                signs: Some(signs),
            }
        }
        (None, None) => {
            return Err(Error::Usage(
                "one of --input or --family is required".into(),
            ))
        }
    };
    if let Some(r) = c.s_range {
        loaded.surface.s_domain = r;
    }
    if let Some(r) = c.t_range {
        loaded.surface.t_domain = r;
    }
    Ok(loaded)
}

fn tolerances(c: &RunConfig, from_catalog: bool) -> Tolerances {
    let base = if from_catalog {
        catalog::catalog_tolerances()
    } else {
        Tolerances::default()
    };
    Tolerances {
        h: c.tol.unwrap_or(base.h),
        degenerate: c.deg_tol.unwrap_or(base.degenerate),
    }
}

fn grid_for(c: &RunConfig, surface: &RuledSurface, default: usize) -> Result<Grid> {
    let (ns, nt) = c.grid.unwrap_or((default, default));
    if ns < 2 || nt < 2 {
        return Err(Error::Usage("grid needs at least 2 points per axis".into()));
    }
    Ok(surface.default_grid(ns, nt))
}

fn emit(c_out: &Option<PathBuf>, outcome: Outcome) -> Result<Outcome> {
    match c_out {
        Some(path) => {
            fs::write(path, &outcome.text)?;
            Ok(Outcome {
                code: outcome.code,
                text: to_json_string(&json!({ "written": path })),
            })
        }
        None => Ok(outcome),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    signature: Signature,
    family: Option<FamilyId>,
    signs: Option<SignChoice>,
    verdict: Verdict,
    max_h: f64,
    argmax: Option<(f64, f64)>,
    evaluated: usize,
    skipped_degenerate: usize,
    tolerances: Tolerances,
    totally_geodesic: bool,
    max_h_ij: f64,
    structure_residual: Option<f64>,
}

pub fn cmd_verify(c: &RunConfig) -> Result<Outcome> {
    let l = load(c)?;
    let tol = tolerances(c, l.family.is_some());
    let grid = grid_for(c, &l.surface, catalog::DEFAULT_GRID)?;
    let m = is_minimal(l.sig, &l.surface, &grid, &tol)?;
    let g = is_totally_geodesic(l.sig, &l.surface, &grid, &tol)?;
    let residual = l
        .family
        .map(|f| verify_structure_odes(l.sig, &l.surface, f, &grid.s).max());
    let report = VerifyReport {
        signature: l.sig,
        family: l.family,
        signs: l.signs,
        verdict: m.verdict,
        max_h: m.max_h,
        argmax: m.argmax,
        evaluated: m.evaluated,
        skipped_degenerate: m.skipped_degenerate.len(),
        tolerances: tol,
        totally_geodesic: g.totally_geodesic,
        max_h_ij: g.max_h11.max(g.max_h12).max(g.max_h22),
        structure_residual: residual,
    };
    let code = if m.verdict == Verdict::Minimal { 0 } else { 1 };
    emit(&c.out, Outcome::json(code, &report))
}

pub fn cmd_classify(c: &RunConfig) -> Result<Outcome> {
    let l = load(c)?;
    let (ns, nt) = c.grid.unwrap_or((41, 41));
    let opts = ClassifyOptions {
        ns,
        nt,
        tol: tolerances(c, l.family.is_some()),
        ..ClassifyOptions::default()
    };
    let report = classify(l.sig, &l.surface, &opts)?;
    let code = if report.family.is_some() { 0 } else { 1 };
    emit(&c.out, Outcome::json(code, &report))
}

pub fn cmd_existence(c: &ExistenceArgs) -> Result<Outcome> {
    let format = c
        .format
        .unwrap_or(if c.table { Format::Text } else { Format::Json });
    if c.table {
        let rows = existence::table2()?;
        let text = match format {
            Format::Csv => existence::render_table_csv(&rows),
            Format::Json => to_json_string(&rows),
            _ => existence::render_table_text(&rows),
        };
        return emit(&c.out, Outcome { code: 0, text });
    }
    let sig = require_sig(c.sig)?;
    if c.cross_check {
        let sig = Signature::for_surfaces(sig.n, sig.p)?;
        let rows: Vec<_> = NormPattern::all(3)
            .into_iter()
            .map(|pat| {
                let found = brute_force_cross_check(sig, pat, c.trials, c.seed);
                json!({
                    "pattern": pat,
                    "admits": existence::admits_pattern(sig, pat),
                    "search": found,
                })
            })
            .collect();
        let doc = json!({ "signature": sig, "trials": c.trials, "seed": c.seed, "patterns": rows });
        return emit(&c.out, Outcome::json(0, &doc));
    }
    let family = c
        .family
        .ok_or_else(|| Error::Usage("--family is required without --table".into()))?;
    let result = existence_oracle(sig, family, c.signs)?;
    let doc = if result.exists() {
        let (signs, frame) = result.witness().expect("exists implies a witness");
        json!({
            "signature": result.signature,
            "family": family,
            "exists": true,
            "signs": signs,
            "witness": frame,
            "outcomes": result.outcomes,
        })
    } else {
        let ne = result
            .non_existence()
            .ok_or_else(|| Error::Usage("no admissible sign choice".into()))?;
        let trace = replay_certificate(result.signature, family, ne.kind)?;
        json!({
            "signature": result.signature,
            "family": family,
            "exists": false,
            "certificate": ne,
            "trace": trace,
        })
    };
    emit(&c.out, Outcome::json(0, &doc))
}

pub fn cmd_mesh(c: &RunConfig) -> Result<Outcome> {
    let l = load(c)?;
    let tol = tolerances(c, l.family.is_some());
    let grid = grid_for(c, &l.surface, 41)?;
    let mesh = Mesh::build(l.sig, &l.surface, &grid, tol.degenerate);
    let format = c.format.unwrap_or(Format::Obj);
    let render = |f: Format| -> Result<String> {
        let mut buf = Vec::new();
        match f {
            Format::Csv => mesh.write_csv(&mut buf)?,
            Format::Obj => mesh.write_obj(&mut buf)?,
            _ => return Err(Error::Usage("mesh supports --format obj or csv".into())),
        }
        Ok(String::from_utf8(buf).expect("mesh writers emit UTF-8"))
    };
    let body = render(format)?;
    let Some(path) = &c.out else {
        return Ok(Outcome {
            code: 0,
            text: body,
        });
    };
    fs::write(path, body)?;
    let mut written = vec![path.clone()];
    if format == Format::Obj {
        let sidecar = path.with_extension("csv");
        fs::write(&sidecar, render(Format::Csv)?)?;
        written.push(sidecar);
    }
    let summary = json!({
        "signature": l.sig,
        "family": l.family,
        "signs": l.signs,
        "vertices": mesh.vertices.len(),
        "triangles": mesh.triangles().len(),
        "tags": mesh.tag_counts(),
        "degenerate_t": mesh.degenerate_t_values(),
        "written": written,
    });
    Ok(Outcome::json(0, &summary))
}

pub fn cmd_causal_map(c: &RunConfig) -> Result<Outcome> {
    let sig = require_sig(c.sig)?;
    let family = c
        .family
        .ok_or_else(|| Error::Usage("causal-map needs --family".into()))?;
    let t_dom = c
        .t_range
        .unwrap_or(Interval::symmetric(catalog::DEFAULT_RANGE));
    let (ns, nt) = c.grid.unwrap_or((100, 100));
    let result = existence_oracle(sig, family, c.signs)?;
    let mut reports = Vec::new();
    for o in &result.outcomes {
        if matches!(o.verdict, SignVerdict::Witness(_)) {
            reports.push(causal_map_sampled(sig, family, o.signs, t_dom, ns, nt)?);
        }
    }
    if reports.is_empty() {
        let ne = result
            .non_existence()
            .ok_or_else(|| Error::Usage("no admissible sign choice".into()))?;
        return Err(Error::NonExistence(Box::new(ne)));
    }
    let outcome = match c.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut text = String::from("signs,t_lo,t_hi,verdict\n");
            for r in &reports {
                for reg in &r.regions {
                    text.push_str(&format!(
                        "\"{}\",{},{},{:?}\n",
                        r.signs,
                        crate::export::fmt_f64(reg.t_lo),
                        crate::export::fmt_f64(reg.t_hi),
                        reg.verdict
                    ));
                }
            }
            Outcome { code: 0, text }
        }
        _ => Outcome::json(
            0,
            &json!({ "signature": sig, "family": family, "maps": reports }),
        ),
    };
    emit(&c.out, outcome)
}

pub fn cmd_gauge(c: &RunConfig) -> Result<Outcome> {
    let l = load(c)?;
    let r = gauge_normalize(l.sig, &l.surface, c.tol.unwrap_or(1e-9))?;
    let doc = json!({
        "signature": l.sig,
        "epsilon": r.epsilon,
        "lambda": r.lambda,
        "max_g12_before": r.max_g12_before,
        "max_g12_after": r.max_g12_after,
        "surface": SurfaceSpec::from_surface(l.sig, &r.surface),
    });
    emit(&c.out, Outcome::json(0, &doc))
}
