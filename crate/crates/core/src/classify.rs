//! Case analysis of ruled surfaces: genericity, the invariants
//! `(eps, eta, delta, <gamma',x'>)`, the case table and family identification.

use std::fmt;

use serde::Serialize;

use crate::catalog::FamilyId;
use crate::curve::{is_null_curve, ParamCurve};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::metric::{Signature, Vector};
use crate::surface::{
    self, c_function, curve_products, decomposition_residual, gauge_normalize, is_minimal,
    is_totally_geodesic, MinimalityReport, RuledSurface, Tolerances, Verdict,
};

/// Tolerance for constancy and identically-zero decisions on sampled functions.
pub const CONST_TOL: f64 = 1e-9;
/// Threshold on the normalized Euclidean Gram determinant of `(gamma', x')`.
pub const DEPENDENCE_TOL: f64 = 1e-10;
pub const DEFAULT_SCAN_POINTS: usize = 201;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScalarFunction {
    #[serde(rename = "<gamma,gamma>")]
    GammaGamma,
    #[serde(rename = "<gamma',gamma'>")]
    DirectionSpeed,
    #[serde(rename = "<x',x'>")]
    BaseSpeed,
    #[serde(rename = "<gamma',x'>")]
    Mixed,
}

impl ScalarFunction {
    pub const ALL: [ScalarFunction; 4] = [
        ScalarFunction::GammaGamma,
        ScalarFunction::DirectionSpeed,
        ScalarFunction::BaseSpeed,
        ScalarFunction::Mixed,
    ];

    fn sample(self, sig: Signature, s: &RuledSurface, at: f64) -> f64 {
        let p = curve_products(sig, s, at);
        match self {
            ScalarFunction::GammaGamma => p.gg,
            ScalarFunction::DirectionSpeed => p.g1g1,
            ScalarFunction::BaseSpeed => p.x1x1,
            ScalarFunction::Mixed => p.g1x1,
        }
    }
}

impl fmt::Display for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarFunction::GammaGamma => "<gamma,gamma>",
            ScalarFunction::DirectionSpeed => "<gamma',gamma'>",
            ScalarFunction::BaseSpeed => "<x',x'>",
            ScalarFunction::Mixed => "<gamma',x'>",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "function")]
pub enum SingularReason {
    IsolatedZero(ScalarFunction),
    DependenceSwitch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularPoint {
    pub s: f64,
    pub reason: SingularReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionStatus {
    /// Within tolerance of zero at every scanned point (not a proof).
    IdenticallyZeroOnGrid,
    NowhereZero,
    HasZeros,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FunctionSummary {
    pub function: ScalarFunction,
    pub status: FunctionStatus,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    pub samples: usize,
    pub functions: Vec<FunctionSummary>,
    pub singular_points: Vec<SingularPoint>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.singular_points.is_empty()
    }

    pub fn status(&self, f: ScalarFunction) -> FunctionStatus {
        self.functions
            .iter()
            .find(|x| x.function == f)
            .map(|x| x.status)
            .unwrap_or(FunctionStatus::HasZeros)
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Whether `(u, v)` is linearly dependent, judged by the Euclidean Gram
/// determinant of the normalized pair.
pub fn euclidean_dependent(u: &Vector, v: &Vector) -> bool {
    let (nu, nv) = (u.euclid_norm(), v.euclid_norm());
    if nu <= 1e-12 || nv <= 1e-12 {
        return true;
    }
    let c: f64 = u.iter().zip(v.iter()).map(|(a, b)| a * b).sum::<f64>() / (nu * nv);
    1.0 - c * c <= DEPENDENCE_TOL
}

/// Scans the four scalar functions and the dependence of `(gamma', x')`.
pub fn genericity_scan(
    sig: Signature,
    surface: &RuledSurface,
    grid: &[f64],
    tol: f64,
) -> GenericityReport {
    let mut singular = Vec::new();
    let mut functions = Vec::new();
    for f in ScalarFunction::ALL {
        let vals: Vec<f64> = grid.iter().map(|&s| f.sample(sig, surface, s)).collect();
        let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if vals.iter().all(|v| v.abs() <= tol) {
            functions.push(FunctionSummary {
                function: f,
                status: FunctionStatus::IdenticallyZeroOnGrid,
                min,
                max,
            });
            continue;
        }
        let before = singular.len();
        let mut prev_zero = false;
        for i in 0..vals.len() {
            let zero = vals[i].abs() <= tol;
            if zero && !prev_zero {
                singular.push(SingularPoint {
                    s: grid[i],
                    reason: SingularReason::IsolatedZero(f),
                });
            } else if !zero
                && i + 1 < vals.len()
                && vals[i + 1].abs() > tol
                && (vals[i] < 0.0) != (vals[i + 1] < 0.0)
            {
                let root = bisect(|s| f.sample(sig, surface, s), grid[i], grid[i + 1]);
                singular.push(SingularPoint {
                    s: root,
                    reason: SingularReason::IsolatedZero(f),
                });
            }
            prev_zero = zero;
        }
        let status = if singular.len() > before {
            FunctionStatus::HasZeros
        } else {
            FunctionStatus::NowhereZero
        };
        functions.push(FunctionSummary {
            function: f,
            status,
            min,
            max,
        });
    }
    let dependent: Vec<bool> = grid
        .iter()
        .map(|&s| euclidean_dependent(&surface.gamma.eval(s, 1), &surface.base.eval(s, 1)))
        .collect();
    for i in 1..dependent.len() {
        if dependent[i] != dependent[i - 1] {
            singular.push(SingularPoint {
                s: 0.5 * (grid[i - 1] + grid[i]),
                reason: SingularReason::DependenceSwitch,
            });
        }
    }
    singular.sort_by(|a, b| a.s.total_cmp(&b.s));
    GenericityReport {
        samples: grid.len(),
        functions,
        singular_points: singular,
    }
}

/// Summary of `<gamma', x'>` along the curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MuSummary {
    IdenticallyZero,
    Constant { value: f64 },
    NonConstant { min: f64, max: f64 },
}

impl MuSummary {
    pub fn is_zero(&self) -> bool {
        matches!(self, MuSummary::IdenticallyZero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseInvariants {
    pub epsilon: i8,
    pub eta: i8,
    pub delta: i8,
    pub mu: MuSummary,
    /// `-eps <gamma', x'>` when that is constant.
    pub c1: Option<f64>,
}

fn range(vals: &[f64]) -> (f64, f64) {
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

/// Constant value in {-1, 0, 1}, if the samples are one.
fn unit_constant(vals: &[f64]) -> Option<i8> {
    let (min, max) = range(vals);
    if max - min > CONST_TOL {
        return None;
    }
    [-1i8, 0, 1]
        .into_iter()
        .find(|&k| (min - k as f64).abs() <= CONST_TOL && (max - k as f64).abs() <= CONST_TOL)
}

fn violation(check: impl Into<String>) -> Error {
    Error::ConventionViolation {
        check: check.into(),
    }
}

pub fn is_cylinder(surface: &RuledSurface, grid: &[f64]) -> bool {
    grid.iter()
        .all(|&s| surface.gamma.eval(s, 1).euclid_norm() <= CONST_TOL)
}

/// Reads `(eps, eta, delta, <gamma',x'>)` off a gauge-normalized, arc-length
/// parametrized non-cylinder surface, checking each convention on the grid.
pub fn case_invariants(
    sig: Signature,
    surface: &RuledSurface,
    grid: &[f64],
) -> Result<CaseInvariants> {
    if is_cylinder(surface, grid) {
        return Err(violation(
            "direction curve is constant: use the cylinder branch",
        ));
    }
    let products: Vec<_> = grid
        .iter()
        .map(|&s| curve_products(sig, surface, s))
        .collect();
    let col = |f: fn(&surface::CurveProducts) -> f64| products.iter().map(f).collect::<Vec<f64>>();
    let gg = col(|p| p.gg);
    if gg.iter().all(|v| v.abs() <= CONST_TOL) {
        let parallel = grid
            .iter()
            .all(|&s| euclidean_dependent(&surface.gamma.eval(s, 0), &surface.gamma.eval(s, 1)));
        if parallel {
            return Err(violation(
                "null direction curve parallel to its derivative: reparametrize as a cylinder",
            ));
        }
        return Err(Error::NotMinimalByNullDirection);
    }
    let epsilon = match unit_constant(&gg) {
        Some(e) if e != 0 => e,
        _ => {
            let (lo, hi) = range(&gg);
            return Err(violation(format!(
                "<gamma,gamma> is not a constant +-1 (range [{lo}, {hi}])"
            )));
        }
    };
    let (lo, hi) = range(&col(|p| p.gx1));
    if lo.abs().max(hi.abs()) > CONST_TOL {
        return Err(violation(format!(
            "g12 = <gamma,x'> is not zero (range [{lo}, {hi}]): gauge-normalize first"
        )));
    }
    let eta = unit_constant(&col(|p| p.g1g1)).ok_or_else(|| {
        let (lo, hi) = range(&col(|p| p.g1g1));
        violation(format!("<gamma',gamma'> is not a constant in {{-1,0,1}} (range [{lo}, {hi}]): gamma is not arc-length"))
    })?;
    let x1x1 = col(|p| p.x1x1);
    let delta = if eta == 0 {
        unit_constant(&x1x1).ok_or_else(|| {
            let (lo, hi) = range(&x1x1);
            violation(format!(
                "<x',x'> is not a constant in {{-1,0,1}} (range [{lo}, {hi}]): x is not arc-length"
            ))
        })?
    } else {
        // gamma carries the arc-length parameter; only the sign of <x',x'> is fixed
        let (lo, hi) = range(&x1x1);
        if lo.abs().max(hi.abs()) <= CONST_TOL {
            0
        } else if lo > CONST_TOL {
            1
        } else if hi < -CONST_TOL {
            -1
        } else {
            return Err(violation(format!(
                "<x',x'> vanishes or changes sign (range [{lo}, {hi}])"
            )));
        }
    };
    let mixed = col(|p| p.g1x1);
    let (lo, hi) = range(&mixed);
    let mu = if lo.abs().max(hi.abs()) <= CONST_TOL {
        MuSummary::IdenticallyZero
    } else if hi - lo <= CONST_TOL {
        MuSummary::Constant {
            value: 0.5 * (lo + hi),
        }
    } else {
        MuSummary::NonConstant { min: lo, max: hi }
    };
    let c1 = match mu {
        MuSummary::Constant { value } => Some(-(epsilon as f64) * value),
        MuSummary::IdenticallyZero => Some(0.0),
        MuSummary::NonConstant { .. } => None,
    };
    Ok(CaseInvariants {
        epsilon,
        eta,
        delta,
        mu,
        c1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    #[serde(rename = "cylinder")]
    Cylinder,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "vi")]
    VI,
    #[serde(rename = "vii")]
    VIIExcluded,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::Cylinder => "cylinder",
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::III => "iii",
            CaseLabel::IV => "iv",
            CaseLabel::V => "v",
            CaseLabel::VI => "vi",
            CaseLabel::VIIExcluded => "vii",
        })
    }
}

/// Row lookup in the case table. `eta` and `delta` are in {-1, 0, 1}.
pub fn table1_case(eta: i8, delta: i8, mu_zero: bool) -> CaseLabel {
    match (eta != 0, delta != 0, mu_zero) {
        (true, true, true) => CaseLabel::I,
        (true, false, _) => CaseLabel::II,
        (true, true, false) => CaseLabel::III,
        (false, true, false) => CaseLabel::IV,
        (false, true, true) => CaseLabel::V,
        (false, false, false) => CaseLabel::VI,
        (false, false, true) => CaseLabel::VIIExcluded,
    }
}

pub fn case_of(inv: &CaseInvariants) -> CaseLabel {
    table1_case(inv.eta, inv.delta, inv.mu.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CylinderVerdict {
    Plane,
    MinimalCylinder,
    NotMinimal,
}

/// Classifies a surface with constant direction `gamma0`.
pub fn cylinder_check(
    sig: Signature,
    surface: &RuledSurface,
    grid: &Grid,
    tol: &Tolerances,
) -> CylinderVerdict {
    match is_totally_geodesic(sig, surface, grid, tol) {
        Ok(r) if r.totally_geodesic => return CylinderVerdict::Plane,
        Ok(_) => {}
        Err(_) => return CylinderVerdict::NotMinimal,
    }
    let gamma0 = surface.gamma.eval(grid.s[0], 0);
    let null_direction = sig.norm_sq(&gamma0).abs() <= CONST_TOL;
    let null_base = is_null_curve(sig, &surface.base, &grid.s, CONST_TOL);
    let min_pairing = grid
        .s
        .iter()
        .map(|&s| sig.dot(&gamma0, &surface.base.eval(s, 1)).abs())
        .fold(f64::INFINITY, f64::min);
    let minimal =
        matches!(is_minimal(sig, surface, grid, tol), Ok(r) if r.verdict == Verdict::Minimal);
    if null_direction && null_base && min_pairing > CONST_TOL && minimal {
        CylinderVerdict::MinimalCylinder
    } else {
        CylinderVerdict::NotMinimal
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Identification {
    pub family: Option<FamilyId>,
    pub raw_case: CaseLabel,
    pub case: CaseLabel,
    pub reductions: Vec<String>,
    pub invariants: Option<CaseInvariants>,
    /// Why `family` is `None`.
    pub unrecognized: Option<String>,
}

/// Identifies the family by invariants (never by solving for a congruence).
///
/// The surface must already be gauge-normalized; [`classify`] takes care of that.
pub fn identify_family(
    sig: Signature,
    surface: &RuledSurface,
    grid: &Grid,
    tol: &Tolerances,
) -> Result<Identification> {
    let scan = surface.s_domain.linspace(DEFAULT_SCAN_POINTS);
    if is_cylinder(surface, &scan) {
        let verdict = cylinder_check(sig, surface, grid, tol);
        let family = match verdict {
            CylinderVerdict::Plane => Some(FamilyId::Plane),
            CylinderVerdict::MinimalCylinder => Some(FamilyId::MinimalCylinder),
            CylinderVerdict::NotMinimal => None,
        };
        return Ok(Identification {
            family,
            raw_case: CaseLabel::Cylinder,
            case: CaseLabel::Cylinder,
            reductions: vec![],
            invariants: None,
            unrecognized: family
                .is_none()
                .then(|| "cylinder is not minimal".to_string()),
        });
    }
    let inv = case_invariants(sig, surface, &scan)?;
    let raw = case_of(&inv);
    let mut reductions = Vec::new();
    let case = match raw {
        CaseLabel::VIIExcluded => return Err(Error::CaseViiExcluded),
        CaseLabel::III => {
            let dependent = scan
                .iter()
                .all(|&s| euclidean_dependent(&surface.gamma.eval(s, 1), &surface.base.eval(s, 1)));
            if dependent {
                reductions.push("(iii) with x' = p(s) gamma': a plane".to_string());
            } else {
                reductions.push("(iii) reduces to (i)".to_string());
            }
            CaseLabel::I
        }
        CaseLabel::VI => {
            reductions.push("(vi) reduces to (iv) by reparametrizing the base curve".to_string());
            CaseLabel::IV
        }
        other => other,
    };
    let mut out = Identification {
        family: None,
        raw_case: raw,
        case,
        reductions,
        invariants: Some(inv),
        unrecognized: None,
    };

    let minimality = is_minimal(sig, surface, grid, tol)?;
    if minimality.verdict != Verdict::Minimal {
        out.unrecognized = Some(format!("not minimal: max |H| = {:e}", minimality.max_h));
        return Ok(out);
    }
    if is_totally_geodesic(sig, surface, grid, tol)?.totally_geodesic {
        out.family = Some(FamilyId::Plane);
        return Ok(out);
    }
    let elliptic = inv.epsilon * inv.eta > 0;
    out.family = match case {
        CaseLabel::I if elliptic => Some(FamilyId::EllipticHelicoid1),
        CaseLabel::I => Some(FamilyId::HyperbolicHelicoid1),
        CaseLabel::II if elliptic => Some(FamilyId::EllipticHelicoid2),
        CaseLabel::II => Some(FamilyId::HyperbolicHelicoid2),
        CaseLabel::IV => Some(FamilyId::ParabolicHelicoid),
        CaseLabel::V => Some(FamilyId::MinimalHyperbolicParaboloid),
        _ => None,
    };
    if out.family.is_none() {
        out.unrecognized = Some(format!("case ({case}) matches no family"));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OdeResiduals {
    pub system: String,
    pub direction: f64,
    pub base: f64,
}

impl OdeResiduals {
    pub fn max(&self) -> f64 {
        self.direction.max(self.base)
    }
}

/// Maximum residuals of the ODE system that governs `family`.
pub fn verify_structure_odes(
    sig: Signature,
    surface: &RuledSurface,
    family: FamilyId,
    grid: &[f64],
) -> OdeResiduals {
    let mut direction = 0.0f64;
    let mut base = 0.0f64;
    for &s in grid {
        let g0 = surface.gamma.eval(s, 0);
        let g1 = surface.gamma.eval(s, 1);
        let g2 = surface.gamma.eval(s, 2);
        let x1 = surface.base.eval(s, 1);
        let x2 = surface.base.eval(s, 2);
        let eps = sig.norm_sq(&g0);
        let eta = sig.norm_sq(&g1);
        let projected = || &x2 - &g0.scale(eps * sig.dot(&g0, &x2));
        let (d, b) = match family {
            FamilyId::EllipticHelicoid1
            | FamilyId::EllipticHelicoid2
            | FamilyId::HyperbolicHelicoid1
            | FamilyId::HyperbolicHelicoid2 => (
                (&g2 + &g0.scale(eps * eta)).euclid_norm(),
                projected().euclid_norm(),
            ),
            FamilyId::ParabolicHelicoid | FamilyId::MinimalHyperbolicParaboloid => {
                (g2.euclid_norm(), projected().euclid_norm())
            }
            FamilyId::MinimalCylinder => (g1.euclid_norm(), sig.norm_sq(&x1).abs()),
            FamilyId::Plane => (g1.euclid_norm(), x2.euclid_norm()),
        };
        direction = direction.max(d);
        base = base.max(b);
    }
    let system = match family {
        FamilyId::ParabolicHelicoid | FamilyId::MinimalHyperbolicParaboloid => {
            "gamma'' = 0, x'' = eps <gamma,x''> gamma"
        }
        FamilyId::MinimalCylinder => "gamma' = 0, <x',x'> = 0",
        FamilyId::Plane => "gamma' = 0, x'' = 0",
        _ => "gamma'' = -eps eta gamma, x'' = eps <gamma,x''> gamma",
    };
    OdeResiduals {
        system: system.into(),
        direction,
        base,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CSummary {
    pub max_abs: f64,
    /// Largest spread of `C(s, .)` over t at fixed s.
    pub max_t_variation: f64,
    /// Largest gap between the decomposition of `f_ss` and its direct value.
    pub decomposition_residual: f64,
    pub evaluated: usize,
}

pub fn c_summary(sig: Signature, surface: &RuledSurface, grid: &Grid, deg_tol: f64) -> CSummary {
    let mut out = CSummary {
        max_abs: 0.0,
        max_t_variation: 0.0,
        decomposition_residual: 0.0,
        evaluated: 0,
    };
    for &s in &grid.s {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &t in &grid.t {
            if let Ok(c) = c_function(sig, surface, s, t, deg_tol) {
                out.evaluated += 1;
                out.max_abs = out.max_abs.max(c.abs());
                lo = lo.min(c);
                hi = hi.max(c);
                if let Ok(r) = decomposition_residual(sig, surface, s, t, deg_tol) {
                    out.decomposition_residual = out.decomposition_residual.max(r);
                }
            }
        }
        if hi >= lo {
            out.max_t_variation = out.max_t_variation.max(hi - lo);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeNote {
    pub applied: bool,
    pub max_g12_before: f64,
    pub max_g12_after: f64,
    pub lambda: Option<surface::LambdaSource>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassifyOptions {
    pub scan_points: usize,
    pub ns: usize,
    pub nt: usize,
    pub tol: Tolerances,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            scan_points: DEFAULT_SCAN_POINTS,
            ns: 41,
            nt: 41,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub case: CaseLabel,
    pub raw_case: CaseLabel,
    pub invariants: Option<CaseInvariants>,
    pub genericity: GenericityReport,
    pub family: Option<FamilyId>,
    pub reductions: Vec<String>,
    pub unrecognized: Option<String>,
    pub minimality: MinimalityReport,
    pub residuals: Option<OdeResiduals>,
    pub c_function: Option<CSummary>,
    pub gauge: GaugeNote,
}

/// Full pipeline: gauge-normalize if needed, scan genericity, compute the
/// invariants and case, identify the family and verify its ODE system.
pub fn classify(
    sig: Signature,
    input: &RuledSurface,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let scan = input.s_domain.linspace(opts.scan_points);
    let cylinder = is_cylinder(input, &scan);
    let mut gauge = GaugeNote {
        applied: false,
        max_g12_before: 0.0,
        max_g12_after: 0.0,
        lambda: None,
    };
    let mut work = input.clone();
    if !cylinder {
        let g12 = scan
            .iter()
            .map(|&s| {
                sig.dot(&input.gamma.eval(s, 0), &input.base.eval(s, 1))
                    .abs()
            })
            .fold(0.0, f64::max);
        gauge.max_g12_before = g12;
        gauge.max_g12_after = g12;
        let unit = scan
            .iter()
            .all(|&s| (sig.norm_sq(&input.gamma.eval(s, 0)).abs() - 1.0).abs() <= CONST_TOL);
        if g12 > CONST_TOL && unit {
            let r = gauge_normalize(sig, input, CONST_TOL)?;
            gauge = GaugeNote {
                applied: true,
                max_g12_before: r.max_g12_before,
                max_g12_after: r.max_g12_after,
                lambda: Some(r.lambda),
            };
            work = r.surface;
        }
    }
    let genericity = genericity_scan(sig, &work, &scan, CONST_TOL);
    if !genericity.is_generic() {
        return Err(Error::NonGeneric {
            count: genericity.singular_points.len(),
        });
    }
    let grid = work.default_grid(opts.ns, opts.nt);
    let ident = identify_family(sig, &work, &grid, &opts.tol)?;
    let minimality = is_minimal(sig, &work, &grid, &opts.tol)?;
    let residuals = ident
        .family
        .map(|f| verify_structure_odes(sig, &work, f, &scan));
    let c = (!cylinder).then(|| c_summary(sig, &work, &grid, opts.tol.degenerate));
    Ok(ClassificationReport {
        case: ident.case,
        raw_case: ident.raw_case,
        invariants: ident.invariants,
        genericity,
        family: ident.family,
        reductions: ident.reductions,
        unrecognized: ident.unrecognized,
        minimality,
        residuals,
        c_function: c,
        gauge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, SignChoice};
    use crate::curve::{Basis, CurveExpr};
    use crate::grid::Interval;

    fn sig(n: usize, p: usize) -> Signature {
        Signature::new(n, p).unwrap()
    }

    fn helicoid() -> RuledSurface {
        generate(
            sig(3, 0),
            FamilyId::EllipticHelicoid1,
            SignChoice::new(1, 1, 1),
        )
        .unwrap()
        .surface
    }

    fn scan(s: &RuledSurface) -> Vec<f64> {
        s.s_domain.linspace(DEFAULT_SCAN_POINTS)
    }

    #[test]
    fn helicoid_is_generic() {
        let h = helicoid();
        let r = genericity_scan(sig(3, 0), &h, &scan(&h), CONST_TOL);
        assert!(r.is_generic());
        assert_eq!(
            r.status(ScalarFunction::Mixed),
            FunctionStatus::IdenticallyZeroOnGrid
        );
        assert_eq!(
            r.status(ScalarFunction::GammaGamma),
            FunctionStatus::NowhereZero
        );
    }

    #[test]
    fn isolated_zeros_are_bracketed() {
        let gamma = CurveExpr::new(3)
            .with(Basis::Pow(1), vec![1.0, 0.0, 0.0])
            .with(Basis::Pow(0), vec![0.0, 1.0, 0.0]);
        let x = CurveExpr::new(3).with(Basis::Pow(1), vec![0.0, 0.0, 1.0]);
        let dom = Interval::symmetric(2.0);
        let s = RuledSurface::new(gamma, x, dom, dom).unwrap();
        let r = genericity_scan(sig(3, 1), &s, &scan(&s), CONST_TOL);
        let zeros: Vec<f64> = r
            .singular_points
            .iter()
            .filter(|p| p.reason == SingularReason::IsolatedZero(ScalarFunction::GammaGamma))
            .map(|p| p.s)
            .collect();
        assert_eq!(zeros.len(), 2);
        assert!((zeros[0] + 1.0).abs() < 1e-9 && (zeros[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dependence_switch_is_flagged() {
        // x' = (0, 0, s) vanishes at s = 0 only
        let gamma = CurveExpr::new(3)
            .with(Basis::Cos(1.0), vec![1.0, 0.0, 0.0])
            .with(Basis::Sin(1.0), vec![0.0, 1.0, 0.0]);
        let x = CurveExpr::new(3).with(Basis::Pow(2), vec![0.0, 0.0, 0.5]);
        let dom = Interval::new(-1.0, 1.0).unwrap();
        let s = RuledSurface::new(gamma, x, dom, dom).unwrap();
        let r = genericity_scan(sig(3, 0), &s, &scan(&s), CONST_TOL);
        assert!(r
            .singular_points
            .iter()
            .any(|p| p.reason == SingularReason::DependenceSwitch));
    }

    #[test]
    fn invariants_of_catalog_surfaces() {
        let h = helicoid();
        let inv = case_invariants(sig(3, 0), &h, &scan(&h)).unwrap();
        assert_eq!(
            (inv.epsilon, inv.eta, inv.delta, inv.mu),
            (1, 1, 1, MuSummary::IdenticallyZero)
        );

        let ph = generate(
            sig(3, 1),
            FamilyId::ParabolicHelicoid,
            SignChoice::new(1, 1, -1),
        )
        .unwrap()
        .surface;
        let inv = case_invariants(sig(3, 1), &ph, &scan(&ph)).unwrap();
        assert_eq!((inv.epsilon, inv.eta, inv.delta), (1, 0, 0));
        match inv.mu {
            MuSummary::Constant { value } => assert!((value + 2.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(case_of(&inv), CaseLabel::VI);

        let mhp = generate(
            sig(4, 1),
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, 1),
        )
        .unwrap()
        .surface;
        let inv = case_invariants(sig(4, 1), &mhp, &scan(&mhp)).unwrap();
        assert_eq!(
            (inv.eta, inv.delta, inv.mu),
            (0, 1, MuSummary::IdenticallyZero)
        );
        assert_eq!(case_of(&inv), CaseLabel::V);
    }

    #[test]
    fn table_rows() {
        assert_eq!(table1_case(1, 1, true), CaseLabel::I);
        assert_eq!(table1_case(-1, -1, true), CaseLabel::I);
        assert_eq!(table1_case(1, 0, true), CaseLabel::II);
        assert_eq!(table1_case(-1, 0, false), CaseLabel::II);
        assert_eq!(table1_case(1, -1, false), CaseLabel::III);
        assert_eq!(table1_case(0, 1, false), CaseLabel::IV);
        assert_eq!(table1_case(0, -1, true), CaseLabel::V);
        assert_eq!(table1_case(0, 0, false), CaseLabel::VI);
        assert_eq!(table1_case(0, 0, true), CaseLabel::VIIExcluded);
    }

    #[test]
    fn cylinder_branch() {
        let tol = Tolerances::default();
        let c = generate(
            sig(3, 1),
            FamilyId::MinimalCylinder,
            SignChoice::new(0, 0, 0),
        )
        .unwrap()
        .surface;
        let grid = c.default_grid(31, 31);
        assert_eq!(
            cylinder_check(sig(3, 1), &c, &grid, &tol),
            CylinderVerdict::MinimalCylinder
        );

        let dom = Interval::symmetric(3.0);
        let circ = RuledSurface::new(
            CurveExpr::constant(Vector(vec![0.0, 0.0, 1.0])),
            CurveExpr::new(3)
                .with(Basis::Cos(1.0), vec![1.0, 0.0, 0.0])
                .with(Basis::Sin(1.0), vec![0.0, 1.0, 0.0]),
            dom,
            dom,
        )
        .unwrap();
        assert_eq!(
            cylinder_check(sig(3, 0), &circ, &grid, &tol),
            CylinderVerdict::NotMinimal
        );

        let plane = RuledSurface::new(
            CurveExpr::constant(Vector(vec![1.0, 0.0, 0.0])),
            CurveExpr::new(3).with(Basis::Pow(1), vec![0.0, 1.0, 0.0]),
            dom,
            dom,
        )
        .unwrap();
        assert_eq!(
            cylinder_check(sig(3, 0), &plane, &grid, &tol),
            CylinderVerdict::Plane
        );
    }

    #[test]
    fn classify_examples() {
        let opts = ClassifyOptions::default();
        let r = classify(sig(3, 0), &helicoid(), &opts).unwrap();
        assert_eq!(
            (r.case, r.family),
            (CaseLabel::I, Some(FamilyId::EllipticHelicoid1))
        );
        assert!(r.residuals.unwrap().max() <= 1e-12);

        let ph = generate(
            sig(3, 1),
            FamilyId::ParabolicHelicoid,
            SignChoice::new(1, 1, -1),
        )
        .unwrap()
        .surface;
        let r = classify(sig(3, 1), &ph, &opts).unwrap();
        assert_eq!(
            (r.raw_case, r.case, r.family),
            (
                CaseLabel::VI,
                CaseLabel::IV,
                Some(FamilyId::ParabolicHelicoid)
            )
        );
        assert_eq!(r.residuals.as_ref().unwrap().direction, 0.0);
        assert!(r.c_function.unwrap().max_abs <= 1e-9);
    }

    #[test]
    fn case_vii_is_excluded() {
        let gamma = CurveExpr::new(3)
            .with(Basis::Pow(1), vec![1.0, 1.0, 0.0])
            .with(Basis::Pow(0), vec![0.0, 0.0, 1.0]);
        let x = CurveExpr::new(3).with(Basis::Pow(1), vec![1.0, 1.0, 0.0]);
        let dom = Interval::symmetric(2.0);
        let s = RuledSurface::new(gamma, x, dom, dom).unwrap();
        assert!(matches!(
            classify(sig(3, 1), &s, &ClassifyOptions::default()),
            Err(Error::CaseViiExcluded)
        ));
    }

    #[test]
    fn case_iii_with_dependent_derivatives_is_a_plane() {
        let circle = CurveExpr::new(3)
            .with(Basis::Cos(1.0), vec![1.0, 0.0, 0.0])
            .with(Basis::Sin(1.0), vec![0.0, 1.0, 0.0]);
        let s = RuledSurface::new(
            circle.clone(),
            circle.scaled(2.0),
            Interval::symmetric(3.0),
            Interval::symmetric(1.0),
        )
        .unwrap();
        let r = classify(sig(3, 0), &s, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.raw_case, CaseLabel::III);
        assert_eq!(r.family, Some(FamilyId::Plane));
        assert!(r.reductions[0].contains("plane"));
    }

    #[test]
    fn null_direction_is_rejected() {
        let gamma = CurveExpr::new(3)
            .with(Basis::Pow(0), vec![1.0, 0.0, 0.0])
            .with(Basis::Cos(1.0), vec![0.0, 1.0, 0.0])
            .with(Basis::Sin(1.0), vec![0.0, 0.0, 1.0]);
        let x = CurveExpr::new(3).with(Basis::Pow(1), vec![1.0, 0.0, 0.0]);
        let dom = Interval::symmetric(2.0);
        let s = RuledSurface::new(gamma, x, dom, dom).unwrap();
        assert!(matches!(
            classify(sig(3, 1), &s, &ClassifyOptions::default()),
            Err(Error::NotMinimalByNullDirection)
        ));
    }

    #[test]
    fn structure_odes() {
        let h = helicoid();
        let r = verify_structure_odes(sig(3, 0), &h, FamilyId::EllipticHelicoid1, &scan(&h));
        assert!(r.max() <= 1e-12);
        let m = generate(
            sig(4, 1),
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, 1),
        )
        .unwrap()
        .surface;
        let r = verify_structure_odes(
            sig(4, 1),
            &m,
            FamilyId::MinimalHyperbolicParaboloid,
            &scan(&m),
        );
        assert_eq!((r.direction, r.base), (0.0, 0.0));
        assert!(m.base.eval(0.7, 2).is_zero());
    }
}
