//! Generators for the classified ruled minimal surfaces, their closed-form
//! `det g`, causal region maps, the degenerate-span check and the entire
//! minimal graph check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{Basis, CurveExpr};
use crate::error::{Error, Result};
use crate::existence;
use crate::grid::{Grid, Interval};
use crate::metric::{gram_matrix, Signature, Vector};
use crate::surface::{self, first_form, immersion_jet, RuledSurface, Tolerances, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    Plane,
    MinimalCylinder,
    EllipticHelicoid1,
    EllipticHelicoid2,
    HyperbolicHelicoid1,
    HyperbolicHelicoid2,
    ParabolicHelicoid,
    MinimalHyperbolicParaboloid,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::Plane,
        FamilyId::MinimalCylinder,
        FamilyId::EllipticHelicoid1,
        FamilyId::EllipticHelicoid2,
        FamilyId::HyperbolicHelicoid1,
        FamilyId::HyperbolicHelicoid2,
        FamilyId::ParabolicHelicoid,
        FamilyId::MinimalHyperbolicParaboloid,
    ];

    /// The seven numbered families, in table order.
    pub const NUMBERED: [FamilyId; 7] = [
        FamilyId::MinimalCylinder,
        FamilyId::EllipticHelicoid1,
        FamilyId::EllipticHelicoid2,
        FamilyId::HyperbolicHelicoid1,
        FamilyId::HyperbolicHelicoid2,
        FamilyId::ParabolicHelicoid,
        FamilyId::MinimalHyperbolicParaboloid,
    ];

    /// Column index 1..=7 in the existence table; `None` for the plane.
    pub fn number(self) -> Option<usize> {
        FamilyId::NUMBERED
            .iter()
            .position(|&f| f == self)
            .map(|i| i + 1)
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyId::Plane => "plane",
            FamilyId::MinimalCylinder => "minimal-cylinder",
            FamilyId::EllipticHelicoid1 => "elliptic-helicoid-1",
            FamilyId::EllipticHelicoid2 => "elliptic-helicoid-2",
            FamilyId::HyperbolicHelicoid1 => "hyperbolic-helicoid-1",
            FamilyId::HyperbolicHelicoid2 => "hyperbolic-helicoid-2",
            FamilyId::ParabolicHelicoid => "parabolic-helicoid",
            FamilyId::MinimalHyperbolicParaboloid => "minimal-hyperbolic-paraboloid",
        }
    }

    /// Number of frame vectors the family is built from.
    pub fn frame_size(self) -> usize {
        match self {
            FamilyId::Plane => 2,
            _ => 3,
        }
    }

    /// Whether the family's axis vector `e3` (or `e1` for the paraboloid) is null.
    pub fn has_null_frame_vector(self) -> bool {
        matches!(
            self,
            FamilyId::EllipticHelicoid2
                | FamilyId::HyperbolicHelicoid2
                | FamilyId::MinimalHyperbolicParaboloid
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        for f in FamilyId::ALL {
            let debug = format!("{f:?}").to_ascii_lowercase();
            if key == f.cli_name()
                || key == debug
                || f.number().map(|k| k.to_string()) == Some(key.clone())
            {
                return Ok(f);
            }
        }
        let names: Vec<_> = FamilyId::ALL.iter().map(|f| f.cli_name()).collect();
        Err(Error::Usage(format!(
            "unknown family `{s}`; expected one of {}",
            names.join(", ")
        )))
    }
}

/// Prescribed norms `(<e1,e1>, <e2,e2>, <e3,e3>)`, each in {-1, 0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignChoice {
    pub s1: i8,
    pub s2: i8,
    pub s3: i8,
}

impl SignChoice {
    pub const fn new(s1: i8, s2: i8, s3: i8) -> Self {
        Self { s1, s2, s3 }
    }

    pub fn as_array(self) -> [i8; 3] {
        [self.s1, self.s2, self.s3]
    }

    /// Norms of the vectors actually used to build `family`.
    pub fn used_norms(self, family: FamilyId) -> Vec<i8> {
        match family {
            FamilyId::Plane => vec![self.s2, self.s3],
            _ => self.as_array().to_vec(),
        }
    }

    /// The same choice with every norm negated.
    pub fn flipped(self) -> Self {
        Self::new(-self.s1, -self.s2, -self.s3)
    }
}

impl fmt::Display for SignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |v: i8| match v {
            1 => '+',
            -1 => '-',
            _ => '0',
        };
        write!(f, "{},{},{}", c(self.s1), c(self.s2), c(self.s3))
    }
}

impl FromStr for SignChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Usage(format!(
                "signs must be three of +,-,0 (or 1,-1,0), got `{s}`"
            ))
        };
        let parts: Vec<i8> = s
            .split(',')
            .map(|p| match p.trim() {
                "+" | "1" | "+1" => Ok(1),
                "-" | "-1" => Ok(-1),
                "0" => Ok(0),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        match parts[..] {
            [a, b, c] => Ok(Self::new(a, b, c)),
            _ => Err(bad()),
        }
    }
}

/// Every sign choice the family's double signs allow.
pub fn admissible_signs(family: FamilyId) -> Vec<SignChoice> {
    let pm = [1i8, -1];
    let mut out = Vec::new();
    match family {
        FamilyId::MinimalCylinder => out.push(SignChoice::new(0, 0, 0)),
        FamilyId::EllipticHelicoid1 => {
            for a in pm {
                for b in pm {
                    out.push(SignChoice::new(a, a, b));
                }
            }
        }
        FamilyId::EllipticHelicoid2 => out.extend(pm.map(|a| SignChoice::new(a, a, 0))),
        FamilyId::HyperbolicHelicoid1 => {
            for a in pm {
                for b in pm {
                    out.push(SignChoice::new(a, -a, b));
                }
            }
        }
        FamilyId::HyperbolicHelicoid2 => out.extend(pm.map(|a| SignChoice::new(a, -a, 0))),
        FamilyId::ParabolicHelicoid => out.extend(pm.map(|a| SignChoice::new(a, a, -a))),
        FamilyId::MinimalHyperbolicParaboloid | FamilyId::Plane => {
            for a in pm {
                for b in pm {
                    out.push(SignChoice::new(0, a, b));
                }
            }
        }
    }
    out
}

pub fn check_admissible(family: FamilyId, signs: SignChoice) -> Result<()> {
    if admissible_signs(family).contains(&signs) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "sign choice ({signs}) is not admissible for {family}"
        )))
    }
}

/// Integer frame with its exact Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub vectors: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
}

impl FrameSpec {
    pub fn new(sig: Signature, vectors: Vec<Vec<i64>>) -> Result<Self> {
        let gram = gram_matrix::<i64, _>(sig, &vectors)?;
        Ok(Self { vectors, gram })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, i: usize) -> Vector {
        Vector::from(&self.vectors[i][..])
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.len()).map(|i| self.gram[i][i]).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || self.gram[i][j] == 0))
    }

    /// Recomputes the Gram matrix exactly and compares it with the stored one.
    pub fn gram_is_exact(&self, sig: Signature) -> bool {
        gram_matrix::<i64, _>(sig, &self.vectors)
            .map(|g| g == self.gram)
            .unwrap_or(false)
    }

    /// Exact rank of the vectors as a real matrix.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = self
            .vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        rational_rank(rows)
    }
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let k = &rows[r][c] / &rows[rank][c];
                for j in c..cols {
                    let d = &k * &rows[rank][j];
                    rows[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A generated catalog surface together with the frame it was built on.
#[derive(Clone, Debug)]
pub struct CatalogSurface {
    pub sig: Signature,
    pub family: FamilyId,
    pub signs: SignChoice,
    pub frame: FrameSpec,
    pub surface: RuledSurface,
}

pub const DEFAULT_RANGE: f64 = 3.0;
pub const DEFAULT_GRID: usize = 101;
/// Verification grids exclude points with `|det g|` at or below this.
pub const DET_BAND: f64 = 1e-6;

/// Tolerances used when verifying catalog output.
pub fn catalog_tolerances() -> Tolerances {
    Tolerances {
        degenerate: DET_BAND,
        ..Tolerances::default()
    }
}

/// Builds the family from an existence witness.
pub fn generate(sig: Signature, family: FamilyId, signs: SignChoice) -> Result<CatalogSurface> {
    let sig = Signature::for_surfaces(sig.n, sig.p)?;
    check_admissible(family, signs)?;
    let frame = existence::witness_frame(sig, family, signs)?;
    generate_with_frame(sig, family, frame)
}

/// Builds the family on a caller-supplied frame after checking it.
pub fn generate_with_frame(
    sig: Signature,
    family: FamilyId,
    frame: FrameSpec,
) -> Result<CatalogSurface> {
    let signs = existence::validate_frame(sig, family, &frame)?;
    let e = |i: usize| frame.vector(i);
    let n = sig.n;
    let (gamma, base) = match family {
        FamilyId::Plane => (
            CurveExpr::constant(e(1)),
            CurveExpr::new(n).with(Basis::Pow(1), e(0)),
        ),
        FamilyId::MinimalCylinder => {
            let (time, space, third) = (e(0), e(1), e(2));
            let gamma0 = &time + &space;
            // a spacelike third axis pairs with (sinh, cosh), a timelike one with (cosh, sinh)
            let base = if frame.gram[2][2] > 0 {
                CurveExpr::new(n)
                    .with(Basis::Sinh(1.0), time)
                    .with(Basis::Cosh(1.0), space)
            } else {
                CurveExpr::new(n)
                    .with(Basis::Cosh(1.0), time)
                    .with(Basis::Sinh(1.0), space)
            };
            (CurveExpr::constant(gamma0), base.with(Basis::Pow(1), third))
        }
        FamilyId::EllipticHelicoid1 | FamilyId::EllipticHelicoid2 => (
            CurveExpr::new(n)
                .with(Basis::Cos(1.0), e(0))
                .with(Basis::Sin(1.0), e(1)),
            CurveExpr::new(n).with(Basis::Pow(1), e(2)),
        ),
        FamilyId::HyperbolicHelicoid1 | FamilyId::HyperbolicHelicoid2 => (
            CurveExpr::new(n)
                .with(Basis::Cosh(1.0), e(0))
                .with(Basis::Sinh(1.0), e(1)),
            CurveExpr::new(n).with(Basis::Pow(1), e(2)),
        ),
        FamilyId::ParabolicHelicoid => {
            let sum = &e(1) + &e(2);
            let diff = &e(2) - &e(1);
            (
                CurveExpr::new(n)
                    .with(Basis::Pow(0), e(0))
                    .with(Basis::Pow(1), sum.clone()),
                CurveExpr::new(n)
                    .with(Basis::Pow(2), e(0))
                    .with(Basis::Pow(3), sum.scale(1.0 / 3.0))
                    .with(Basis::Pow(1), diff),
            )
        }
        FamilyId::MinimalHyperbolicParaboloid => (
            CurveExpr::new(n)
                .with(Basis::Pow(1), e(0))
                .with(Basis::Pow(0), e(1)),
            CurveExpr::new(n).with(Basis::Pow(1), e(2)),
        ),
    };
    let dom = Interval::symmetric(DEFAULT_RANGE);
    let surface = RuledSurface::new(gamma, base, dom, dom)?;
    Ok(CatalogSurface {
        sig,
        family,
        signs,
        frame,
        surface,
    })
}

impl CatalogSurface {
    pub fn default_grid(&self) -> Grid {
        self.surface.default_grid(DEFAULT_GRID, DEFAULT_GRID)
    }

    pub fn verify_minimal(&self) -> Result<surface::MinimalityReport> {
        surface::is_minimal(
            self.sig,
            &self.surface,
            &self.default_grid(),
            &catalog_tolerances(),
        )
    }
}

/// `det g` as a polynomial in `t` (ascending coefficients), or the
/// s-dependent form of the cylinder.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetGForm {
    pub coeffs: Vec<f64>,
    pub s_dependent: bool,
    pub expression: String,
}

impl DetGForm {
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Real roots in `t` in increasing order.
    pub fn roots(&self) -> Vec<f64> {
        let c = |i: usize| self.coeffs.get(i).copied().unwrap_or(0.0);
        let (a, b, c0) = (c(2), c(1), c(0));
        let mut r = if a != 0.0 {
            let disc = b * b - 4.0 * a * c0;
            if disc < 0.0 {
                vec![]
            } else if disc == 0.0 {
                vec![-b / (2.0 * a)]
            } else {
                let sq = disc.sqrt();
                vec![(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
            }
        } else if b != 0.0 {
            vec![-c0 / b]
        } else {
            vec![]
        };
        for x in &mut r {
            if *x == 0.0 {
                *x = 0.0; // normalize -0
            }
        }
        r.sort_by(f64::total_cmp);
        r
    }
}

pub fn det_g_closed_form(family: FamilyId, signs: SignChoice) -> Result<DetGForm> {
    check_admissible(family, signs)?;
    let (s1, s2, s3) = (signs.s1 as f64, signs.s2 as f64, signs.s3 as f64);
    let poly = |coeffs: Vec<f64>| {
        let expr = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            })
            .collect::<Vec<_>>()
            .join(" + ");
        DetGForm {
            coeffs,
            s_dependent: false,
            expression: expr,
        }
    };
    Ok(match family {
        FamilyId::EllipticHelicoid1 | FamilyId::HyperbolicHelicoid1 => {
            poly(vec![s1 * s3, 0.0, s1 * s2])
        }
        FamilyId::EllipticHelicoid2 | FamilyId::HyperbolicHelicoid2 => {
            poly(vec![0.0, 0.0, s1 * s2])
        }
        FamilyId::ParabolicHelicoid => poly(vec![0.0, -4.0]),
        FamilyId::MinimalHyperbolicParaboloid | FamilyId::Plane => poly(vec![s2 * s3]),
        FamilyId::MinimalCylinder => DetGForm {
            coeffs: vec![],
            s_dependent: true,
            expression: "-<gamma0, x'(s)>^2".into(),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionType {
    Spacelike,
    Timelike,
}

/// Induced-metric type at a point from the sign of `det g`.
pub fn region_type(det_g: f64) -> Option<RegionType> {
    if det_g > 0.0 {
        Some(RegionType::Spacelike)
    } else if det_g < 0.0 {
        Some(RegionType::Timelike)
    } else {
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Region {
    pub t_lo: f64,
    pub t_hi: f64,
    pub verdict: RegionType,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleAgreement {
    pub sampled: usize,
    pub excluded_band: usize,
    pub agree: usize,
    pub disagree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CausalRegionReport {
    pub family: FamilyId,
    pub signs: SignChoice,
    pub det_g: DetGForm,
    pub regions: Vec<Region>,
    pub degenerate_loci: Vec<f64>,
    pub constant_verdict: Option<RegionType>,
    pub samples: SampleAgreement,
}

/// Partitions the t-domain by the roots of the closed-form `det g` and
/// cross-checks the verdicts against sampled first forms.
pub fn causal_map(
    sig: Signature,
    family: FamilyId,
    signs: SignChoice,
    t_domain: Interval,
) -> Result<CausalRegionReport> {
    causal_map_sampled(sig, family, signs, t_domain, 100, 100)
}

pub fn causal_map_sampled(
    sig: Signature,
    family: FamilyId,
    signs: SignChoice,
    t_domain: Interval,
    ns: usize,
    nt: usize,
) -> Result<CausalRegionReport> {
    let det = det_g_closed_form(family, signs)?;
    let mut cat = generate(sig, family, signs)?;
    cat.surface.t_domain = t_domain;

    let (regions, loci) = if det.s_dependent {
        // -<gamma0,x'>^2 with <gamma0,x'> = +-e^{-s}: never zero
        (
            vec![Region {
                t_lo: t_domain.lo,
                t_hi: t_domain.hi,
                verdict: RegionType::Timelike,
            }],
            vec![],
        )
    } else {
        let loci: Vec<f64> = det
            .roots()
            .into_iter()
            .filter(|r| t_domain.contains(*r))
            .collect();
        let mut cuts = vec![t_domain.lo];
        cuts.extend(
            loci.iter()
                .copied()
                .filter(|r| *r > t_domain.lo && *r < t_domain.hi),
        );
        cuts.push(t_domain.hi);
        let mut regions = Vec::new();
        for w in cuts.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            let mid = 0.5 * (w[0] + w[1]);
            if let Some(v) = region_type(det.eval(mid)) {
                regions.push(Region {
                    t_lo: w[0],
                    t_hi: w[1],
                    verdict: v,
                });
            }
        }
        (regions, loci)
    };
    let constant_verdict = match regions.as_slice() {
        [only] if loci.is_empty() => Some(only.verdict),
        _ => None,
    };

    let grid = Grid::uniform(cat.surface.s_domain, t_domain, ns, nt);
    let mut samples = SampleAgreement {
        sampled: 0,
        excluded_band: 0,
        agree: 0,
        disagree: 0,
    };
    for (s, t) in grid.points() {
        samples.sampled += 1;
        let d = first_form(sig, &immersion_jet(&cat.surface, s, t)).det_g;
        if d.abs() <= DET_BAND {
            samples.excluded_band += 1;
            continue;
        }
        let expected = regions
            .iter()
            .find(|r| r.t_lo <= t && t <= r.t_hi && !loci.contains(&t))
            .map(|r| r.verdict);
        if expected.is_some() && expected == region_type(d) {
            samples.agree += 1;
        } else {
            samples.disagree += 1;
        }
    }
    Ok(CausalRegionReport {
        family,
        signs,
        det_g: det,
        regions,
        degenerate_loci: loci,
        constant_verdict,
        samples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpanKind {
    DegenerateSpan,
    NonDegenerateSpan,
}

/// Whether the metric restricted to the span of the frame is degenerate.
pub fn degenerate_span_check(sig: Signature, frame: &FrameSpec) -> Result<SpanKind> {
    if frame.rank() != frame.len() {
        return Err(Error::Usage("frame vectors are linearly dependent".into()));
    }
    let gram = gram_matrix::<i64, _>(sig, &frame.vectors)?;
    let rows = gram
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    Ok(if rational_rank(rows) < frame.len() {
        SpanKind::DegenerateSpan
    } else {
        SpanKind::NonDegenerateSpan
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BernsteinDomain {
    pub half_width: f64,
    pub points: usize,
    pub min_g11: f64,
    pub min_det_g: f64,
    pub max_h: f64,
    pub graph_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BernsteinReport {
    pub exists: bool,
    pub entire_graph: bool,
    pub spacelike: bool,
    pub minimal: bool,
    pub planar: bool,
    pub frame: FrameSpec,
    pub domains: Vec<BernsteinDomain>,
}

pub const BERNSTEIN_WIDTHS: [f64; 4] = [1.0, 10.0, 50.0, 100.0];

/// Checks the spacelike minimal hyperbolic paraboloid as an entire,
/// non-planar minimal graph over the plane spanned by `e2, e3`.
pub fn bernstein_check(sig: Signature, signs: SignChoice) -> Result<BernsteinReport> {
    if signs.s1 != 0 || signs.s2 != signs.s3 || signs.s2 == 0 {
        return Err(Error::Usage(format!(
            "entire graph check needs signs (0,s,s), got ({signs})"
        )));
    }
    let cat = generate(sig, FamilyId::MinimalHyperbolicParaboloid, signs)?;
    let (e2, e3) = (cat.frame.vector(1), cat.frame.vector(2));
    let (n2, n3) = (signs.s2 as f64, signs.s3 as f64);
    let tol = Tolerances::default();

    let mut domains = Vec::new();
    let (mut spacelike, mut minimal, mut graph, mut planar) = (true, true, true, true);
    for &w in &BERNSTEIN_WIDTHS {
        let dom = Interval::symmetric(w);
        let mut s = cat.surface.clone();
        s.s_domain = dom;
        s.t_domain = dom;
        let grid = Grid::uniform(dom, dom, 41, 41);
        let (mut min_g11, mut min_det, mut graph_err) = (f64::INFINITY, f64::INFINITY, 0.0f64);
        for (u, v) in grid.points() {
            let jet = immersion_jet(&s, u, v);
            let ff = first_form(sig, &jet);
            min_g11 = min_g11.min(ff.g11);
            min_det = min_det.min(ff.det_g);
            // the coordinates (s,t) are recovered linearly from the point
            let su = n3 * sig.dot(&jet.f, &e3);
            let tv = n2 * sig.dot(&jet.f, &e2);
            graph_err = graph_err.max((su - u).abs()).max((tv - v).abs());
        }
        let rep = surface::is_minimal(sig, &s, &grid, &tol)?;
        let geo = surface::is_totally_geodesic(sig, &s, &grid, &tol)?;
        spacelike &= min_g11 > 0.0 && min_det > 0.0;
        minimal &= rep.verdict == Verdict::Minimal;
        graph &= graph_err <= 1e-9 * w.max(1.0);
        planar &= geo.totally_geodesic;
        domains.push(BernsteinDomain {
            half_width: w,
            points: grid.len(),
            min_g11,
            min_det_g: min_det,
            max_h: rep.max_h,
            graph_error: graph_err,
        });
    }
    Ok(BernsteinReport {
        exists: true,
        entire_graph: graph,
        spacelike,
        minimal,
        planar,
        frame: cat.frame,
        domains,
    })
}

/// Sign of the exact determinant of an integer matrix.
#[allow(clippy::needless_range_loop)]
pub fn exact_det_sign(m: &[Vec<i64>]) -> i8 {
    let mut rows: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let n = rows.len();
    let mut sign = 1i8;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            rows.swap(p, c);
            sign = -sign;
        }
        if rows[c][c].is_negative() {
            sign = -sign;
        }
        for r in (c + 1)..n {
            let k = &rows[r][c] / &rows[c][c];
            for j in c..n {
                let d = &k * &rows[c][j];
                rows[r][j] -= d;
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ParamCurve;
    use crate::surface::forms_at;

    fn sig(n: usize, p: usize) -> Signature {
        Signature::new(n, p).unwrap()
    }

    #[test]
    fn classical_helicoid_from_catalog() {
        let c = generate(
            sig(3, 0),
            FamilyId::EllipticHelicoid1,
            SignChoice::new(1, 1, 1),
        )
        .unwrap();
        for &(s, t) in &[(0.3, -1.2), (2.0, 0.5)] {
            let f = c.surface.point(s, t);
            let want = [t * s.cos(), t * s.sin(), s];
            assert!(f.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-14));
        }
    }

    #[test]
    fn neutral_witness_frame_matches_catalog() {
        let c = generate(
            sig(4, 2),
            FamilyId::HyperbolicHelicoid2,
            SignChoice::new(-1, 1, 0),
        )
        .unwrap();
        assert_eq!(
            c.frame.vectors,
            vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 1]]
        );
        assert_eq!(c.frame.diagonal(), vec![-1, 1, 0]);
    }

    #[test]
    fn minimal_cylinder_in_minkowski_three_space() {
        let c = generate(
            sig(3, 1),
            FamilyId::MinimalCylinder,
            SignChoice::new(0, 0, 0),
        )
        .unwrap();
        assert_eq!(c.surface.gamma.eval(0.0, 0), Vector(vec![1.0, 1.0, 0.0]));
        for &s in &[-1.0, 0.0, 2.5] {
            let x = c.surface.base_expr().unwrap().eval(s, 0);
            assert!((&x - &Vector(vec![s.sinh(), s.cosh(), s])).euclid_norm() < 1e-14);
        }
    }

    #[test]
    fn inadmissible_requests() {
        assert!(matches!(
            generate(
                sig(3, 1),
                FamilyId::HyperbolicHelicoid2,
                SignChoice::new(1, -1, 0)
            ),
            Err(Error::NonExistence(_))
        ));
        assert!(matches!(
            generate(
                sig(3, 0),
                FamilyId::EllipticHelicoid1,
                SignChoice::new(1, -1, 1)
            ),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn closed_forms() {
        let d = det_g_closed_form(FamilyId::EllipticHelicoid1, SignChoice::new(1, 1, 1)).unwrap();
        assert_eq!(d.coeffs, vec![1.0, 0.0, 1.0]);
        let d = det_g_closed_form(FamilyId::ParabolicHelicoid, SignChoice::new(1, 1, -1)).unwrap();
        assert_eq!(d.coeffs, vec![0.0, -4.0]);
        assert_eq!(d.roots(), vec![0.0]);
        let d =
            det_g_closed_form(FamilyId::HyperbolicHelicoid2, SignChoice::new(1, -1, 0)).unwrap();
        assert_eq!(d.coeffs, vec![0.0, 0.0, -1.0]);
        assert_eq!(d.roots(), vec![0.0]);
        let d = det_g_closed_form(FamilyId::EllipticHelicoid1, SignChoice::new(1, 1, -1)).unwrap();
        assert_eq!(d.roots(), vec![-1.0, 1.0]);
        assert!(
            det_g_closed_form(FamilyId::MinimalCylinder, SignChoice::new(0, 0, 0))
                .unwrap()
                .s_dependent
        );
    }

    #[test]
    fn causal_maps() {
        let r = causal_map(
            sig(3, 1),
            FamilyId::EllipticHelicoid1,
            SignChoice::new(1, 1, -1),
            Interval::symmetric(3.0),
        )
        .unwrap();
        assert_eq!(r.degenerate_loci, vec![-1.0, 1.0]);
        let v: Vec<_> = r.regions.iter().map(|x| x.verdict).collect();
        assert_eq!(
            v,
            vec![
                RegionType::Spacelike,
                RegionType::Timelike,
                RegionType::Spacelike
            ]
        );
        assert_eq!(r.samples.disagree, 0);

        let r = causal_map(
            sig(3, 1),
            FamilyId::ParabolicHelicoid,
            SignChoice::new(1, 1, -1),
            Interval::symmetric(3.0),
        )
        .unwrap();
        assert_eq!(r.degenerate_loci, vec![0.0]);
        assert_eq!(r.regions[0].verdict, RegionType::Spacelike);
        assert_eq!(r.regions[1].verdict, RegionType::Timelike);

        let r = causal_map(
            sig(4, 1),
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, 1),
            Interval::symmetric(3.0),
        )
        .unwrap();
        assert_eq!(r.constant_verdict, Some(RegionType::Spacelike));
        assert!(r.degenerate_loci.is_empty());
    }

    #[test]
    fn span_checks() {
        let neutral = FrameSpec::new(
            sig(4, 2),
            vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 1]],
        )
        .unwrap();
        assert_eq!(
            degenerate_span_check(sig(4, 2), &neutral).unwrap(),
            SpanKind::DegenerateSpan
        );
        let std =
            FrameSpec::new(sig(3, 0), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(
            degenerate_span_check(sig(3, 0), &std).unwrap(),
            SpanKind::NonDegenerateSpan
        );
        let par = FrameSpec::new(
            sig(4, 1),
            vec![vec![1, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
        )
        .unwrap();
        assert_eq!(
            degenerate_span_check(sig(4, 1), &par).unwrap(),
            SpanKind::DegenerateSpan
        );
        let dep =
            FrameSpec::new(sig(3, 0), vec![vec![1, 0, 0], vec![2, 0, 0], vec![0, 0, 1]]).unwrap();
        assert!(degenerate_span_check(sig(3, 0), &dep).is_err());
    }

    #[test]
    fn bernstein() {
        let r = bernstein_check(sig(4, 1), SignChoice::new(0, 1, 1)).unwrap();
        assert!(r.exists && r.entire_graph && r.spacelike && r.minimal && !r.planar);
        assert!(matches!(
            bernstein_check(sig(3, 0), SignChoice::new(0, 1, 1)),
            Err(Error::NonExistence(_))
        ));
        assert!(matches!(
            bernstein_check(sig(3, 1), SignChoice::new(0, 1, 1)),
            Err(Error::NonExistence(_))
        ));
    }

    #[test]
    fn paraboloid_forms_match_closed_form() {
        let c = generate(
            sig(4, 1),
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, 1),
        )
        .unwrap();
        let b = forms_at(c.sig, &c.surface, 1.5, -2.0, 1e-9).unwrap();
        assert_eq!(
            (b.first.g11, b.first.g12, b.first.g22, b.first.det_g),
            (1.0, 0.0, 1.0, 1.0)
        );
    }

    #[test]
    fn sign_and_family_parsing() {
        assert_eq!(
            "+,-,0".parse::<SignChoice>().unwrap(),
            SignChoice::new(1, -1, 0)
        );
        assert_eq!(
            "1,1,-1".parse::<SignChoice>().unwrap(),
            SignChoice::new(1, 1, -1)
        );
        assert!("1,1".parse::<SignChoice>().is_err());
        assert_eq!(
            "elliptic-helicoid-1".parse::<FamilyId>().unwrap(),
            FamilyId::EllipticHelicoid1
        );
        assert_eq!(
            "ParabolicHelicoid".parse::<FamilyId>().unwrap(),
            FamilyId::ParabolicHelicoid
        );
        assert_eq!(
            "7".parse::<FamilyId>().unwrap(),
            FamilyId::MinimalHyperbolicParaboloid
        );
        assert!("torus".parse::<FamilyId>().is_err());
    }

    #[test]
    fn exact_det_signs() {
        assert_eq!(exact_det_sign(&[vec![-1, 0], vec![0, 1]]), -1);
        assert_eq!(exact_det_sign(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(exact_det_sign(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(
            exact_det_sign(&[vec![2, 0, 0], vec![0, -3, 0], vec![0, 0, -1]]),
            1
        );
    }
}
