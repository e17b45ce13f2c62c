//! Pointwise differential geometry of ruled surfaces `f(s,t) = gamma(s) t + x(s)`.
//!
//! Fundamental forms are taken with respect to the coordinates `(s,t)`. The
//! second fundamental form is the ambient-normal part of the second
//! derivatives, found by solving the 2x2 Gram system of `(f_s, f_t)` under the
//! indefinite metric. No orthonormal tangent frame is built: a non-degenerate
//! tangent plane may still contain null directions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveExpr, ParamCurve};
use crate::error::{Error, Result};
use crate::grid::{Grid, Interval};
use crate::metric::{Signature, Vector};
use crate::quadrature;

/// `|det g|` at or below this is treated as a degenerate tangent plane.
pub const TAU_DEG: f64 = 1e-9;
/// Default bound on `max |H|` for a minimality verdict.
pub const H_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on the Euclidean norm of H (or of h_ij for total geodesy).
    pub h: f64,
    /// Points with `|det g| <= degenerate` are skipped and reported.
    pub degenerate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            h: H_TOL,
            degenerate: TAU_DEG,
        }
    }
}

/// Base curve of a ruled surface: closed form, or the output of
/// [`gauge_normalize`] when the shift `lambda` has no closed form.
#[derive(Clone, Debug)]
pub enum BaseCurve {
    Expr(CurveExpr),
    Gauged(GaugedBase),
}

impl ParamCurve for BaseCurve {
    fn dim(&self) -> usize {
        match self {
            BaseCurve::Expr(c) => c.n(),
            BaseCurve::Gauged(g) => g.original.n(),
        }
    }

    fn eval(&self, s: f64, order: usize) -> Vector {
        match self {
            BaseCurve::Expr(c) => c.eval(s, order),
            BaseCurve::Gauged(g) => g.eval(s, order),
        }
    }
}

impl From<CurveExpr> for BaseCurve {
    fn from(c: CurveExpr) -> Self {
        BaseCurve::Expr(c)
    }
}

/// `x~(s) = x(s) + lambda(s) gamma(s)` with `lambda(s) = -eps int_0^s <gamma, x'>`.
///
/// Only `lambda` itself comes from quadrature; its derivatives are exact
/// combinations of curve derivatives, so every derivative of `x~` of order
/// >= 1 is as exact as the inputs.
#[derive(Clone, Debug)]
pub struct GaugedBase {
    sig: Signature,
    original: CurveExpr,
    gamma: CurveExpr,
    epsilon: f64,
    table: LambdaTable,
}

/// Cumulative quadrature of `lambda` at fixed nodes.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaTable {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

const LAMBDA_TOL: f64 = 1e-11;

impl GaugedBase {
    fn integrand(&self, s: f64) -> f64 {
        -self.epsilon
            * self
                .sig
                .dot(&self.gamma.eval(s, 0), &self.original.eval(s, 1))
    }

    /// j-th derivative of lambda; j >= 1 is exact.
    pub fn lambda(&self, s: f64, order: usize) -> f64 {
        if order == 0 {
            let nodes = &self.table.nodes;
            let k = match nodes.partition_point(|&x| x <= s) {
                0 => 0,
                i => (i - 1).min(nodes.len() - 1),
            };
            let k = if k + 1 < nodes.len() && (nodes[k + 1] - s).abs() < (s - nodes[k]).abs() {
                k + 1
            } else {
                k
            };
            let (v, _) =
                quadrature::integrate(|u| self.integrand(u), nodes[k], s, 0.1 * LAMBDA_TOL);
            return self.table.values[k] + v;
        }
        // lambda^(j) = -eps sum_i C(j-1,i) <gamma^(i), x^(j-i)>
        let j = order - 1;
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=j {
            acc += binom
                * self
                    .sig
                    .dot(&self.gamma.eval(s, i), &self.original.eval(s, j - i + 1));
            binom = binom * (j - i) as f64 / (i + 1) as f64;
        }
        -self.epsilon * acc
    }

    fn eval(&self, s: f64, order: usize) -> Vector {
        let mut out = self.original.eval(s, order);
        let mut binom = 1.0;
        for j in 0..=order {
            let l = self.lambda(s, j);
            if l != 0.0 {
                out.axpy(binom * l, &self.gamma.eval(s, order - j));
            }
            binom = binom * (order - j) as f64 / (j + 1) as f64;
        }
        out
    }

    pub fn table(&self) -> &LambdaTable {
        &self.table
    }
}

#[derive(Clone, Debug)]
pub struct RuledSurface {
    pub gamma: CurveExpr,
    pub base: BaseCurve,
    pub s_domain: Interval,
    pub t_domain: Interval,
}

impl RuledSurface {
    pub fn new(
        gamma: CurveExpr,
        base: impl Into<BaseCurve>,
        s_domain: Interval,
        t_domain: Interval,
    ) -> Result<Self> {
        let base = base.into();
        if gamma.n() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: gamma.n(),
                found: base.dim(),
            });
        }
        Ok(Self {
            gamma,
            base,
            s_domain,
            t_domain,
        })
    }

    pub fn n(&self) -> usize {
        self.gamma.n()
    }

    pub fn point(&self, s: f64, t: f64) -> Vector {
        let mut f = self.base.eval(s, 0);
        f.axpy(t, &self.gamma.eval(s, 0));
        f
    }

    /// The closed-form base curve, if there is one.
    pub fn base_expr(&self) -> Option<&CurveExpr> {
        match &self.base {
            BaseCurve::Expr(c) => Some(c),
            BaseCurve::Gauged(_) => None,
        }
    }

    /// Homothety `f -> k f`.
    pub fn scaled(&self, k: f64) -> Option<Self> {
        let base = self.base_expr()?.scaled(k);
        Some(Self {
            gamma: self.gamma.scaled(k),
            base: base.into(),
            s_domain: self.s_domain,
            t_domain: self.t_domain,
        })
    }

    pub fn default_grid(&self, ns: usize, nt: usize) -> Grid {
        Grid::uniform(self.s_domain, self.t_domain, ns, nt)
    }
}

/// Wire format of a surface.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub signature: Signature,
    pub gamma: CurveExpr,
    pub base: CurveExpr,
    pub s_domain: Interval,
    pub t_domain: Interval,
}

impl SurfaceSpec {
    pub fn into_surface(self) -> Result<(Signature, RuledSurface)> {
        let sig = Signature::new(self.signature.n, self.signature.p)?;
        if self.gamma.n() != sig.n {
            return Err(Error::DimensionMismatch {
                expected: sig.n,
                found: self.gamma.n(),
            });
        }
        let surface = RuledSurface::new(self.gamma, self.base, self.s_domain, self.t_domain)?;
        Ok((sig, surface))
    }

    pub fn from_surface(sig: Signature, surface: &RuledSurface) -> Option<Self> {
        Some(Self {
            signature: sig,
            gamma: surface.gamma.clone(),
            base: surface.base_expr()?.clone(),
            s_domain: surface.s_domain,
            t_domain: surface.t_domain,
        })
    }
}

/// Second-order jet of the immersion at `(s,t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2 {
    pub s: f64,
    pub t: f64,
    pub f: Vector,
    pub f_s: Vector,
    pub f_t: Vector,
    pub f_ss: Vector,
    pub f_st: Vector,
    pub f_tt: Vector,
}

pub fn immersion_jet(surface: &RuledSurface, s: f64, t: f64) -> Jet2 {
    let g0 = surface.gamma.eval(s, 0);
    let g1 = surface.gamma.eval(s, 1);
    let g2 = surface.gamma.eval(s, 2);
    let x0 = surface.base.eval(s, 0);
    let x1 = surface.base.eval(s, 1);
    let x2 = surface.base.eval(s, 2);

    let mut f = x0;
    f.axpy(t, &g0);
    let mut f_s = x1;
    f_s.axpy(t, &g1);
    let mut f_ss = x2;
    f_ss.axpy(t, &g2);
    Jet2 {
        s,
        t,
        f,
        f_s,
        f_t: g0,
        f_ss,
        f_st: g1,
        f_tt: Vector::zeros(surface.n()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstForm {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub det_g: f64,
}

pub fn first_form(sig: Signature, jet: &Jet2) -> FirstForm {
    let g11 = sig.dot(&jet.f_s, &jet.f_s);
    let g12 = sig.dot(&jet.f_s, &jet.f_t);
    let g22 = sig.dot(&jet.f_t, &jet.f_t);
    FirstForm {
        g11,
        g12,
        g22,
        det_g: g11 * g22 - g12 * g12,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecondForm {
    pub h11: Vector,
    pub h12: Vector,
    pub h22: Vector,
}

impl SecondForm {
    pub fn max_norm(&self) -> f64 {
        self.h11
            .euclid_norm()
            .max(self.h12.euclid_norm())
            .max(self.h22.euclid_norm())
    }
}

fn check_nondegenerate(jet: &Jet2, first: &FirstForm, deg_tol: f64) -> Result<()> {
    if first.det_g.abs() <= deg_tol || !first.det_g.is_finite() {
        return Err(Error::DegenerateMetric {
            s: jet.s,
            t: jet.t,
            det_g: first.det_g,
        });
    }
    Ok(())
}

/// Normal component of `w` relative to the tangent plane of `jet`.
pub fn normal_part(sig: Signature, jet: &Jet2, first: &FirstForm, w: &Vector) -> Vector {
    let b1 = sig.dot(w, &jet.f_s);
    let b2 = sig.dot(w, &jet.f_t);
    // [g11 g12; g12 g22]^{-1} via the adjugate
    let alpha = (first.g22 * b1 - first.g12 * b2) / first.det_g;
    let beta = (first.g11 * b2 - first.g12 * b1) / first.det_g;
    let mut h = w.clone();
    h.axpy(-alpha, &jet.f_s);
    h.axpy(-beta, &jet.f_t);
    h
}

pub fn second_form(
    sig: Signature,
    jet: &Jet2,
    first: &FirstForm,
    deg_tol: f64,
) -> Result<SecondForm> {
    check_nondegenerate(jet, first, deg_tol)?;
    Ok(SecondForm {
        h11: normal_part(sig, jet, first, &jet.f_ss),
        h12: normal_part(sig, jet, first, &jet.f_st),
        // f_tt = 0 for every ruled surface
        h22: Vector::zeros(jet.f.dim()),
    })
}

/// `H = (g11 h22 - 2 g12 h12 + g22 h11) / (2 det g)`.
pub fn mean_curvature(first: &FirstForm, second: &SecondForm) -> Vector {
    let mut h = second.h22.scale(first.g11);
    h.axpy(-2.0 * first.g12, &second.h12);
    h.axpy(first.g22, &second.h11);
    h.scale(0.5 / first.det_g)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormBundle {
    pub jet: Jet2,
    pub first: FirstForm,
    pub second: SecondForm,
    pub h: Vector,
}

pub fn forms_at(
    sig: Signature,
    surface: &RuledSurface,
    s: f64,
    t: f64,
    deg_tol: f64,
) -> Result<FormBundle> {
    let jet = immersion_jet(surface, s, t);
    let first = first_form(sig, &jet);
    let second = second_form(sig, &jet, &first, deg_tol)?;
    let h = mean_curvature(&first, &second);
    Ok(FormBundle {
        jet,
        first,
        second,
        h,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Minimal,
    NotMinimal,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    pub verdict: Verdict,
    pub max_h: f64,
    pub argmax: Option<(f64, f64)>,
    pub evaluated: usize,
    pub skipped_degenerate: Vec<(f64, f64)>,
    pub tolerances: Tolerances,
}

/// Values at evaluated points and the skipped degenerate points.
type Sweep<T> = (Vec<(f64, f64, T)>, Vec<(f64, f64)>);

/// Evaluates `f` at every non-degenerate grid point in parallel, keeping grid order.
fn sweep<T, F>(
    sig: Signature,
    surface: &RuledSurface,
    grid: &Grid,
    deg_tol: f64,
    f: F,
) -> Result<Sweep<T>>
where
    T: Send,
    F: Fn(&FormBundle) -> T + Sync,
{
    let results: Vec<(f64, f64, Option<T>)> = grid
        .points()
        .into_par_iter()
        .map(|(s, t)| match forms_at(sig, surface, s, t, deg_tol) {
            Ok(b) => (s, t, Some(f(&b))),
            Err(_) => (s, t, None),
        })
        .collect();
    let mut kept = Vec::new();
    let mut skipped = Vec::new();
    for (s, t, v) in results {
        match v {
            Some(v) => kept.push((s, t, v)),
            None => skipped.push((s, t)),
        }
    }
    if kept.is_empty() {
        return Err(Error::EverywhereDegenerate {
            points: skipped.len(),
        });
    }
    Ok((kept, skipped))
}

pub fn is_minimal(
    sig: Signature,
    surface: &RuledSurface,
    grid: &Grid,
    tol: &Tolerances,
) -> Result<MinimalityReport> {
    let (vals, skipped) = sweep(sig, surface, grid, tol.degenerate, |b| b.h.euclid_norm())?;
    let (mut max_h, mut argmax) = (0.0f64, None);
    for &(s, t, h) in &vals {
        if h > max_h || h.is_nan() {
            max_h = h;
            argmax = Some((s, t));
        }
    }
    let verdict = if max_h <= tol.h {
        Verdict::Minimal
    } else {
        Verdict::NotMinimal
    };
    Ok(MinimalityReport {
        verdict,
        max_h,
        argmax,
        evaluated: vals.len(),
        skipped_degenerate: skipped,
        tolerances: *tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeodesyReport {
    pub totally_geodesic: bool,
    pub max_h11: f64,
    pub max_h12: f64,
    pub max_h22: f64,
    pub evaluated: usize,
    pub skipped_degenerate: Vec<(f64, f64)>,
}

pub fn is_totally_geodesic(
    sig: Signature,
    surface: &RuledSurface,
    grid: &Grid,
    tol: &Tolerances,
) -> Result<GeodesyReport> {
    let (vals, skipped) = sweep(sig, surface, grid, tol.degenerate, |b| {
        (
            b.second.h11.euclid_norm(),
            b.second.h12.euclid_norm(),
            b.second.h22.euclid_norm(),
        )
    })?;
    let (mut m11, mut m12, mut m22) = (0.0f64, 0.0f64, 0.0f64);
    for &(_, _, (a, b, c)) in &vals {
        m11 = m11.max(a);
        m12 = m12.max(b);
        m22 = m22.max(c);
    }
    Ok(GeodesyReport {
        totally_geodesic: m11.max(m12).max(m22) <= tol.h,
        max_h11: m11,
        max_h12: m12,
        max_h22: m22,
        evaluated: vals.len(),
        skipped_degenerate: skipped,
    })
}

/// The scalar inner products of the curve jets that the case analysis uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveProducts {
    /// <gamma, gamma>
    pub gg: f64,
    /// <gamma', gamma'>
    pub g1g1: f64,
    /// <x', x'>
    pub x1x1: f64,
    /// <gamma', x'>
    pub g1x1: f64,
    /// <gamma, x'>
    pub gx1: f64,
    /// <gamma, x''>
    pub gx2: f64,
    /// <gamma'', x'> + <gamma', x''>
    pub mixed: f64,
    /// <x'', x'>
    pub x2x1: f64,
}

pub fn curve_products(sig: Signature, surface: &RuledSurface, s: f64) -> CurveProducts {
    let g0 = surface.gamma.eval(s, 0);
    let g1 = surface.gamma.eval(s, 1);
    let g2 = surface.gamma.eval(s, 2);
    let x1 = surface.base.eval(s, 1);
    let x2 = surface.base.eval(s, 2);
    CurveProducts {
        gg: sig.dot(&g0, &g0),
        g1g1: sig.dot(&g1, &g1),
        x1x1: sig.dot(&x1, &x1),
        g1x1: sig.dot(&g1, &x1),
        gx1: sig.dot(&g0, &x1),
        gx2: sig.dot(&g0, &x2),
        mixed: sig.dot(&g2, &x1) + sig.dot(&g1, &x2),
        x2x1: sig.dot(&x2, &x1),
    }
}

/// `C(s,t) = ((<g'',x'> + <g',x''>) t + <x'',x'>) / (<g',g'> t^2 + 2 <g',x'> t + <x',x'>)`.
///
/// The denominator is `g11` for a gauge-normalized surface.
pub fn c_function(
    sig: Signature,
    surface: &RuledSurface,
    s: f64,
    t: f64,
    deg_tol: f64,
) -> Result<f64> {
    let p = curve_products(sig, surface, s);
    let den = p.g1g1 * t * t + 2.0 * p.g1x1 * t + p.x1x1;
    if den.abs() <= deg_tol {
        return Err(Error::DegenerateMetric { s, t, det_g: den });
    }
    Ok((p.mixed * t + p.x2x1) / den)
}

/// Euclidean norm of `C (g' t + x') + eps (-eta t + <g,x''>) g - (g'' t + x'')`,
/// i.e. the gap between the minimal-surface decomposition of `f_ss` and its
/// direct value. `eps` and `eta` are read pointwise from the curves.
pub fn decomposition_residual(
    sig: Signature,
    surface: &RuledSurface,
    s: f64,
    t: f64,
    deg_tol: f64,
) -> Result<f64> {
    let c = c_function(sig, surface, s, t, deg_tol)?;
    let p = curve_products(sig, surface, s);
    let jet = immersion_jet(surface, s, t);
    let mut lhs = jet.f_s.scale(c);
    lhs.axpy(p.gg * (-p.g1g1 * t + p.gx2), &jet.f_t);
    Ok((&lhs - &jet.f_ss).euclid_norm())
}

/// How the shift `lambda` of [`gauge_normalize`] was obtained.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaSource {
    /// `<gamma, x'>` vanishes identically; the input is returned unchanged.
    Zero,
    /// Polynomial integrand; the new base curve is an exact polynomial.
    Polynomial { coefficients: Vec<f64> },
    /// Adaptive quadrature with the stated absolute tolerance.
    Quadrature { abs_tol: f64, table: LambdaTable },
}

#[derive(Clone, Debug)]
pub struct GaugeResult {
    pub surface: RuledSurface,
    pub epsilon: f64,
    pub lambda: LambdaSource,
    pub max_g12_before: f64,
    pub max_g12_after: f64,
}

fn max_g12(sig: Signature, surface: &RuledSurface, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&s| {
            let g = surface.gamma.eval(s, 0);
            sig.dot(&g, &surface.base.eval(s, 1)).abs()
        })
        .fold(0.0, f64::max)
}

/// Replaces the base curve by `x + lambda gamma` so that `g12 = <gamma, x'> = 0`.
///
/// Requires `<gamma,gamma> = eps = +-1` on the s-domain (checked on a 101-point
/// grid to `tol`). The image of the surface is unchanged; only the rulings are
/// reparametrized by `t -> t - lambda(s)`.
pub fn gauge_normalize(sig: Signature, surface: &RuledSurface, tol: f64) -> Result<GaugeResult> {
    let scan = surface.s_domain.linspace(101);
    let eps0 = sig.norm_sq(&surface.gamma.eval(surface.s_domain.lo, 0));
    let epsilon = if eps0 > 0.0 { 1.0 } else { -1.0 };
    for &s in &scan {
        let q = sig.norm_sq(&surface.gamma.eval(s, 0));
        if (q - epsilon).abs() > tol {
            return Err(Error::Precondition {
                s,
                reason: format!("direction curve is not unit: <gamma,gamma> = {q}"),
            });
        }
    }
    let Some(x) = surface.base_expr() else {
        return Err(Error::Usage("base curve is already gauge-shifted".into()));
    };
    let before = max_g12(sig, surface, &scan);

    let dense = surface.s_domain.linspace(1001);
    let integrand_max = dense
        .iter()
        .map(|&s| sig.dot(&surface.gamma.eval(s, 0), &x.eval(s, 1)).abs())
        .fold(0.0, f64::max);

    let (base, lambda) = if integrand_max <= 1e-14 {
        (BaseCurve::Expr(x.clone()), LambdaSource::Zero)
    } else if surface.gamma.is_polynomial() && x.is_polynomial() {
        let (curve, coefficients) = polynomial_gauge(sig, &surface.gamma, x, epsilon);
        (
            BaseCurve::Expr(curve),
            LambdaSource::Polynomial { coefficients },
        )
    } else {
        let gauged = quadrature_gauge(sig, &surface.gamma, x, epsilon, surface.s_domain);
        let table = gauged.table.clone();
        (
            BaseCurve::Gauged(gauged),
            LambdaSource::Quadrature {
                abs_tol: LAMBDA_TOL,
                table,
            },
        )
    };
    let out = RuledSurface {
        gamma: surface.gamma.clone(),
        base,
        s_domain: surface.s_domain,
        t_domain: surface.t_domain,
    };
    let after = max_g12(sig, &out, &scan);
    Ok(GaugeResult {
        surface: out,
        epsilon,
        lambda,
        max_g12_before: before,
        max_g12_after: after,
    })
}

fn poly_coeffs(c: &CurveExpr) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for term in c.terms() {
        if let crate::curve::Basis::Pow(k) = term.basis {
            let k = k as usize;
            if out.len() <= k {
                out.resize(k + 1, Vector::zeros(c.n()));
            }
            out[k] += &term.coeff;
        }
    }
    out
}

fn polynomial_gauge(
    sig: Signature,
    gamma: &CurveExpr,
    x: &CurveExpr,
    epsilon: f64,
) -> (CurveExpr, Vec<f64>) {
    use crate::curve::Basis;
    let gc = poly_coeffs(gamma);
    let xc = poly_coeffs(x);
    // <gamma, x'> as a scalar polynomial
    let mut integrand = vec![0.0; gc.len() + xc.len()];
    for (i, a) in gc.iter().enumerate() {
        for (j, b) in xc.iter().enumerate().skip(1) {
            integrand[i + j - 1] += j as f64 * sig.dot(a, b);
        }
    }
    // lambda = -eps int_0^s
    let mut lambda = vec![0.0; integrand.len() + 1];
    for (k, c) in integrand.iter().enumerate() {
        lambda[k + 1] = -epsilon * c / (k + 1) as f64;
    }
    let mut out = x.clone();
    for (k, l) in lambda.iter().enumerate() {
        if *l == 0.0 {
            continue;
        }
        for (i, a) in gc.iter().enumerate() {
            if !a.is_zero() {
                out.push(Basis::Pow((k + i) as u32), a.scale(*l));
            }
        }
    }
    (out, lambda)
}

fn quadrature_gauge(
    sig: Signature,
    gamma: &CurveExpr,
    x: &CurveExpr,
    epsilon: f64,
    dom: Interval,
) -> GaugedBase {
    let lo = dom.lo.min(0.0);
    let hi = dom.hi.max(0.0);
    let count = ((hi - lo) / 0.05).ceil().max(1.0) as usize + 1;
    let mut nodes = Interval { lo, hi }.linspace(count);
    // make 0 an exact node so the integral starts there
    let zero_at = nodes
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    nodes[zero_at] = 0.0;

    let mut gauged = GaugedBase {
        sig,
        original: x.clone(),
        gamma: gamma.clone(),
        epsilon,
        table: LambdaTable {
            nodes: nodes.clone(),
            values: vec![0.0; nodes.len()],
        },
    };
    let per_step = LAMBDA_TOL / nodes.len() as f64;
    let mut values = vec![0.0; nodes.len()];
    for k in (zero_at + 1)..nodes.len() {
        let (v, _) =
            quadrature::integrate(|u| gauged.integrand(u), nodes[k - 1], nodes[k], per_step);
        values[k] = values[k - 1] + v;
    }
    for k in (0..zero_at).rev() {
        let (v, _) =
            quadrature::integrate(|u| gauged.integrand(u), nodes[k + 1], nodes[k], per_step);
        values[k] = values[k + 1] + v;
    }
    gauged.table.values = values;
    gauged
}
