//! Closed-form curves in R^n with exact derivatives.
//!
//! A [`CurveExpr`] is a finite sum `sum_k b_k(s) c_k` where each `b_k` is one
//! of `s^k`, `cos ws`, `sin ws`, `cosh ws`, `sinh ws`, `exp as` and `c_k` is a
//! coefficient vector. Every surface in the catalog is spanned by these, so
//! all jets used downstream are analytic rather than finite-difference.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Interval;
use crate::metric::{Signature, Vector};
use crate::quadrature;

/// Anything that can be evaluated with derivatives at a parameter value.
pub trait ParamCurve: Send + Sync {
    fn dim(&self) -> usize;

    /// Derivative of the given order at `s` (order 0 is the point itself).
    fn eval(&self, s: f64, order: usize) -> Vector;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Basis {
    Pow(u32),
    Cos(f64),
    Sin(f64),
    Cosh(f64),
    Sinh(f64),
    Exp(f64),
}

impl Basis {
    /// `d^order/ds^order` of the scalar basis function at `s`.
    pub fn value(&self, s: f64, order: usize) -> f64 {
        match *self {
            Basis::Pow(k) => {
                let k = k as usize;
                if order > k {
                    return 0.0;
                }
                let falling: f64 = ((k - order + 1)..=k).map(|j| j as f64).product();
                falling * s.powi((k - order) as i32)
            }
            Basis::Cos(w) => {
                let a = w * s;
                let m = w.powi(order as i32);
                m * match order % 4 {
                    0 => a.cos(),
                    1 => -a.sin(),
                    2 => -a.cos(),
                    _ => a.sin(),
                }
            }
            Basis::Sin(w) => {
                let a = w * s;
                let m = w.powi(order as i32);
                m * match order % 4 {
                    0 => a.sin(),
                    1 => a.cos(),
                    2 => -a.sin(),
                    _ => -a.cos(),
                }
            }
            Basis::Cosh(w) => {
                let a = w * s;
                w.powi(order as i32)
                    * if order.is_multiple_of(2) {
                        a.cosh()
                    } else {
                        a.sinh()
                    }
            }
            Basis::Sinh(w) => {
                let a = w * s;
                w.powi(order as i32)
                    * if order.is_multiple_of(2) {
                        a.sinh()
                    } else {
                        a.cosh()
                    }
            }
            Basis::Exp(a) => a.powi(order as i32) * (a * s).exp(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Basis::Pow(_) => "pow",
            Basis::Cos(_) => "cos",
            Basis::Sin(_) => "sin",
            Basis::Cosh(_) => "cosh",
            Basis::Sinh(_) => "sinh",
            Basis::Exp(_) => "exp",
        }
    }

    fn param(&self) -> f64 {
        match *self {
            Basis::Pow(k) => k as f64,
            Basis::Cos(w) | Basis::Sin(w) | Basis::Cosh(w) | Basis::Sinh(w) | Basis::Exp(w) => w,
        }
    }

    fn parse(name: &str, param: f64) -> std::result::Result<Self, String> {
        if !param.is_finite() {
            return Err(format!("non-finite parameter {param}"));
        }
        Ok(match name {
            "pow" => {
                if param < 0.0 || param.fract() != 0.0 || param > 64.0 {
                    return Err(format!(
                        "pow degree must be an integer in 0..=64, got {param}"
                    ));
                }
                Basis::Pow(param as u32)
            }
            "cos" => Basis::Cos(param),
            "sin" => Basis::Sin(param),
            "cosh" => Basis::Cosh(param),
            "sinh" => Basis::Sinh(param),
            "exp" => Basis::Exp(param),
            other => return Err(format!("unknown basis `{other}`")),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveTerm {
    pub basis: Basis,
    pub coeff: Vector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveJson", into = "CurveJson")]
pub struct CurveExpr {
    n: usize,
    terms: Vec<CurveTerm>,
}

impl CurveExpr {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(v: Vector) -> Self {
        let n = v.dim();
        Self::new(n).with(Basis::Pow(0), v)
    }

    /// Adds a term; panics if the coefficient has the wrong length.
    pub fn with(mut self, basis: Basis, coeff: impl Into<Vector>) -> Self {
        self.push(basis, coeff.into());
        self
    }

    pub fn push(&mut self, basis: Basis, coeff: Vector) {
        assert_eq!(
            coeff.dim(),
            self.n,
            "coefficient length must equal curve dimension"
        );
        self.terms.push(CurveTerm { basis, coeff });
    }

    pub fn terms(&self) -> &[CurveTerm] {
        &self.terms
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Homothety `c -> k c`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| CurveTerm {
                    basis: t.basis,
                    coeff: t.coeff.scale(k),
                })
                .collect(),
        }
    }

    /// Term-wise sum of two curves of the same dimension.
    pub fn plus(&self, other: &CurveExpr) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    /// True when every term is `s^0` or has a zero coefficient.
    pub fn is_constant(&self) -> bool {
        self.terms
            .iter()
            .all(|t| matches!(t.basis, Basis::Pow(0)) || t.coeff.is_zero())
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| matches!(t.basis, Basis::Pow(_)))
    }
}

impl ParamCurve for CurveExpr {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, s: f64, order: usize) -> Vector {
        let mut out = Vector::zeros(self.n);
        for term in &self.terms {
            let b = term.basis.value(s, order);
            if b != 0.0 {
                out.axpy(b, &term.coeff);
            }
        }
        out
    }
}

/// Wire format of a curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub basis: String,
    pub param: f64,
    pub coeff: Vec<f64>,
}

impl TryFrom<CurveJson> for CurveExpr {
    type Error = String;

    fn try_from(j: CurveJson) -> std::result::Result<Self, String> {
        if j.n == 0 {
            return Err("curve dimension must be positive".into());
        }
        let mut c = CurveExpr::new(j.n);
        for (i, t) in j.terms.into_iter().enumerate() {
            let basis = Basis::parse(&t.basis, t.param).map_err(|e| format!("terms[{i}]: {e}"))?;
            if t.coeff.len() != j.n {
                return Err(format!(
                    "terms[{i}]: coefficient has {} entries, curve dimension is {}",
                    t.coeff.len(),
                    j.n
                ));
            }
            if t.coeff.iter().any(|x| !x.is_finite()) {
                return Err(format!("terms[{i}]: non-finite coefficient"));
            }
            c.push(basis, Vector(t.coeff));
        }
        Ok(c)
    }
}

impl From<CurveExpr> for CurveJson {
    fn from(c: CurveExpr) -> Self {
        CurveJson {
            n: c.n,
            terms: c
                .terms
                .into_iter()
                .map(|t| TermJson {
                    basis: t.basis.name().to_string(),
                    param: t.basis.param(),
                    coeff: t.coeff.0,
                })
                .collect(),
        }
    }
}

/// Central finite difference of order 1 or 2 with step `h`.
pub fn fd_derivative<C: ParamCurve + ?Sized>(
    c: &C,
    s: f64,
    order: usize,
    h: f64,
) -> Result<Vector> {
    if h <= 0.0 {
        return Err(Error::Usage(format!("step must be positive, got {h}")));
    }
    let plus = c.eval(s + h, 0);
    let minus = c.eval(s - h, 0);
    match order {
        1 => Ok((&plus - &minus).scale(0.5 / h)),
        2 => {
            let mid = c.eval(s, 0);
            let mut out = &plus + &minus;
            out.axpy(-2.0, &mid);
            Ok(out.scale(1.0 / (h * h)))
        }
        _ => Err(Error::Usage(format!(
            "finite differences support orders 1 and 2, got {order}"
        ))),
    }
}

/// Whether `c` is a regular curve with `<c',c'> = 0` (to `tol`) at every grid point.
pub fn is_null_curve<C: ParamCurve + ?Sized>(
    sig: Signature,
    c: &C,
    grid: &[f64],
    tol: f64,
) -> bool {
    !grid.is_empty()
        && grid.iter().all(|&s| {
            let v = c.eval(s, 1);
            v.euclid_norm() > tol && sig.norm_sq(&v).abs() <= tol
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpeedClass {
    UnitSpacelike,
    UnitTimelike,
    NotUnit,
}

pub fn unit_speed_check<C: ParamCurve + ?Sized>(
    sig: Signature,
    c: &C,
    grid: &[f64],
    tol: f64,
) -> SpeedClass {
    let speeds: Vec<f64> = grid.iter().map(|&s| sig.norm_sq(&c.eval(s, 1))).collect();
    if speeds.is_empty() {
        return SpeedClass::NotUnit;
    }
    if speeds.iter().all(|q| (q - 1.0).abs() <= tol) {
        SpeedClass::UnitSpacelike
    } else if speeds.iter().all(|q| (q + 1.0).abs() <= tol) {
        SpeedClass::UnitTimelike
    } else {
        SpeedClass::NotUnit
    }
}

/// Sampled arc-length reparametrization `u -> s(u)`.
///
/// Between nodes the map is the cubic Hermite interpolant of the node values
/// and the exact node slopes `ds/du = 1/sqrt|<c'(s),c'(s)>|`. A table is not
/// a [`ParamCurve`]: consumers that need exact derivatives must keep using
/// the closed-form curve.
#[derive(Clone, Debug, Serialize)]
pub struct ArcLengthTable {
    pub causal: SpeedClass,
    pub interpolation: &'static str,
    pub u: Vec<f64>,
    pub s: Vec<f64>,
    pub ds_du: Vec<f64>,
}

impl ArcLengthTable {
    pub fn total_length(&self) -> f64 {
        *self.u.last().unwrap_or(&0.0)
    }

    /// Parameter `s(u)`; `u` is clamped to the table range.
    pub fn param_at(&self, u: f64) -> f64 {
        let n = self.u.len();
        if n == 1 {
            return self.s[0];
        }
        let u = u.clamp(self.u[0], self.u[n - 1]);
        let k = match self.u.partition_point(|&x| x <= u) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        };
        let (u0, u1) = (self.u[k], self.u[k + 1]);
        let h = u1 - u0;
        let x = (u - u0) / h;
        let (x2, x3) = (x * x, x * x * x);
        let h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
        let h10 = x3 - 2.0 * x2 + x;
        let h01 = -2.0 * x3 + 3.0 * x2;
        let h11 = x3 - x2;
        h00 * self.s[k]
            + h10 * h * self.ds_du[k]
            + h01 * self.s[k + 1]
            + h11 * h * self.ds_du[k + 1]
    }

    pub fn point_at<C: ParamCurve + ?Sized>(&self, c: &C, u: f64) -> Vector {
        c.eval(self.param_at(u), 0)
    }
}

/// Default node count for [`reparametrize_unit_speed`].
pub const DEFAULT_TABLE_NODES: usize = 2001;

const SPEED_FLOOR: f64 = 1e-8;

pub fn reparametrize_unit_speed<C: ParamCurve + ?Sized>(
    sig: Signature,
    c: &C,
    domain: Interval,
    nodes: usize,
) -> Result<ArcLengthTable> {
    let speed_sq = |s: f64| sig.norm_sq(&c.eval(s, 1));

    // Sign and magnitude check on a dense scan.
    let first = speed_sq(domain.lo);
    for s in domain.linspace(1001) {
        let q = speed_sq(s);
        if q.abs() < SPEED_FLOOR {
            return Err(Error::Precondition {
                s,
                reason: format!("speed is near-null (<c',c'> = {q:e})"),
            });
        }
        if q.signum() != first.signum() {
            return Err(Error::Precondition {
                s,
                reason: "causal character of the velocity changes".into(),
            });
        }
    }
    let causal = if first > 0.0 {
        SpeedClass::UnitSpacelike
    } else {
        SpeedClass::UnitTimelike
    };
    let speed = |s: f64| speed_sq(s).abs().sqrt();

    let nodes = nodes.max(2);
    let (total, _) = quadrature::integrate(speed, domain.lo, domain.hi, 1e-12);
    let du = total / (nodes - 1) as f64;

    let mut u = Vec::with_capacity(nodes);
    let mut s_tab = Vec::with_capacity(nodes);
    let mut ds_du = Vec::with_capacity(nodes);
    u.push(0.0);
    s_tab.push(domain.lo);
    ds_du.push(1.0 / speed(domain.lo));

    let mut s_prev = domain.lo;
    for k in 1..nodes {
        let s_next = if k == nodes - 1 {
            domain.hi
        } else {
            // Newton on F(s) = int_{s_prev}^{s} speed - target, safeguarded by bisection.
            let target = du;
            let (mut lo, mut hi) = (s_prev, domain.hi);
            let mut x = (s_prev + target / speed(s_prev)).clamp(lo, hi);
            for _ in 0..100 {
                let (f, _) = quadrature::integrate(speed, s_prev, x, 1e-14);
                let f = f - target;
                if f > 0.0 {
                    hi = x;
                } else {
                    lo = x;
                }
                let step = f / speed(x);
                let mut next = x - step;
                if !(next > lo && next < hi) {
                    next = 0.5 * (lo + hi);
                }
                if (next - x).abs() <= 1e-15 * (1.0 + x.abs()) {
                    x = next;
                    break;
                }
                x = next;
            }
            x
        };
        u.push(du * k as f64);
        s_tab.push(s_next);
        ds_du.push(1.0 / speed(s_next));
        s_prev = s_next;
    }
    *u.last_mut().unwrap() = total;

    Ok(ArcLengthTable {
        causal,
        interpolation: "cubic-hermite",
        u,
        s: s_tab,
        ds_du,
    })
}
