//! Indefinite inner products on R^n_p.
//!
//! The metric has `p` negative squares followed by `n - p` positive ones:
//! `<u,v> = -sum_{i<p} u_i v_i + sum_{j>=p} u_j v_j`. Everything here is
//! generic over the scalar so that frames and certificates can be checked
//! in exact integer or rational arithmetic while the surface engine runs in
//! `f64`.

use std::fmt;
use std::ops::{Add, AddAssign, Deref, Index, Mul, Neg, Sub};

use num_traits::{Num, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used to call a floating-point vector null.
pub const TAU_NULL: f64 = 1e-12;

/// Ambient dimension `n` and index `p` of R^n_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n: usize,
    pub p: usize,
}

impl Signature {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSignature {
                n,
                p,
                reason: "n must be at least 2".into(),
            });
        }
        if p > n {
            return Err(Error::InvalidSignature {
                n,
                p,
                reason: "index exceeds dimension".into(),
            });
        }
        Ok(Self { n, p })
    }

    /// Like [`Signature::new`] but also enforces `n >= 3`, which the surface
    /// catalog and the existence oracle assume.
    pub fn for_surfaces(n: usize, p: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSignature {
                n,
                p,
                reason: "surface features need n >= 3".into(),
            });
        }
        Self::new(n, p)
    }

    /// Number of positive squares.
    pub fn q(&self) -> usize {
        self.n - self.p
    }

    /// Whether `p <= floor(n/2)`, the normalization usually imposed on the index.
    pub fn in_standard_range(&self) -> bool {
        self.p <= self.n / 2
    }

    /// Sign of the i-th diagonal entry of the metric.
    pub fn sign(&self, i: usize) -> i8 {
        if i < self.p {
            -1
        } else {
            1
        }
    }

    /// Unchecked pairing for hot loops; the caller guarantees lengths.
    #[inline]
    pub fn dot(&self, u: &[f64], v: &[f64]) -> f64 {
        debug_assert_eq!(u.len(), self.n);
        debug_assert_eq!(v.len(), self.n);
        let (neg, pos) = u.split_at(self.p);
        let (vneg, vpos) = v.split_at(self.p);
        let n: f64 = neg.iter().zip(vneg).map(|(a, b)| a * b).sum();
        let p: f64 = pos.iter().zip(vpos).map(|(a, b)| a * b).sum();
        p - n
    }

    pub fn norm_sq(&self, v: &[f64]) -> f64 {
        self.dot(v, v)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{}_{}", self.n, self.p)
    }
}

impl std::str::FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Usage(format!("signature must be `n,p`, got `{s}`"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let n = parts[0].parse().map_err(|_| bad())?;
        let p = parts[1].parse().map_err(|_| bad())?;
        Signature::new(n, p)
    }
}

/// Vector in R^n with `f64` components.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Euclidean norm of the components (not the indefinite one).
    pub fn euclid_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        Vector(self.0.iter().map(|x| x * k).collect())
    }

    /// `self += k * other`
    pub fn axpy(&mut self, k: f64, other: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0.0)
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

impl From<&[i64]> for Vector {
    fn from(v: &[i64]) -> Self {
        Vector(v.iter().map(|&x| x as f64).collect())
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, k: f64) -> Vector {
        self.scale(k)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, k: f64) -> Vector {
        self.scale(k)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
    Zero,
}

fn check_len(sig: Signature, len: usize) -> Result<()> {
    if len != sig.n {
        return Err(Error::DimensionMismatch {
            expected: sig.n,
            found: len,
        });
    }
    Ok(())
}

/// `<u,v>_p`, exact for integer and rational scalars.
pub fn inner_product<T>(sig: Signature, u: &[T], v: &[T]) -> Result<T>
where
    T: Num + Clone,
{
    check_len(sig, u.len())?;
    check_len(sig, v.len())?;
    let mut neg = T::zero();
    let mut pos = T::zero();
    for (i, (a, b)) in u.iter().zip(v).enumerate() {
        let prod = a.clone() * b.clone();
        if i < sig.p {
            neg = neg + prod;
        } else {
            pos = pos + prod;
        }
    }
    Ok(pos - neg)
}

/// Causal character of a floating-point vector; `|<v,v>| <= TAU_NULL` counts as null.
pub fn causal_character(sig: Signature, v: &[f64]) -> Result<CausalCharacter> {
    causal_character_tol(sig, v, TAU_NULL)
}

pub fn causal_character_tol(sig: Signature, v: &[f64], tol: f64) -> Result<CausalCharacter> {
    check_len(sig, v.len())?;
    if v.iter().all(|x| *x == 0.0) {
        return Ok(CausalCharacter::Zero);
    }
    let q = sig.dot(v, v);
    Ok(if q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Null
    })
}

/// Causal character decided without tolerance, for exactly representable input.
pub fn causal_character_exact<T>(sig: Signature, v: &[T]) -> Result<CausalCharacter>
where
    T: Num + Signed + Clone,
{
    check_len(sig, v.len())?;
    if v.iter().all(|x| x.is_zero()) {
        return Ok(CausalCharacter::Zero);
    }
    let q = inner_product(sig, v, v)?;
    Ok(if q.is_positive() {
        CausalCharacter::Spacelike
    } else if q.is_negative() {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Null
    })
}

pub fn gram_matrix<T, V>(sig: Signature, vs: &[V]) -> Result<Vec<Vec<T>>>
where
    T: Num + Clone,
    V: AsRef<[T]>,
{
    let mut g = Vec::with_capacity(vs.len());
    for a in vs {
        let mut row = Vec::with_capacity(vs.len());
        for b in vs {
            row.push(inner_product(sig, a.as_ref(), b.as_ref())?);
        }
        g.push(row);
    }
    Ok(g)
}
