//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms
                .insert(vec![0; nvars], BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, 1), |acc, _| &acc * self)
    }

    pub fn eval(&self, at: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in at.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            total += m;
        }
        total
    }

    fn insert(&mut self, e: Vec<u32>, c: BigRational) {
        let sum = self.terms.remove(&e).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    /// Renders with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            out.push_str(if out.is_empty() {
                if neg {
                    "-"
                } else {
                    ""
                }
            } else if neg {
                " - "
            } else {
                " + "
            });
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| {
                    if *k == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
                if !mono.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&mono.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}
