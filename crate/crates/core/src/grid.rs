use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed parameter interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Usage(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn symmetric(r: f64) -> Self {
        Self { lo: -r, hi: r }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `n` uniformly spaced points including both endpoints.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![0.5 * (self.lo + self.hi)],
            _ => {
                let h = self.len() / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.hi
                        } else {
                            self.lo + h * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = String;
    fn try_from(v: [f64; 2]) -> std::result::Result<Self, String> {
        Interval::new(v[0], v[1]).map_err(|e| e.to_string())
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("range must be `a,b`, got `{s}`"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Interval::new(a, b)
    }
}

/// Tensor-product sampling grid in (s, t), iterated s-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub s: Vec<f64>,
    pub t: Vec<f64>,
}

impl Grid {
    pub fn uniform(s_dom: Interval, t_dom: Interval, ns: usize, nt: usize) -> Self {
        Self {
            s: s_dom.linspace(ns),
            t: t_dom.linspace(nt),
        }
    }

    pub fn len(&self) -> usize {
        self.s.len() * self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.len());
        for &s in &self.s {
            for &t in &self.t {
                out.push((s, t));
            }
        }
        out
    }
}

/// Parses `NSxNT` as used by the command line.
pub fn parse_grid_spec(spec: &str) -> Result<(usize, usize)> {
    let bad = || Error::Usage(format!("grid must be `NSxNT`, got `{spec}`"));
    let (a, b) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    let ns: usize = a.trim().parse().map_err(|_| bad())?;
    let nt: usize = b.trim().parse().map_err(|_| bad())?;
    if ns == 0 || nt == 0 {
        return Err(bad());
    }
    Ok((ns, nt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let i = Interval::symmetric(3.0);
        let xs = i.linspace(101);
        assert_eq!(xs[0], -3.0);
        assert_eq!(xs[100], 3.0);
        assert!(xs[50].abs() < 1e-15);
    }

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_grid_spec("21x31").unwrap(), (21, 31));
        assert!(parse_grid_spec("21").is_err());
        assert_eq!(
            "-1,2".parse::<Interval>().unwrap(),
            Interval { lo: -1.0, hi: 2.0 }
        );
        assert!("2,-1".parse::<Interval>().is_err());
    }
}
