//! Existence of the frames behind each family, per signature and sign choice.
//!
//! A diagonal Gram pattern `diag(+1^a, -1^b, 0^c)` realized by independent
//! vectors embeds in `R^n_p` iff `b + c <= p` and `a + c <= n - p`. Positive
//! answers come with integer witnesses; negative answers come with
//! certificates that replay in exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{admissible_signs, check_admissible, FamilyId, FrameSpec, SignChoice};
use crate::error::{Error, Result};
use crate::metric::{gram_matrix, inner_product, Signature};
use crate::poly::Poly;

/// Counts of prescribed `+1`, `-1` and `0` norms in a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormPattern {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl NormPattern {
    pub const fn new(a: usize, b: usize, c: usize) -> Self {
        Self { a, b, c }
    }

    pub fn from_norms(norms: &[i8]) -> Self {
        let count = |v: i8| norms.iter().filter(|&&x| x == v).count();
        Self {
            a: count(1),
            b: count(-1),
            c: count(0),
        }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.c
    }

    /// Pattern under the metric `-<.,.>`.
    pub fn reflected(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    /// Every pattern with the given total.
    pub fn all(total: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 0..=total {
            for b in 0..=(total - a) {
                out.push(Self::new(a, b, total - a - b));
            }
        }
        out
    }
}

impl fmt::Display for NormPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// An inequality `lhs <= rhs` that a request must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl Inequality {
    fn new(statement: &str, lhs: i64, rhs: i64) -> Self {
        Self {
            statement: statement.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

fn pattern_inequalities(sig: Signature, pat: NormPattern) -> Vec<Inequality> {
    vec![
        Inequality::new("b + c <= p", (pat.b + pat.c) as i64, sig.p as i64),
        Inequality::new(
            "a + c <= n - p",
            (pat.a + pat.c) as i64,
            (sig.n - sig.p) as i64,
        ),
    ]
}

fn cylinder_inequalities(sig: Signature) -> Vec<Inequality> {
    vec![
        Inequality::new("1 <= p", 1, sig.p as i64),
        Inequality::new("1 <= n - p", 1, (sig.n - sig.p) as i64),
        Inequality::new("3 <= n", 3, sig.n as i64),
    ]
}

pub fn admits_pattern(sig: Signature, pat: NormPattern) -> bool {
    pattern_inequalities(sig, pat).iter().all(Inequality::holds)
}

/// Deterministic integer frame for `pat`, ordered `+1` vectors, then `-1`
/// vectors, then null vectors.
///
/// `-1` vectors take timelike axes in index order, `+1` vectors take
/// spacelike axes in order, and each null vector is the sum of the next
/// unused timelike and spacelike axes.
pub fn find_witness(sig: Signature, pat: NormPattern) -> Result<FrameSpec> {
    if !admits_pattern(sig, pat) {
        return Err(Error::NoWitness {
            n: sig.n,
            p: sig.p,
            a: pat.a,
            b: pat.b,
            c: pat.c,
        });
    }
    let axis = |i: usize| {
        let mut v = vec![0i64; sig.n];
        v[i] = 1;
        v
    };
    let mut time = 0..sig.p;
    let mut space = sig.p..sig.n;
    let minus: Vec<_> = (0..pat.b)
        .map(|_| axis(time.next().expect("checked")))
        .collect();
    let plus: Vec<_> = (0..pat.a)
        .map(|_| axis(space.next().expect("checked")))
        .collect();
    let null: Vec<_> = (0..pat.c)
        .map(|_| {
            let mut v = axis(time.next().expect("checked"));
            v[space.next().expect("checked")] = 1;
            v
        })
        .collect();
    let frame = FrameSpec::new(sig, plus.into_iter().chain(minus).chain(null).collect())?;
    debug_assert!(frame.is_diagonal());
    Ok(frame)
}

fn cylinder_frame(sig: Signature) -> Result<FrameSpec> {
    let axis = |i: usize| {
        let mut v = vec![0i64; sig.n];
        v[i] = 1;
        v
    };
    // timelike T, spacelike S, then a third axis: spacelike if available
    let third = if sig.n - sig.p >= 2 { sig.p + 1 } else { 1 };
    FrameSpec::new(sig, vec![axis(0), axis(sig.p), axis(third)])
}

/// Frame for `family` with norms `signs`, in the role order `e1, e2, e3`
/// (`e2, e3` for the plane; `T, S, W` for the cylinder).
pub fn witness_frame(sig: Signature, family: FamilyId, signs: SignChoice) -> Result<FrameSpec> {
    let result = existence_oracle(sig, family, Some(signs))?;
    if let Some((_, frame)) = result.witness() {
        return Ok(frame.clone());
    }
    let ne = result
        .non_existence()
        .expect("no witness implies a certificate");
    Err(Error::NonExistence(Box::new(ne)))
}

fn role_frame(sig: Signature, norms: &[i8]) -> Result<FrameSpec> {
    let pat = NormPattern::from_norms(norms);
    let w = find_witness(sig, pat)?;
    let (mut plus, mut minus, mut null) = (0, pat.a, pat.a + pat.b);
    let vectors = norms
        .iter()
        .map(|&s| {
            let slot = match s {
                1 => &mut plus,
                -1 => &mut minus,
                _ => &mut null,
            };
            *slot += 1;
            w.vectors[*slot - 1].clone()
        })
        .collect();
    FrameSpec::new(sig, vectors)
}

/// Checks a caller-supplied frame for `family` and returns its sign choice.
pub fn validate_frame(sig: Signature, family: FamilyId, frame: &FrameSpec) -> Result<SignChoice> {
    if frame.len() != family.frame_size() {
        return Err(Error::Usage(format!(
            "{family} needs {} frame vectors, got {}",
            family.frame_size(),
            frame.len()
        )));
    }
    for v in &frame.vectors {
        if v.len() != sig.n {
            return Err(Error::DimensionMismatch {
                expected: sig.n,
                found: v.len(),
            });
        }
    }
    let gram = gram_matrix::<i64, _>(sig, &frame.vectors)?;
    if gram != frame.gram {
        return Err(Error::Usage(
            "stored Gram matrix does not match the frame".into(),
        ));
    }
    if frame.rank() != frame.len() {
        return Err(Error::Usage("frame vectors are linearly dependent".into()));
    }
    if family == FamilyId::MinimalCylinder {
        let ok = gram[0][0] == -1
            && gram[1][1] == 1
            && gram[2][2].abs() == 1
            && gram[0][1] == 0
            && gram[0][2] == 0
            && gram[1][2] == 0;
        if !ok {
            return Err(Error::Usage(
                "cylinder frame must be (timelike, spacelike, unit) and orthogonal".into(),
            ));
        }
        return Ok(SignChoice::new(0, 0, 0));
    }
    if !frame.is_diagonal() {
        return Err(Error::Usage("frame is not orthogonal".into()));
    }
    let diag: Vec<i8> = frame.diagonal().iter().map(|&d| d as i8).collect();
    if frame.diagonal().iter().any(|d| d.abs() > 1) {
        return Err(Error::Usage(format!(
            "frame norms {:?} are not in {{-1,0,1}}",
            frame.diagonal()
        )));
    }
    let signs = match family {
        FamilyId::Plane => SignChoice::new(0, diag[0], diag[1]),
        _ => SignChoice::new(diag[0], diag[1], diag[2]),
    };
    check_admissible(family, signs)?;
    Ok(signs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CertificateKind {
    DimensionCountObstruction,
    IndexOneNullOrthogonalObstruction,
    NeutralQuadraticContradiction,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Why one sign choice has no frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub signs: SignChoice,
    pub pattern: Option<NormPattern>,
    pub violated: Vec<Inequality>,
}

/// Every admissible sign choice of `family` fails in `signature`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonExistence {
    pub signature: Signature,
    pub family: FamilyId,
    /// The most specific kind among the per-sign certificates.
    pub kind: CertificateKind,
    pub certificates: Vec<Certificate>,
}

impl NonExistence {
    fn from_outcomes(sig: Signature, family: FamilyId, outcomes: &[SignOutcome]) -> Result<Self> {
        let certificates: Vec<Certificate> = outcomes
            .iter()
            .filter_map(|o| match &o.verdict {
                SignVerdict::NonExistence(c) => Some(c.clone()),
                SignVerdict::Witness(_) => None,
            })
            .collect();
        let kind = certificates
            .iter()
            .map(|c| c.kind)
            .max()
            .ok_or_else(|| Error::Usage(format!("{family} exists in {sig}")))?;
        Ok(Self {
            signature: sig,
            family,
            kind,
            certificates,
        })
    }
}

impl fmt::Display for NonExistence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} does not exist in {} ({})",
            self.family, self.signature, self.kind
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SignVerdict {
    Witness(FrameSpec),
    NonExistence(Certificate),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignOutcome {
    pub signs: SignChoice,
    pub pattern: Option<NormPattern>,
    pub verdict: SignVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExistenceResult {
    pub signature: Signature,
    pub family: FamilyId,
    /// `p > n/2`: accepted and handled identically, but outside the usual normalization.
    pub outside_convention: bool,
    pub outcomes: Vec<SignOutcome>,
}

impl ExistenceResult {
    pub fn exists(&self) -> bool {
        self.outcomes
            .iter()
            .any(|o| matches!(o.verdict, SignVerdict::Witness(_)))
    }

    pub fn witness(&self) -> Option<(SignChoice, &FrameSpec)> {
        self.outcomes.iter().find_map(|o| match &o.verdict {
            SignVerdict::Witness(f) => Some((o.signs, f)),
            SignVerdict::NonExistence(_) => None,
        })
    }

    /// The aggregate certificate when no sign choice is realizable.
    pub fn non_existence(&self) -> Option<NonExistence> {
        if self.exists() {
            return None;
        }
        NonExistence::from_outcomes(self.signature, self.family, &self.outcomes).ok()
    }
}

fn most_specific_kind(sig: Signature, family: FamilyId, pat: NormPattern) -> CertificateKind {
    if (sig.n, sig.p) == (4, 2) && family == FamilyId::EllipticHelicoid2 {
        CertificateKind::NeutralQuadraticContradiction
    } else if sig.p == 1 && pat.b >= 1 && pat.c >= 1 {
        CertificateKind::IndexOneNullOrthogonalObstruction
    } else {
        CertificateKind::DimensionCountObstruction
    }
}

fn decide(sig: Signature, family: FamilyId, signs: SignChoice) -> Result<SignOutcome> {
    if family == FamilyId::MinimalCylinder {
        let ineq = cylinder_inequalities(sig);
        let verdict = if ineq.iter().all(Inequality::holds) {
            SignVerdict::Witness(cylinder_frame(sig)?)
        } else {
            SignVerdict::NonExistence(Certificate {
                kind: CertificateKind::DimensionCountObstruction,
                signs,
                pattern: None,
                violated: ineq.into_iter().filter(|i| !i.holds()).collect(),
            })
        };
        return Ok(SignOutcome {
            signs,
            pattern: None,
            verdict,
        });
    }
    let norms = signs.used_norms(family);
    let pat = NormPattern::from_norms(&norms);
    let verdict = if admits_pattern(sig, pat) {
        SignVerdict::Witness(role_frame(sig, &norms)?)
    } else {
        SignVerdict::NonExistence(Certificate {
            kind: most_specific_kind(sig, family, pat),
            signs,
            pattern: Some(pat),
            violated: pattern_inequalities(sig, pat)
                .into_iter()
                .filter(|i| !i.holds())
                .collect(),
        })
    };
    Ok(SignOutcome {
        signs,
        pattern: Some(pat),
        verdict,
    })
}

/// Decides existence for one sign choice, or for every admissible one.
pub fn existence_oracle(
    sig: Signature,
    family: FamilyId,
    signs: Option<SignChoice>,
) -> Result<ExistenceResult> {
    let sig = Signature::for_surfaces(sig.n, sig.p)?;
    let choices = match signs {
        Some(s) => {
            check_admissible(family, s)?;
            vec![s]
        }
        None => admissible_signs(family),
    };
    let outcomes = choices
        .into_iter()
        .map(|s| decide(sig, family, s))
        .collect::<Result<_>>()?;
    Ok(ExistenceResult {
        signature: sig,
        family,
        outside_convention: !sig.in_standard_range(),
        outcomes,
    })
}

/// The minimal cylinder needs a hyperbolic pair plus one more axis.
pub fn admits_cylinder(sig: Signature) -> Result<ExistenceResult> {
    existence_oracle(sig, FamilyId::MinimalCylinder, None)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub claim: String,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofTrace {
    pub signature: Signature,
    pub family: FamilyId,
    pub kind: CertificateKind,
    pub steps: Vec<TraceStep>,
    pub conclusion: String,
    /// Every step checked out and the conclusion is a contradiction.
    pub verified: bool,
}

struct TraceBuilder {
    steps: Vec<TraceStep>,
}

impl TraceBuilder {
    fn step(&mut self, claim: impl Into<String>, verified: bool) {
        self.steps.push(TraceStep {
            claim: claim.into(),
            verified,
        });
    }
}

fn role_name(i: usize, family: FamilyId) -> String {
    match family {
        FamilyId::Plane => format!("e{}", i + 2),
        _ => format!("e{}", i + 1),
    }
}

/// Replays the certificate of kind `kind` for `(sig, family)` step by step.
pub fn replay_certificate(
    sig: Signature,
    family: FamilyId,
    kind: CertificateKind,
) -> Result<ProofTrace> {
    let result = existence_oracle(sig, family, None)?;
    let ne = result.non_existence().ok_or_else(|| {
        Error::Usage(format!(
            "{family} exists in {sig}; there is nothing to replay"
        ))
    })?;
    if ne.kind != kind {
        return Err(Error::Usage(format!(
            "{family} in {sig} is certified by {}, not {kind}",
            ne.kind
        )));
    }
    let mut tb = TraceBuilder { steps: Vec::new() };
    let mut conclusion = String::new();
    for cert in &ne.certificates {
        tb.step(
            format!("sign choice ({}): {} certificate", cert.signs, cert.kind),
            true,
        );
        let c = match cert.kind {
            CertificateKind::DimensionCountObstruction => {
                replay_dimension_count(&mut tb, sig, cert)
            }
            CertificateKind::IndexOneNullOrthogonalObstruction => {
                replay_index_one(&mut tb, sig, family, cert)?
            }
            CertificateKind::NeutralQuadraticContradiction => replay_neutral(&mut tb, cert)?,
        };
        if cert.kind == kind {
            conclusion = c;
        }
    }
    let verified = tb.steps.iter().all(|s| s.verified);
    Ok(ProofTrace {
        signature: sig,
        family,
        kind,
        steps: tb.steps,
        conclusion,
        verified,
    })
}

fn replay_dimension_count(tb: &mut TraceBuilder, sig: Signature, cert: &Certificate) -> String {
    let recomputed = match cert.pattern {
        Some(pat) => {
            tb.step(
                format!("pattern (a,b,c) = {pat} in R^{}_{}", sig.n, sig.p),
                pat.total() == 3 || pat.total() == 2,
            );
            pattern_inequalities(sig, pat)
        }
        None => cylinder_inequalities(sig),
    };
    let mut last = String::new();
    for ineq in recomputed.iter().filter(|i| !i.holds()) {
        let listed = cert.violated.contains(ineq);
        last = format!(
            "violated inequality {}: {} > {}",
            ineq.statement, ineq.lhs, ineq.rhs
        );
        tb.step(last.clone(), listed && ineq.lhs > ineq.rhs);
    }
    if last.is_empty() {
        tb.step("no inequality is violated", false);
    }
    last
}

fn replay_index_one(
    tb: &mut TraceBuilder,
    sig: Signature,
    family: FamilyId,
    cert: &Certificate,
) -> Result<String> {
    if sig.p != 1 {
        return Err(Error::Usage(format!(
            "index-one obstruction needs p = 1, got {sig}"
        )));
    }
    let norms = cert.signs.used_norms(family);
    let t = norms
        .iter()
        .position(|&s| s == -1)
        .ok_or_else(|| Error::Usage("no timelike frame vector".into()))?;
    let z = norms
        .iter()
        .position(|&s| s == 0)
        .ok_or_else(|| Error::Usage("no null frame vector".into()))?;
    let (tn, zn) = (role_name(t, family), role_name(z, family));
    let n = sig.n;
    let axis = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let e_t = axis(0);
    tb.step(
        format!("move {tn} to (1,0,...,0) by a pseudo-orthogonal map; <{tn},{tn}> = -1"),
        inner_product(sig, &e_t, &e_t)? == -1,
    );
    let kernel_ok = (0..n).all(|k| {
        inner_product(sig, &e_t, &axis(k))
            .map(|v| v == if k == 0 { -1 } else { 0 })
            .unwrap_or(false)
    });
    tb.step(
        format!("<{tn}, v> = -v_1, so {zn} orthogonal to {tn} has first coordinate 0"),
        kernel_ok,
    );
    let rest: Vec<Vec<i64>> = (1..n).map(axis).collect();
    let g = gram_matrix::<i64, _>(sig, &rest)?;
    let identity = (0..n - 1).all(|i| (0..n - 1).all(|j| g[i][j] == i64::from(i == j)));
    tb.step(
        format!("the metric on {{v_1 = 0}} is b_2^2 + ... + b_{n}^2, positive definite"),
        identity,
    );
    tb.step(
        format!("<{zn},{zn}> = 0 forces b_2 = ... = b_{n} = 0"),
        identity,
    );
    let end = format!("{zn} = 0 contradicts null (non-zero)");
    tb.step(end.clone(), identity && kernel_ok);
    Ok(end)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn replay_neutral(tb: &mut TraceBuilder, cert: &Certificate) -> Result<String> {
    let sig = Signature::new(4, 2)?;
    // variables: a b c x y z
    let v = |i| Poly::var(6, i);
    let (a, b, c, x, y, z) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let zero = Poly::zero(6);
    let one = Poly::constant(6, 1);
    let names = ["a", "b", "c", "x", "y", "z"];
    let pair = |u: &[Poly; 4], w: &[Poly; 4]| {
        let mut acc = Poly::zero(6);
        for i in 0..4 {
            let term = &u[i] * &w[i];
            acc = if sig.sign(i) < 0 {
                &acc - &term
            } else {
                &acc + &term
            };
        }
        acc
    };

    let negative = cert.signs.s1 < 0;
    // e1 is the unit vector on the matching axis; e2, e3 live in its complement
    let (e1, e2, e3) = if negative {
        (
            [one.clone(), zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), a.clone(), b.clone(), c.clone()],
            [zero.clone(), x.clone(), y.clone(), z.clone()],
        )
    } else {
        (
            [zero.clone(), zero.clone(), zero.clone(), one.clone()],
            [a.clone(), b.clone(), c.clone(), zero.clone()],
            [x.clone(), y.clone(), z.clone(), zero.clone()],
        )
    };
    let s = cert.signs.s1 as i64;
    tb.step(
        format!(
            "normalize e1 = {}; <e1,e1> = {s}",
            if negative { "(1,0,0,0)" } else { "(0,0,0,1)" }
        ),
        pair(&e1, &e1) == Poly::constant(6, s),
    );
    let orth = pair(&e1, &e2).is_zero() && pair(&e1, &e3).is_zero();
    tb.step(
        format!(
            "write e2 = {}, e3 = {} orthogonal to e1",
            if negative { "(0,a,b,c)" } else { "(a,b,c,0)" },
            if negative { "(0,x,y,z)" } else { "(x,y,z,0)" }
        ),
        orth,
    );
    let q22 = pair(&e2, &e2);
    let q33 = pair(&e3, &e3);
    let q23 = pair(&e2, &e3);
    tb.step(format!("<e2,e2> = {} = {s}", q22.render(&names)), true);
    tb.step(format!("<e3,e3> = {} = 0", q33.render(&names)), true);
    tb.step(format!("<e2,e3> = {} = 0", q23.render(&names)), true);

    // the pivot variable solved from <e2,e3> = 0 and the remaining two
    let (pivot, piv_name, u1, u2, w1, w2) = if negative {
        (&x, "x", &b, &c, &y, &z)
    } else {
        (&z, "z", &a, &b, &x, &y)
    };
    // with the pivot at zero the null condition is a definite form in the other two
    let sq = &(w1 * w1) + &(w2 * w2);
    let definite = if negative {
        &q33 + &(pivot * pivot) == sq
    } else {
        &q33 - &(pivot * pivot) == -&sq
    };
    tb.step(
        format!("{piv_name} != 0: otherwise <e3,e3> = 0 forces e3 = 0"),
        definite,
    );
    // pivot^2 <e2,e2> = sign * (u1 w2 - u2 w1)^2 - sign * (u1^2+u2^2) <e3,e3>
    let cross = &(u1 * w2) - &(u2 * w1);
    let norm_u = &(u1 * u1) + &(u2 * u2);
    let lhs = &(&(pivot * pivot) * &norm_u) - &(&(u1 * w1) + &(u2 * w2)).pow(2);
    let rhs = if negative {
        &cross.pow(2) + &(&norm_u * &(&(&(pivot * pivot) - &(w1 * w1)) - &(w2 * w2)))
    } else {
        &cross.pow(2) - &(&norm_u * &(&(&(w1 * w1) + &(w2 * w2)) - &(pivot * pivot)))
    };
    let identity = (&lhs - &rhs).is_zero();
    let (cross_txt, frac) = if negative {
        ("bz - cy", "((bz-cy)/x)^2")
    } else {
        ("ay - bx", "((ay-bx)/z)^2")
    };
    tb.step(
        if negative {
            format!("identity x^2(b^2+c^2) - (by+cz)^2 = ({cross_txt})^2 + (b^2+c^2)(x^2-y^2-z^2) (exact expansion)")
        } else {
            format!("identity z^2(a^2+b^2) - (ax+by)^2 = ({cross_txt})^2 - (a^2+b^2)(x^2+y^2-z^2) (exact expansion)")
        },
        identity,
    );
    let solved = if negative {
        "a = (by+cz)/x"
    } else {
        "c = (ax+by)/z"
    };
    tb.step(
        format!("solve <e2,e3> = 0 for {solved} and substitute into <e2,e2> = {s}"),
        true,
    );

    // exact rational instances: Pythagorean null vectors and random b, c
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut instances_ok = true;
    for (m, k) in [(2i64, 1i64), (3, 2), (4, 1), (5, 3), (7, 4), (9, 2)] {
        let (p0, p1, p2) = (rat(m * m + k * k), rat(m * m - k * k), rat(2 * m * k));
        let r1 = BigRational::new(
            BigInt::from(rng.random_range(-50i64..=50)),
            BigInt::from(rng.random_range(1i64..=9)),
        );
        let r2 = BigRational::new(
            BigInt::from(rng.random_range(-50i64..=50)),
            BigInt::from(rng.random_range(1i64..=9)),
        );
        // pivot = p0, (w1, w2) = (p1, p2); solve for the remaining coordinate
        let solved = (&r1 * &p1 + &r2 * &p2) / &p0;
        let pt: Vec<BigRational> = if negative {
            vec![
                solved.clone(),
                r1.clone(),
                r2.clone(),
                p0.clone(),
                p1.clone(),
                p2.clone(),
            ]
        } else {
            vec![
                r1.clone(),
                r2.clone(),
                solved.clone(),
                p1.clone(),
                p2.clone(),
                p0.clone(),
            ]
        };
        let on_quadrics = q33.eval(&pt).is_zero() && q23.eval(&pt).is_zero();
        let square = {
            let q = cross.eval(&pt) / &p0;
            &q * &q
        };
        // <e2,e2> equals sign * square; it can never reach sign * (-1)
        let value = q22.eval(&pt);
        let matches = value == &square * rat(if negative { 1 } else { -1 });
        instances_ok &= on_quadrics && matches && !square.is_negative();
    }
    let sign_txt = if negative { "" } else { "-" };
    tb.step(
        format!("on 6 exact rational points of the quadrics <e2,e2> = {sign_txt}{frac}, so it equals {s} only if {frac} = -1"),
        instances_ok,
    );
    let end = format!("{frac} = -1");
    tb.step(
        format!("{end}: a real square cannot be negative"),
        identity && instances_ok,
    );
    Ok(end)
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Row {
    pub label: String,
    pub signatures: Vec<Signature>,
    /// One entry per family 1..=7; `None` if the sampled signatures disagree.
    pub cells: Vec<Option<bool>>,
}

pub fn existence_row(sig: Signature) -> Result<Vec<bool>> {
    FamilyId::NUMBERED
        .iter()
        .map(|&f| existence_oracle(sig, f, None).map(|r| r.exists()))
        .collect()
}

fn sample_row(label: &str, sigs: &[(usize, usize)]) -> Result<Table2Row> {
    let signatures: Vec<Signature> = sigs
        .iter()
        .map(|&(n, p)| Signature::new(n, p))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<bool>> = signatures
        .iter()
        .map(|&s| existence_row(s))
        .collect::<Result<_>>()?;
    let cells = (0..7)
        .map(|j| {
            let first = rows[0][j];
            rows.iter().all(|r| r[j] == first).then_some(first)
        })
        .collect();
    Ok(Table2Row {
        label: label.into(),
        signatures,
        cells,
    })
}

/// The six rows of the published table, each evaluated at sample signatures.
pub fn table2() -> Result<Vec<Table2Row>> {
    Ok(vec![
        sample_row("R^n_0 (n>=3)", &[(3, 0), (4, 0), (5, 0)])?,
        sample_row("R^3_1", &[(3, 1)])?,
        sample_row("R^4_1", &[(4, 1)])?,
        sample_row("R^4_2", &[(4, 2)])?,
        sample_row("R^n_1 (n>=5)", &[(5, 1), (6, 1)])?,
        sample_row("R^n_p (n>=5, 2<=p<=n/2)", &[(5, 2), (6, 2), (6, 3)])?,
    ])
}

/// One row per signature over the given ranges (`p <= n`).
pub fn table2_range(
    ns: std::ops::RangeInclusive<usize>,
    ps: std::ops::RangeInclusive<usize>,
) -> Result<Vec<Table2Row>> {
    let mut out = Vec::new();
    for n in ns {
        for p in ps.clone().filter(|&p| p <= n) {
            out.push(sample_row(&format!("R^{n}_{p}"), &[(n, p)])?);
        }
    }
    Ok(out)
}

fn cell_symbol(c: Option<bool>) -> &'static str {
    match c {
        Some(true) => "○",
        Some(false) => "×",
        None => "?",
    }
}

pub fn render_table_text(rows: &[Table2Row]) -> String {
    let width = rows
        .iter()
        .map(|r| r.label.chars().count())
        .max()
        .unwrap_or(0)
        .max(9);
    let mut out = format!("{:<width$} | 1 2 3 4 5 6 7\n", "signature");
    out.push_str(&format!("{}-+--------------\n", "-".repeat(width)));
    for r in rows {
        let cells: Vec<&str> = r.cells.iter().map(|&c| cell_symbol(c)).collect();
        out.push_str(&format!("{:<width$} | {}\n", r.label, cells.join(" ")));
    }
    out
}

pub fn render_table_csv(rows: &[Table2Row]) -> String {
    let mut out = String::from("signature,samples,f1,f2,f3,f4,f5,f6,f7\n");
    for r in rows {
        let samples: Vec<String> = r
            .signatures
            .iter()
            .map(|s| format!("{},{}", s.n, s.p))
            .collect();
        let cells: Vec<&str> = r
            .cells
            .iter()
            .map(|c| match c {
                Some(true) => "yes",
                Some(false) => "no",
                None => "mixed",
            })
            .collect();
        out.push_str(&format!(
            "\"{}\",\"{}\",{}\n",
            r.label,
            samples.join(";"),
            cells.join(",")
        ));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome")]
pub enum BruteForceOutcome {
    FoundWitness {
        trial: usize,
        frame: Vec<Vec<f64>>,
    },
    /// Inconclusive: failing to find a frame proves nothing.
    NoneFound {
        trials: usize,
    },
}

impl BruteForceOutcome {
    pub fn found(&self) -> bool {
        matches!(self, BruteForceOutcome::FoundWitness { .. })
    }
}

const SIGN_MARGIN: f64 = 1e-6;

/// Randomized frame search independent of [`admits_pattern`].
///
/// Each trial draws integer vectors, projects them onto the orthogonal
/// complement of the vectors chosen so far and keeps them if their norm has
/// the required sign. Null vectors are sums of a fresh orthonormal
/// spacelike/timelike pair. A candidate is accepted only after a Gram check
/// to 1e-9 and a Euclidean independence check.
pub fn brute_force_cross_check(
    sig: Signature,
    pat: NormPattern,
    trials: usize,
    seed: u64,
) -> BruteForceOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        if let Some(frame) = search_once(sig, pat, &mut rng) {
            return BruteForceOutcome::FoundWitness { trial, frame };
        }
    }
    BruteForceOutcome::NoneFound { trials }
}

fn search_once(sig: Signature, pat: NormPattern, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<f64>>> {
    let n = sig.n;
    // orthonormal non-null vectors found so far, with their norms
    let mut basis: Vec<(Vec<f64>, f64)> = Vec::new();
    let draw = |basis: &[(Vec<f64>, f64)], want: f64, rng: &mut ChaCha8Rng| -> Option<Vec<f64>> {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-3i32..=3) as f64).collect();
        for (e, norm) in basis {
            let k = sig.dot(&v, e) * norm;
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi -= k * ei;
            }
        }
        let q = sig.dot(&v, &v);
        let scale = v.iter().map(|x| x * x).sum::<f64>();
        if scale == 0.0 || q * want <= SIGN_MARGIN * scale {
            return None;
        }
        let r = q.abs().sqrt();
        Some(v.into_iter().map(|x| x / r).collect())
    };
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut null = Vec::new();
    for _ in 0..pat.a {
        let v = draw(&basis, 1.0, rng)?;
        basis.push((v.clone(), 1.0));
        plus.push(v);
    }
    for _ in 0..pat.b {
        let v = draw(&basis, -1.0, rng)?;
        basis.push((v.clone(), -1.0));
        minus.push(v);
    }
    for _ in 0..pat.c {
        let u = draw(&basis, 1.0, rng)?;
        basis.push((u.clone(), 1.0));
        let w = draw(&basis, -1.0, rng)?;
        basis.push((w.clone(), -1.0));
        null.push(u.iter().zip(&w).map(|(x, y)| x + y).collect::<Vec<f64>>());
    }
    let frame: Vec<Vec<f64>> = plus.into_iter().chain(minus).chain(null).collect();
    let target: Vec<f64> = std::iter::repeat_n(1.0, pat.a)
        .chain(std::iter::repeat_n(-1.0, pat.b))
        .chain(std::iter::repeat_n(0.0, pat.c))
        .collect();
    for i in 0..frame.len() {
        for j in 0..frame.len() {
            let want = if i == j { target[i] } else { 0.0 };
            if (sig.dot(&frame[i], &frame[j]) - want).abs() > 1e-9 {
                return None;
            }
        }
    }
    (euclidean_independence(&frame) > 1e-10).then_some(frame)
}

/// Determinant of the Euclidean Gram matrix of the normalized vectors.
#[allow(clippy::needless_range_loop)]
fn euclidean_independence(vs: &[Vec<f64>]) -> f64 {
    let unit: Vec<Vec<f64>> = vs
        .iter()
        .map(|v| {
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / r).collect()
        })
        .collect();
    let k = unit.len();
    let mut m: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| unit[i].iter().zip(&unit[j]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let mut det = 1.0;
    for c in 0..k {
        let p = (c..k)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .expect("non-empty");
        if m[p][c].abs() < 1e-300 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in (c + 1)..k {
            let f = m[r][c] / m[c][c];
            for j in c..k {
                m[r][j] -= f * m[c][j];
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, p: usize) -> Signature {
        Signature::new(n, p).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert!(!admits_pattern(sig(3, 1), NormPattern::new(1, 1, 1)));
        assert!(admits_pattern(sig(4, 2), NormPattern::new(1, 1, 1)));
        assert!(admits_pattern(sig(3, 0), NormPattern::new(3, 0, 0)));
        assert!(!admits_pattern(sig(4, 2), NormPattern::new(2, 0, 1)));
    }

    #[test]
    fn witness_examples() {
        let w = find_witness(sig(4, 2), NormPattern::new(1, 1, 1)).unwrap();
        assert_eq!(
            w.vectors,
            vec![vec![0, 0, 1, 0], vec![1, 0, 0, 0], vec![0, 1, 0, 1]]
        );
        assert_eq!(w.diagonal(), vec![1, -1, 0]);
        let w = find_witness(sig(3, 0), NormPattern::new(3, 0, 0)).unwrap();
        assert_eq!(w.vectors, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let w = find_witness(sig(4, 1), NormPattern::new(2, 0, 1)).unwrap();
        assert_eq!(
            w.vectors,
            vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, 1]]
        );
        assert!(matches!(
            find_witness(sig(3, 1), NormPattern::new(1, 1, 1)),
            Err(Error::NoWitness { .. })
        ));
    }

    #[test]
    fn cylinder_existence() {
        assert!(!admits_cylinder(sig(3, 0)).unwrap().exists());
        assert!(admits_cylinder(sig(3, 1)).unwrap().exists());
        assert!(admits_cylinder(sig(4, 2)).unwrap().exists());
        let ne = admits_cylinder(sig(3, 0)).unwrap().non_existence().unwrap();
        assert_eq!(ne.kind, CertificateKind::DimensionCountObstruction);
    }

    #[test]
    fn oracle_examples() {
        let r = existence_oracle(sig(3, 1), FamilyId::HyperbolicHelicoid2, None).unwrap();
        assert_eq!(
            r.non_existence().unwrap().kind,
            CertificateKind::IndexOneNullOrthogonalObstruction
        );
        let r = existence_oracle(sig(4, 2), FamilyId::EllipticHelicoid2, None).unwrap();
        let ne = r.non_existence().unwrap();
        assert_eq!(ne.kind, CertificateKind::NeutralQuadraticContradiction);
        assert_eq!(ne.certificates.len(), 2);
        let r = existence_oracle(sig(4, 1), FamilyId::MinimalHyperbolicParaboloid, None).unwrap();
        assert!(r.exists());
        // sign dependence: in R^4_1 only (0,+,+) of the paraboloid is realizable
        let realizable: Vec<_> = r
            .outcomes
            .iter()
            .filter(|o| matches!(o.verdict, SignVerdict::Witness(_)))
            .map(|o| o.signs)
            .collect();
        assert_eq!(realizable, vec![SignChoice::new(0, 1, 1)]);
    }

    #[test]
    fn replays() {
        let t = replay_certificate(
            sig(3, 1),
            FamilyId::HyperbolicHelicoid2,
            CertificateKind::IndexOneNullOrthogonalObstruction,
        )
        .unwrap();
        assert!(t.verified);
        assert_eq!(t.conclusion, "e3 = 0 contradicts null (non-zero)");

        let t = replay_certificate(
            sig(4, 2),
            FamilyId::EllipticHelicoid2,
            CertificateKind::NeutralQuadraticContradiction,
        )
        .unwrap();
        assert!(t.verified, "{t:#?}");
        assert_eq!(t.conclusion, "((bz-cy)/x)^2 = -1");

        let t = replay_certificate(
            sig(3, 0),
            FamilyId::ParabolicHelicoid,
            CertificateKind::DimensionCountObstruction,
        )
        .unwrap();
        assert!(t.verified);
        assert!(t
            .steps
            .iter()
            .any(|s| s.claim == "violated inequality b + c <= p: 1 > 0"));

        assert!(replay_certificate(
            sig(4, 2),
            FamilyId::HyperbolicHelicoid2,
            CertificateKind::DimensionCountObstruction
        )
        .is_err());
        assert!(replay_certificate(
            sig(3, 1),
            FamilyId::HyperbolicHelicoid2,
            CertificateKind::DimensionCountObstruction
        )
        .is_err());
    }

    #[test]
    fn table_rows() {
        let t = table2().unwrap();
        let row = |i: usize| t[i].cells.iter().map(|c| c.unwrap()).collect::<Vec<_>>();
        assert_eq!(row(0), vec![false, true, false, false, false, false, false]);
        assert_eq!(row(1), vec![true, true, false, true, false, true, false]);
        assert_eq!(row(3), vec![true, true, false, true, true, true, true]);
        let text = render_table_text(&t);
        assert!(text.contains("R^3_1") && text.contains("○ ○ × ○ × ○ ×"));
        assert_eq!(render_table_csv(&t).lines().count(), 7);
    }

    #[test]
    fn brute_force_examples() {
        assert!(brute_force_cross_check(sig(4, 2), NormPattern::new(1, 1, 1), 1000, 7).found());
        assert!(!brute_force_cross_check(sig(3, 0), NormPattern::new(0, 1, 0), 200, 7).found());
        assert!(brute_force_cross_check(sig(5, 2), NormPattern::new(2, 0, 1), 1000, 7).found());
    }
}
