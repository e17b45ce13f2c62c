//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ruledmin::catalog::{
    bernstein_check, catalog_tolerances, causal_map, generate, generate_with_frame, FamilyId,
    FrameSpec, RegionType, SignChoice,
};
use ruledmin::classify::{c_summary, classify, CaseLabel, ClassifyOptions};
use ruledmin::curve::{fd_derivative, Basis, CurveExpr, ParamCurve};
use ruledmin::error::Error;
use ruledmin::existence::{
    admits_pattern, brute_force_cross_check, existence_oracle, render_table_text,
    replay_certificate, table2, validate_frame, CertificateKind, NormPattern, SignVerdict,
};
use ruledmin::grid::Interval;
use ruledmin::metric::{Signature, Vector};
use ruledmin::surface::{forms_at, gauge_normalize, immersion_jet, RuledSurface, Verdict};

type Outcome = Result<String, String>;

fn sig(n: usize, p: usize) -> Signature {
    Signature::new(n, p).unwrap()
}

fn signatures() -> Vec<Signature> {
    (3..=6)
        .flat_map(|n| (0..=n).map(move |p| sig(n, p)))
        .collect()
}

/// Every realizable (signature, family, sign choice) with 3 <= n <= 6.
fn realizable() -> Vec<(Signature, FamilyId, SignChoice)> {
    let mut out = Vec::new();
    for s in signatures() {
        for f in FamilyId::NUMBERED {
            for o in existence_oracle(s, f, None).unwrap().outcomes {
                if matches!(o.verdict, SignVerdict::Witness(_)) {
                    out.push((s, f, o.signs));
                }
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_reproduction() -> Outcome {
    let o = true;
    let x = false;
    let expected: [(&str, [bool; 7]); 6] = [
        ("R^n_0 (n>=3)", [x, o, x, x, x, x, x]),
        ("R^3_1", [o, o, x, o, x, o, x]),
        ("R^4_1", [o, o, o, o, x, o, o]),
        ("R^4_2", [o, o, x, o, o, o, o]),
        ("R^n_1 (n>=5)", [o, o, o, o, x, o, o]),
        ("R^n_p (n>=5, 2<=p<=n/2)", [o, o, o, o, o, o, o]),
    ];
    let rows = table2().map_err(|e| e.to_string())?;
    ensure(rows.len() == 6, || format!("{} rows", rows.len()))?;
    for (row, (label, cells)) in rows.iter().zip(expected) {
        ensure(row.label == label, || {
            format!("row label {} != {label}", row.label)
        })?;
        let got: Vec<Option<bool>> = row.cells.clone();
        let want: Vec<Option<bool>> = cells.iter().map(|&c| Some(c)).collect();
        ensure(got == want, || format!("{label}: {got:?} != {want:?}"))?;
    }
    let text = render_table_text(&rows);
    ensure(
        text.lines().filter(|l| l.starts_with("R^")).count() == 6,
        || text.clone(),
    )?;
    Ok("42 cells match".into())
}

fn minimality_of_catalog() -> Outcome {
    let triples = realizable();
    let mut worst = 0.0f64;
    for &(s, f, signs) in &triples {
        let cat = generate(s, f, signs).map_err(|e| format!("{s} {f} {signs}: {e}"))?;
        let rep = cat
            .verify_minimal()
            .map_err(|e| format!("{s} {f} {signs}: {e}"))?;
        ensure(rep.max_h <= 1e-8, || {
            format!("{s} {f} {signs}: max|H| = {:e}", rep.max_h)
        })?;
        worst = worst.max(rep.max_h);
    }
    Ok(format!(
        "{} surfaces, worst max|H| = {worst:e}",
        triples.len()
    ))
}

fn non_existence_certificates() -> Outcome {
    for n in 3..=6 {
        let s = sig(n, 1);
        let res = existence_oracle(s, FamilyId::HyperbolicHelicoid2, None).unwrap();
        let ne = res
            .non_existence()
            .ok_or_else(|| format!("{s}: witness found"))?;
        let trace = replay_certificate(s, FamilyId::HyperbolicHelicoid2, ne.kind)
            .map_err(|e| e.to_string())?;
        ensure(
            ne.kind == CertificateKind::IndexOneNullOrthogonalObstruction,
            || format!("{s}: {:?}", ne.kind),
        )?;
        ensure(
            trace.verified && trace.conclusion.contains("e3 = 0"),
            || format!("{s}: {}", trace.conclusion),
        )?;
    }
    let s = sig(4, 2);
    let res = existence_oracle(s, FamilyId::EllipticHelicoid2, None).unwrap();
    let ne = res
        .non_existence()
        .ok_or("R^4_2 elliptic helicoid 2: witness found")?;
    ensure(
        ne.kind == CertificateKind::NeutralQuadraticContradiction,
        || format!("{:?}", ne.kind),
    )?;
    let trace =
        replay_certificate(s, FamilyId::EllipticHelicoid2, ne.kind).map_err(|e| e.to_string())?;
    ensure(trace.verified, || "neutral replay not verified".into())?;
    ensure(
        trace
            .steps
            .iter()
            .any(|st| st.claim.contains("((bz-cy)/x)^2 = -1"))
            || trace.conclusion.contains("((bz-cy)/x)^2 = -1"),
        || trace.conclusion.clone(),
    )?;
    Ok(format!(
        "4 Minkowski certificates and the neutral trace: {}",
        trace.conclusion
    ))
}

type CausalCase = (
    FamilyId,
    SignChoice,
    Vec<f64>,
    Option<RegionType>,
    RegionType,
);

fn causal_type_change() -> Outcome {
    let s6 = sig(6, 3);
    let t_dom = Interval::symmetric(3.0);
    // (family, signs, loci, verdict at t = 0.5, verdict at t = 2)
    use RegionType::{Spacelike as S, Timelike as T};
    let cases: Vec<CausalCase> = vec![
        (
            FamilyId::EllipticHelicoid1,
            SignChoice::new(1, 1, 1),
            vec![],
            Some(S),
            S,
        ),
        (
            FamilyId::EllipticHelicoid1,
            SignChoice::new(1, 1, -1),
            vec![-1.0, 1.0],
            Some(T),
            S,
        ),
        (
            FamilyId::EllipticHelicoid1,
            SignChoice::new(-1, -1, 1),
            vec![-1.0, 1.0],
            Some(T),
            S,
        ),
        (
            FamilyId::HyperbolicHelicoid1,
            SignChoice::new(1, -1, -1),
            vec![],
            Some(T),
            T,
        ),
        (
            FamilyId::HyperbolicHelicoid1,
            SignChoice::new(1, -1, 1),
            vec![-1.0, 1.0],
            Some(S),
            T,
        ),
        (
            FamilyId::HyperbolicHelicoid1,
            SignChoice::new(-1, 1, -1),
            vec![-1.0, 1.0],
            Some(S),
            T,
        ),
        (
            FamilyId::EllipticHelicoid2,
            SignChoice::new(1, 1, 0),
            vec![0.0],
            Some(S),
            S,
        ),
        (
            FamilyId::HyperbolicHelicoid2,
            SignChoice::new(1, -1, 0),
            vec![0.0],
            Some(T),
            T,
        ),
        (
            FamilyId::ParabolicHelicoid,
            SignChoice::new(1, 1, -1),
            vec![0.0],
            Some(T),
            T,
        ),
        // g11 = -4 s1 t, g12 = 0, g22 = s1: det g = -4t for either sign
        (
            FamilyId::ParabolicHelicoid,
            SignChoice::new(-1, -1, 1),
            vec![0.0],
            Some(T),
            T,
        ),
        (
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, 1),
            vec![],
            Some(S),
            S,
        ),
        (
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, -1),
            vec![],
            Some(T),
            T,
        ),
        (
            FamilyId::MinimalCylinder,
            SignChoice::new(0, 0, 0),
            vec![],
            Some(T),
            T,
        ),
    ];
    let mut points = 0;
    for (f, signs, loci, at_half, at_two) in cases {
        let r = causal_map(s6, f, signs, t_dom).map_err(|e| format!("{f} {signs}: {e}"))?;
        ensure(r.degenerate_loci.len() == loci.len(), || {
            format!("{f} {signs}: loci {:?}", r.degenerate_loci)
        })?;
        for (a, b) in r.degenerate_loci.iter().zip(&loci) {
            ensure((a - b).abs() <= 1e-10, || {
                format!("{f} {signs}: locus {a} vs {b}")
            })?;
        }
        let verdict_at = |t: f64| {
            r.regions
                .iter()
                .find(|g| g.t_lo < t && t < g.t_hi)
                .map(|g| g.verdict)
        };
        ensure(
            verdict_at(0.5) == at_half && verdict_at(2.0) == Some(at_two),
            || format!("{f} {signs}: regions {:?}", r.regions),
        )?;
        ensure(
            r.samples.sampled == 10_000 && r.samples.disagree == 0,
            || format!("{f} {signs}: {:?}", r.samples),
        )?;
        points += r.samples.sampled;
    }
    Ok(format!(
        "13 sign choices, {points} sampled points, no disagreement"
    ))
}

fn neutral_witness() -> Outcome {
    let s = sig(4, 2);
    let frame = FrameSpec::new(
        s,
        vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 1]],
    )
    .map_err(|e| e.to_string())?;
    let signs =
        validate_frame(s, FamilyId::HyperbolicHelicoid2, &frame).map_err(|e| e.to_string())?;
    let cat =
        generate_with_frame(s, FamilyId::HyperbolicHelicoid2, frame).map_err(|e| e.to_string())?;
    let rep = cat.verify_minimal().map_err(|e| e.to_string())?;
    ensure(rep.verdict == Verdict::Minimal, || {
        format!("max|H| = {:e}", rep.max_h)
    })?;
    Ok(format!(
        "accepted with signs {signs}, max|H| = {:e}",
        rep.max_h
    ))
}

fn classifier_round_trip() -> Outcome {
    let opts = ClassifyOptions {
        tol: catalog_tolerances(),
        ..ClassifyOptions::default()
    };
    let triples = realizable();
    for &(s, f, signs) in &triples {
        let cat = generate(s, f, signs).unwrap();
        let r = classify(s, &cat.surface, &opts).map_err(|e| format!("{s} {f} {signs}: {e}"))?;
        ensure(r.family == Some(f), || {
            format!("{s} {f} {signs}: classified as {:?}", r.family)
        })?;
        let want = match f {
            FamilyId::MinimalCylinder => CaseLabel::Cylinder,
            FamilyId::EllipticHelicoid1 | FamilyId::HyperbolicHelicoid1 => CaseLabel::I,
            FamilyId::EllipticHelicoid2 | FamilyId::HyperbolicHelicoid2 => CaseLabel::II,
            FamilyId::ParabolicHelicoid => CaseLabel::IV,
            FamilyId::MinimalHyperbolicParaboloid => CaseLabel::V,
            FamilyId::Plane => unreachable!(),
        };
        ensure(r.case == want, || {
            format!("{s} {f} {signs}: case {} != {want}", r.case)
        })?;
    }
    Ok(format!("{} surfaces identified", triples.len()))
}

fn c_constancy() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (s, f, signs) in realizable() {
        if f == FamilyId::MinimalCylinder {
            continue;
        }
        let cat = generate(s, f, signs).unwrap();
        let c = c_summary(
            s,
            &cat.surface,
            &cat.surface.default_grid(41, 41),
            catalog_tolerances().degenerate,
        );
        ensure(c.evaluated > 0 && c.max_abs <= 1e-9, || {
            format!("{s} {f} {signs}: max|C| = {:e}", c.max_abs)
        })?;
        worst = worst.max(c.max_abs);
        count += 1;
    }
    Ok(format!("{count} surfaces, worst max|C| = {worst:e}"))
}

/// Helicoid in R^3 with base shifted along the rulings by
/// `phi(s) = a + b sin(ks) + c cos(ks)`.
fn perturbed_helicoid(a: f64, b: f64, c: f64, k: f64) -> RuledSurface {
    let gamma = CurveExpr::new(3)
        .with(Basis::Cos(1.0), vec![1.0, 0.0, 0.0])
        .with(Basis::Sin(1.0), vec![0.0, 1.0, 0.0]);
    let h = 0.5;
    let base = CurveExpr::new(3)
        .with(Basis::Pow(1), vec![0.0, 0.0, 1.0])
        .with(Basis::Cos(1.0), vec![a, 0.0, 0.0])
        .with(Basis::Sin(1.0), vec![0.0, a, 0.0])
        // b sin(ks) (cos s, sin s)
        .with(Basis::Sin(k + 1.0), vec![h * b, 0.0, 0.0])
        .with(Basis::Sin(k - 1.0), vec![h * b, 0.0, 0.0])
        .with(Basis::Cos(k - 1.0), vec![0.0, h * b, 0.0])
        .with(Basis::Cos(k + 1.0), vec![0.0, -h * b, 0.0])
        // c cos(ks) (cos s, sin s)
        .with(Basis::Cos(k - 1.0), vec![h * c, 0.0, 0.0])
        .with(Basis::Cos(k + 1.0), vec![h * c, 0.0, 0.0])
        .with(Basis::Sin(k + 1.0), vec![0.0, h * c, 0.0])
        .with(Basis::Sin(k - 1.0), vec![0.0, -h * c, 0.0]);
    let dom = Interval::symmetric(3.0);
    RuledSurface::new(gamma, base, dom, dom).unwrap()
}

fn gauge_normalization() -> Outcome {
    let s3 = sig(3, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut worst_g12, mut worst_dist) = (0.0f64, 0.0f64);
    for trial in 0..50 {
        let (a, b, c) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let k = rng.random_range(2..=5) as f64;
        let phi = |s: f64| a + b * (k * s).sin() + c * (k * s).cos();
        let surf = perturbed_helicoid(a, b, c, k);
        let g = gauge_normalize(s3, &surf, 1e-12).map_err(|e| format!("trial {trial}: {e}"))?;
        for i in 0..=200 {
            let s = -3.0 + 0.03 * i as f64;
            let g12 = s3
                .dot(&g.surface.gamma.eval(s, 0), &g.surface.base.eval(s, 1))
                .abs();
            worst_g12 = worst_g12.max(g12);
            // same image: the new point at (s,t) is the old point on the same ruling, shifted by -(phi(s) - phi(0))
            for t in [-2.5, -1.0, 0.0, 0.7, 2.9] {
                let new = g.surface.point(s, t);
                let old = surf.point(s, t - (phi(s) - phi(0.0)));
                worst_dist = worst_dist.max((&new - &old).euclid_norm());
            }
        }
        ensure(worst_g12 <= 1e-9 && worst_dist <= 1e-6, || {
            format!("trial {trial} (a={a}, b={b}, c={c}, k={k}): |g12| = {worst_g12:e}, distance = {worst_dist:e}")
        })?;
    }
    Ok(format!(
        "50 surfaces, max|g12| = {worst_g12:e}, max distance = {worst_dist:e}"
    ))
}

fn oracle_consistency() -> Outcome {
    let mut checked = 0;
    for s in signatures() {
        for pat in NormPattern::all(3) {
            if admits_pattern(s, pat) {
                continue;
            }
            let r = brute_force_cross_check(s, pat, 1000, 20_240_601);
            ensure(!r.found(), || {
                format!("{s} {pat}: random search found {r:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} inadmissible (signature, pattern) pairs, no witness in 1000 trials each"
    ))
}

fn bernstein_counterexample() -> Outcome {
    let r = bernstein_check(sig(4, 1), SignChoice::new(0, 1, 1)).map_err(|e| e.to_string())?;
    ensure(
        r.exists && r.entire_graph && r.spacelike && r.minimal && !r.planar,
        || format!("{r:?}"),
    )?;
    ensure(r.domains.iter().any(|d| d.half_width >= 100.0), || {
        "domain [-100,100]^2 not checked".into()
    })?;
    for s in [sig(3, 0), sig(3, 1)] {
        match bernstein_check(s, SignChoice::new(0, 1, 1)) {
            Err(Error::NonExistence(_)) => {}
            other => {
                return Err(format!(
                    "{s}: expected NonExistence, got {:?}",
                    other.map(|r| r.exists)
                ))
            }
        }
    }
    let min_det = r
        .domains
        .iter()
        .map(|d| d.min_det_g)
        .fold(f64::INFINITY, f64::min);
    Ok(format!(
        "R^4_1 graph checked to [-100,100]^2 (min det g = {min_det}); R^3_0, R^3_1 refused"
    ))
}

fn orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

fn numerical_self_consistency() -> Outcome {
    let ladder = [0.1, 0.05, 0.025, 0.0125];
    let curve = CurveExpr::new(4)
        .with(Basis::Cos(1.3), vec![1.0, 0.0, 0.5, 0.0])
        .with(Basis::Sinh(0.7), vec![0.0, 1.0, 0.0, -0.3])
        .with(Basis::Pow(3), vec![0.1, 0.0, 0.0, 1.0])
        .with(Basis::Exp(-0.4), vec![0.0, 0.2, 1.0, 0.0]);
    let mut min_order = f64::INFINITY;
    for order in [1, 2] {
        for s in [-1.1, 0.3, 0.9] {
            let exact = curve.eval(s, order);
            let errs: Vec<f64> = ladder
                .iter()
                .map(|&h| (&fd_derivative(&curve, s, order, h).unwrap() - &exact).euclid_norm())
                .collect();
            min_order = orders(&errs).into_iter().fold(min_order, f64::min);
        }
    }
    // surface jet: f_s, f_ss, f_st against central differences of points
    let surf = perturbed_helicoid(0.3, -0.4, 0.2, 3.0);
    for (s, t) in [(0.4, -0.8), (-1.2, 1.5)] {
        let jet = immersion_jet(&surf, s, t);
        let p = |ds: f64, dt: f64| surf.point(s + ds, t + dt);
        let mut e_s = Vec::new();
        let mut e_ss = Vec::new();
        let mut e_st = Vec::new();
        for &h in &ladder {
            let fs = (&p(h, 0.0) - &p(-h, 0.0)) * (0.5 / h);
            let fss = (&(&p(h, 0.0) + &p(-h, 0.0)) - &p(0.0, 0.0).scale(2.0)) * (1.0 / (h * h));
            let fst = (&(&p(h, h) - &p(h, -h)) - &(&p(-h, h) - &p(-h, -h))) * (0.25 / (h * h));
            e_s.push((&fs - &jet.f_s).euclid_norm());
            e_ss.push((&fss - &jet.f_ss).euclid_norm());
            e_st.push((&fst - &jet.f_st).euclid_norm());
        }
        for e in [e_s, e_ss] {
            min_order = orders(&e).into_iter().fold(min_order, f64::min);
        }
        // f_st is linear in t, so only s contributes and the scheme is second order
        min_order = orders(&e_st).into_iter().fold(min_order, f64::min);
    }
    ensure(min_order >= 1.9, || format!("observed order {min_order}"))?;

    // trace identity with g12 = 0: H = (h11/g11 + h22/g22) / 2
    let s3 = sig(3, 0);
    let gauged = gauge_normalize(s3, &surf, 1e-12).unwrap().surface;
    let dom = Interval::symmetric(3.0);
    let cylinder = RuledSurface::new(
        CurveExpr::constant(Vector(vec![0.0, 0.0, 1.0])),
        CurveExpr::new(3)
            .with(Basis::Cos(1.0), vec![1.0, 0.0, 0.0])
            .with(Basis::Sin(1.0), vec![0.0, 1.0, 0.0]),
        dom,
        dom,
    )
    .unwrap();
    let mink = generate(
        sig(3, 1),
        FamilyId::EllipticHelicoid1,
        SignChoice::new(1, 1, -1),
    )
    .unwrap()
    .surface;
    let mut worst = 0.0f64;
    let mut checked = 0;
    for (sg, sf) in [(s3, &gauged), (s3, &cylinder), (sig(3, 1), &mink)] {
        for (s, t) in sf.default_grid(15, 15).points() {
            let Ok(b) = forms_at(sg, sf, s, t, 1e-6) else {
                continue;
            };
            if b.first.g12.abs() > 1e-12 {
                continue;
            }
            let trace =
                &(b.second.h11.scale(1.0 / b.first.g11)) + &(b.second.h22.scale(1.0 / b.first.g22));
            let diff = (&b.h - &trace.scale(0.5)).max_abs();
            worst = worst.max(diff);
            checked += 1;
        }
    }
    ensure(checked > 300 && worst <= 1e-12, || {
        format!("trace identity: {checked} points, worst {worst:e}")
    })?;
    Ok(format!(
        "min observed order {min_order:.3}; trace identity at {checked} points, worst {worst:e}"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("existence table reproduction", table_reproduction),
        (
            "minimality of every realizable catalog surface",
            minimality_of_catalog,
        ),
        (
            "non-existence certificates replay",
            non_existence_certificates,
        ),
        ("causal type change", causal_type_change),
        ("neutral-signature witness frame", neutral_witness),
        ("classifier round trip", classifier_round_trip),
        ("C vanishes on catalog surfaces", c_constancy),
        ("gauge normalization", gauge_normalization),
        ("oracle consistency under random search", oracle_consistency),
        ("entire spacelike minimal graph", bernstein_counterexample),
        ("numerical self-consistency", numerical_self_consistency),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
