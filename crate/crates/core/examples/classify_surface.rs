// Case analysis and family identification.

use ruledmin::catalog::{generate, FamilyId, SignChoice};
use ruledmin::classify::{classify, ClassifyOptions};
use ruledmin::metric::Signature;

fn main() {
    let opts = ClassifyOptions::default();
    let cases = [
        (
            (3, 0),
            FamilyId::EllipticHelicoid1,
            SignChoice::new(1, 1, 1),
        ),
        (
            (3, 1),
            FamilyId::HyperbolicHelicoid1,
            SignChoice::new(1, -1, 1),
        ),
        (
            (3, 1),
            FamilyId::ParabolicHelicoid,
            SignChoice::new(1, 1, -1),
        ),
        (
            (4, 1),
            FamilyId::MinimalHyperbolicParaboloid,
            SignChoice::new(0, 1, 1),
        ),
        (
            (4, 2),
            FamilyId::HyperbolicHelicoid2,
            SignChoice::new(1, -1, 0),
        ),
        ((3, 1), FamilyId::MinimalCylinder, SignChoice::new(0, 0, 0)),
    ];
    for ((n, p), family, signs) in cases {
        let sig = Signature::new(n, p).unwrap();
        let surface = generate(sig, family, signs).unwrap().surface;
        let r = classify(sig, &surface, &opts).unwrap();
        let inv = r.invariants.map(|i| {
            format!(
                "eps={} eta={} delta={} mu={:?}",
                i.epsilon, i.eta, i.delta, i.mu
            )
        });
        println!(
            "{sig} {family} ({signs}): case {} (raw {}), identified as {:?}; {}",
            r.case,
            r.raw_case,
            r.family,
            inv.unwrap_or_else(|| "constant direction".into())
        );
        for note in &r.reductions {
            println!("    {note}");
        }
    }
}
