// Where each helicoid is spacelike or timelike, from the closed-form det g,
// cross-checked against sampled first fundamental forms.

use ruledmin::catalog::{causal_map, FamilyId, SignChoice};
use ruledmin::grid::Interval;
use ruledmin::metric::Signature;

fn main() {
    let sig = Signature::new(4, 2).unwrap();
    let t = Interval::symmetric(3.0);
    for (family, signs) in [
        (FamilyId::EllipticHelicoid1, SignChoice::new(1, 1, -1)),
        (FamilyId::HyperbolicHelicoid1, SignChoice::new(1, -1, 1)),
        (FamilyId::HyperbolicHelicoid2, SignChoice::new(1, -1, 0)),
        (FamilyId::ParabolicHelicoid, SignChoice::new(1, 1, -1)),
        (FamilyId::MinimalCylinder, SignChoice::new(0, 0, 0)),
    ] {
        let r = causal_map(sig, family, signs, t).unwrap();
        println!("{family} ({signs}): det g = {}", r.det_g.expression);
        for region in &r.regions {
            println!(
                "    t in [{:+.3}, {:+.3}]: {:?}",
                region.t_lo, region.t_hi, region.verdict
            );
        }
        println!(
            "    degenerate at t = {:?}; {} of {} samples agree ({} in the band)",
            r.degenerate_loci, r.samples.agree, r.samples.sampled, r.samples.excluded_band
        );
    }
}
