// Every family that exists in the neutral space R^4_2, with its frame,
// closed-form det g and a minimality check on the default grid.

use ruledmin::catalog::{det_g_closed_form, generate, FamilyId};
use ruledmin::existence::existence_oracle;
use ruledmin::metric::Signature;

fn main() {
    let sig = Signature::new(4, 2).unwrap();
    for family in FamilyId::NUMBERED {
        let result = existence_oracle(sig, family, None).unwrap();
        let Some((signs, _)) = result.witness() else {
            println!("{family}: does not exist in {sig}");
            continue;
        };
        let cat = generate(sig, family, signs).unwrap();
        let rep = cat.verify_minimal().unwrap();
        let det = det_g_closed_form(family, signs).unwrap();
        println!(
            "{family} ({signs}): frame {:?}, det g = {}, {:?} (max|H| = {:.2e}, {} degenerate points skipped)",
            cat.frame.vectors,
            det.expression,
            rep.verdict,
            rep.max_h,
            rep.skipped_degenerate.len()
        );
    }
}
