// Existence of each family per signature: the summary table, a witness frame
// and a replayed non-existence certificate.

use ruledmin::catalog::{FamilyId, FrameSpec};
use ruledmin::existence::{
    existence_oracle, render_table_text, replay_certificate, table2, validate_frame,
};
use ruledmin::metric::Signature;

fn main() {
    print!("{}", render_table_text(&table2().unwrap()));

    let neutral = Signature::new(4, 2).unwrap();
    let frame = FrameSpec::new(
        neutral,
        vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 1]],
    )
    .unwrap();
    let signs = validate_frame(neutral, FamilyId::HyperbolicHelicoid2, &frame).unwrap();
    println!(
        "\n{:?} realizes the hyperbolic helicoid of the second kind with signs {signs}",
        frame.vectors
    );

    for (sig, family) in [
        (neutral, FamilyId::EllipticHelicoid2),
        (Signature::new(5, 1).unwrap(), FamilyId::HyperbolicHelicoid2),
    ] {
        let ne = existence_oracle(sig, family, None)
            .unwrap()
            .non_existence()
            .unwrap();
        let trace = replay_certificate(sig, family, ne.kind).unwrap();
        println!("\n{ne}");
        for step in &trace.steps {
            println!(
                "    [{}] {}",
                if step.verified { "ok" } else { "??" },
                step.claim
            );
        }
        println!("    => {}", trace.conclusion);
    }
}
