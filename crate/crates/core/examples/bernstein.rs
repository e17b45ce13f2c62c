// The spacelike minimal hyperbolic paraboloid in R^4_1 is an entire,
// non-planar minimal graph; it does not exist in R^3_0 or R^3_1.

use ruledmin::catalog::{bernstein_check, SignChoice};
use ruledmin::metric::Signature;

fn main() {
    let signs = SignChoice::new(0, 1, 1);
    let r = bernstein_check(Signature::new(4, 1).unwrap(), signs).unwrap();
    println!(
        "R^4_1: entire graph {}, spacelike {}, minimal {}, planar {}",
        r.entire_graph, r.spacelike, r.minimal, r.planar
    );
    for d in &r.domains {
        println!(
            "    [-{0}, {0}]^2: min g11 = {1:.3}, min det g = {2:.3}, max|H| = {3:.2e}",
            d.half_width, d.min_g11, d.min_det_g, d.max_h
        );
    }
    for (n, p) in [(3, 0), (3, 1)] {
        match bernstein_check(Signature::new(n, p).unwrap(), signs) {
            Ok(_) => println!("R^{n}_{p}: unexpectedly constructed"),
            Err(e) => println!("R^{n}_{p}: {e}"),
        }
    }
}
