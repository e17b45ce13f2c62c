// Gauge normalization: shift the base curve along the rulings so that
// <gamma, x'> = 0 without changing the image.

use ruledmin::curve::{Basis, CurveExpr, ParamCurve};
use ruledmin::grid::Interval;
use ruledmin::metric::Signature;
use ruledmin::surface::{gauge_normalize, LambdaSource, RuledSurface};

fn main() {
    let sig = Signature::new(3, 0).unwrap();
    let gamma = CurveExpr::new(3)
        .with(Basis::Cos(1.0), vec![1.0, 0.0, 0.0])
        .with(Basis::Sin(1.0), vec![0.0, 1.0, 0.0]);

    // base s e3 + sin(s) gamma(s), written out with product-to-sum identities
    let base = CurveExpr::new(3)
        .with(Basis::Pow(1), vec![0.0, 0.0, 1.0])
        .with(Basis::Sin(2.0), vec![0.5, 0.0, 0.0])
        .with(Basis::Cos(2.0), vec![0.0, -0.5, 0.0])
        .with(Basis::Pow(0), vec![0.0, 0.5, 0.0]);
    let dom = Interval::symmetric(3.0);
    let surface = RuledSurface::new(gamma, base, dom, dom).unwrap();

    let r = gauge_normalize(sig, &surface, 1e-9).unwrap();
    println!(
        "max |g12| before: {:.3e}, after: {:.3e}",
        r.max_g12_before, r.max_g12_after
    );
    match &r.lambda {
        LambdaSource::Quadrature { abs_tol, table } => {
            println!(
                "shift from quadrature (tol {abs_tol:e}), {} nodes",
                table.nodes.len()
            )
        }
        other => println!("shift: {other:?}"),
    }
    for s in [-2.0, 0.5, 2.5] {
        let shifted = r.surface.base.eval(s, 0);
        println!("x~({s}) = {:?}  (expected (0, 0, {s}))", shifted.0);
    }

    // a polynomial integrand gives an exact polynomial shift
    let line = CurveExpr::new(3).with(Basis::Pow(0), vec![1.0, 0.0, 0.0]);
    let base = CurveExpr::new(3)
        .with(Basis::Pow(2), vec![1.0, 0.0, 0.0])
        .with(Basis::Pow(1), vec![0.0, 1.0, 0.0]);
    let plane = RuledSurface::new(line, base, dom, dom).unwrap();
    let r = gauge_normalize(sig, &plane, 1e-9).unwrap();
    println!("polynomial route: {:?}", r.lambda);
}
