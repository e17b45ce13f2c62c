// Fundamental forms and mean curvature of the classical helicoid, and a
// minimality sweep that compares it with a circular cylinder.

use ruledmin::catalog::{generate, FamilyId, SignChoice};
use ruledmin::curve::{Basis, CurveExpr};
use ruledmin::grid::Interval;
use ruledmin::metric::{Signature, Vector};
use ruledmin::surface::{forms_at, is_minimal, RuledSurface, Tolerances, TAU_DEG};

fn main() {
    let sig = Signature::new(3, 0).unwrap();
    let helicoid = generate(sig, FamilyId::EllipticHelicoid1, SignChoice::new(1, 1, 1)).unwrap();

    let b = forms_at(sig, &helicoid.surface, 0.4, 1.5, TAU_DEG).unwrap();
    println!(
        "g = [[{}, {}], [{}, {}]], det g = {}",
        b.first.g11, b.first.g12, b.first.g12, b.first.g22, b.first.det_g
    );
    println!("h12 = {:?}", b.second.h12.0);
    println!("H = {:?}", b.h.0);

    let grid = helicoid.surface.default_grid(101, 101);
    let rep = is_minimal(sig, &helicoid.surface, &grid, &Tolerances::default()).unwrap();
    println!(
        "helicoid: {:?}, max|H| = {:.3e} over {} points",
        rep.verdict, rep.max_h, rep.evaluated
    );

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
    let rep = is_minimal(sig, &cylinder, &grid, &Tolerances::default()).unwrap();
    println!(
        "circular cylinder: {:?}, max|H| = {:.6}",
        rep.verdict, rep.max_h
    );
}
