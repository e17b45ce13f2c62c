// Closed-form curves: exact derivatives, finite-difference checks, null
// curves and arc-length reparametrization.

use ruledmin::curve::{
    fd_derivative, is_null_curve, reparametrize_unit_speed, Basis, CurveExpr, ParamCurve,
};
use ruledmin::grid::Interval;
use ruledmin::metric::Signature;

fn main() {
    let sig = Signature::new(3, 1).unwrap();
    // (sinh s, cosh s, s) has <x',x'> = -cosh^2 + sinh^2 + 1 = 0
    let null = CurveExpr::new(3)
        .with(Basis::Sinh(1.0), vec![1.0, 0.0, 0.0])
        .with(Basis::Cosh(1.0), vec![0.0, 1.0, 0.0])
        .with(Basis::Pow(1), vec![0.0, 0.0, 1.0]);
    let grid = Interval::symmetric(2.0).linspace(101);
    println!("null curve: {}", is_null_curve(sig, &null, &grid, 1e-9));

    let s = 0.7;
    for h in [1e-1, 1e-2, 1e-3] {
        let err = (&fd_derivative(&null, s, 2, h).unwrap() - &null.eval(s, 2)).max_abs();
        println!("second derivative, h = {h:e}: error {err:.3e}");
    }

    // a circle of radius 2 traversed at speed 2, reparametrized by arc length
    let euclid = Signature::new(3, 0).unwrap();
    let circle = CurveExpr::new(3)
        .with(Basis::Cos(1.0), vec![2.0, 0.0, 0.0])
        .with(Basis::Sin(1.0), vec![0.0, 2.0, 0.0]);
    let table =
        reparametrize_unit_speed(euclid, &circle, Interval::new(0.0, 3.0).unwrap(), 2001).unwrap();
    println!(
        "arc length of the circle over [0,3]: {:.12}",
        table.total_length()
    );
}
