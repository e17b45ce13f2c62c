// Inner products, causal characters and Gram matrices in R^n_p.

use num_bigint::BigInt;
use num_rational::BigRational;
use ruledmin::metric::{
    causal_character, causal_character_exact, gram_matrix, inner_product, Signature,
};

fn main() {
    let sig: Signature = "4,1".parse().unwrap();
    println!("ambient space {sig}");

    let u = [1.0, 1.0, 0.0, 0.0];
    let v = [2.0, 0.0, 1.0, 0.0];
    println!("<u,v> = {}", inner_product(sig, &u, &v).unwrap());
    for w in [u, v, [1.0, 0.0, 0.0, 0.0]] {
        println!("{w:?} is {:?}", causal_character(sig, &w).unwrap());
    }

    // integer and rational inputs are decided exactly
    let null = [3i64, 0, 4, 0];
    println!(
        "(3,0,4,0) is {:?}",
        causal_character_exact(sig, &null).unwrap()
    );
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let q = [r(5, 13), r(3, 13), r(4, 13), r(0, 1)];
    println!(
        "(5,3,4,0)/13 is {:?}",
        causal_character_exact(sig, &q).unwrap()
    );

    let frame = vec![vec![1i64, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 1, 0]];
    for row in gram_matrix::<i64, _>(sig, &frame).unwrap() {
        println!("{row:?}");
    }
}
