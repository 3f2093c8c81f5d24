use frobint::arith::{Field, FiniteField};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = FiniteField::new(7, 4);
    println!("F_7^4 modulus {:?}, order {}", f.modulus(), f.order());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = f.random(&mut rng);
    let inv = f.inv(&x).unwrap();
    println!("x = {:?}, x * x^-1 = {:?}", x.0, f.mul(&x, &inv).0);

    // Frobenius has order 4, the norm lands in F_7
    let mut y = x.clone();
    for _ in 0..4 {
        y = f.frobenius(&y);
    }
    assert_eq!(y, x);
    println!("N(x) = {}", f.norm(&x));

    let sq = f.mul(&x, &x);
    let r = f.sqrt(&sq).unwrap();
    assert!(r == x || r == f.neg(&x));
    println!("x^(7^4 - 1) = {:?}", f.pow(&x, &(BigUint::from(2400u32))).0);
}
