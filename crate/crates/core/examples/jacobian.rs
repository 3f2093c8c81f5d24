use frobint::jacobian::{jacobian_order, CurveModel, Jacobian, ModelPreference, WorkingModel};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let c = CurveModel::from_integer(11, &[3, 2, 2, 4, 0, 1]).unwrap();
    let w = c.weil_quartic().unwrap();
    let model = WorkingModel::new(&c, ModelPreference::Imaginary).unwrap();
    println!("y^2 = {:?} over F_11, kind {:?}", model.f, model.kind);

    let j = Jacobian::new(&model, 1);
    let all = j.enumerate();
    println!("#J(F_11) = {} (enumerated {})", jacobian_order(&w, 1), all.len());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let j3 = Jacobian::new(&model, 3);
    let a = j3.random(&mut rng);
    let b = j3.random(&mut rng);
    let s = j3.add(&a, &b);
    println!("a + b = {s:?}");
    let n = jacobian_order(&w, 3);
    println!("#J(F_11^3) = {n}, order of a = {}", j3.order_of(&a, &n));

    // pi satisfies its Weil polynomial
    let h4: Vec<BigInt> = w.coeffs().iter().map(|&x| BigInt::from(x)).collect();
    assert!(j3.is_zero(&j3.apply_frob_poly(&a, &h4)));
}
