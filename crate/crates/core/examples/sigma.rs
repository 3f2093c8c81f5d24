use frobint::frobenius::FrobData;
use frobint::orders::{compute_bol, make_order_spec, order_spec_from_values};
use frobint::quadratic::{RQField, RQInt};
use frobint::sigma::{build_sigma, companion, verify_sigma};

fn main() {
    let e = RQField::from_minpoly("x^2+x-1").unwrap();
    let frob = FrobData::new(&e, 59, RQInt::parse("4+4*a").unwrap(), RQInt::int(59));

    println!("companion {}", companion(&e, &frob));

    let spec = order_spec_from_values(&e, &frob, RQInt::ONE, RQInt::int(2)).unwrap();
    let m = build_sigma(&e, &spec).unwrap();
    let rep = verify_sigma(&e, &m, &spec);
    println!("u = 1, b = 2: {m}");
    println!("  trace {} det {} passed {}", m.trace(&e), m.det(&e), rep.passed());

    // the largest order, from b_OL
    let frob = FrobData::new(&e, 67, RQInt::parse("-4+2*a").unwrap(), RQInt::int(67));
    let cond = compute_bol(&e, &frob).unwrap();
    let spec = make_order_spec(&e, &cond.b_ol, &frob).unwrap();
    let m = build_sigma(&e, &spec).unwrap();
    println!("p = 67, u = {}, b = {}: {m}", spec.u, spec.b_gen);
    assert!(verify_sigma(&e, &m, &spec).passed());
}
