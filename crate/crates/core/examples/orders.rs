use frobint::frobenius::FrobData;
use frobint::orders::{compute_bol, make_order_spec, order_divisors};
use frobint::quadratic::{RQField, RQInt};

fn main() {
    let e = RQField::from_minpoly("x^2+x-1").unwrap();
    for (p, ap) in [(59, "4+4*a"), (67, "-4+2*a"), (661, "-46-4*a")] {
        let frob = FrobData::new(&e, p, RQInt::parse(ap).unwrap(), RQInt::int(p as i128));
        let cond = compute_bol(&e, &frob).unwrap();
        println!("p = {p}, a_p = {ap}: b_OL = {}", cond.factorization());
        // every intermediate order O_E[pi] <= O <= O_L
        for b in order_divisors(&e, &cond) {
            let spec = make_order_spec(&e, &b, &frob).unwrap();
            println!("  b = {:<12} u = {:<8} gen {}", e.factorization(&b).to_string(), spec.u, spec.b_gen);
        }
    }
}
