use frobint::frobenius::{classify, count_to_weil, recover_ap, FrobData};
use frobint::jacobian::CurveModel;
use frobint::quadratic::{RQField, RQInt};

fn main() {
    let e = RQField::from_minpoly("x^2+x-1").unwrap();

    // from point counts on y^2 = x^5 - 5x^3 + 5x + 3 over F_41
    let c = CurveModel::from_integer(41, &[3, 5, 0, -5, 0, 1]).unwrap();
    let (n1, n2) = (c.count_points(1).unwrap(), c.count_points(2).unwrap());
    let w = count_to_weil(n1 as i64, n2 as i64, 41).unwrap();
    println!("N1 = {n1}, N2 = {n2}, Weil polynomial coefficients {:?}", w.coeffs());
    let rec = recover_ap(&w, &e).unwrap();
    println!("a_41 = {}", rec.canonical());

    for (p, ap) in [(59, "4+4*a"), (5, "2*a"), (101, "2+4*a")] {
        let d = FrobData::new(&e, p, RQInt::parse(ap).unwrap(), RQInt::int(p as i128));
        let cl = classify(&e, &d);
        println!(
            "p = {p}: disc {} ordinary {} absolutely simple {} marks {:?}",
            d.disc,
            cl.is_ordinary,
            cl.is_abs_simple,
            cl.marks()
        );
    }
}
