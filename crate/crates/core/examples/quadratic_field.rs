use frobint::quadratic::{Factorization, RQField, RQInt};

fn main() {
    let e = RQField::from_minpoly("x^2+x-1").unwrap();
    println!("E = Q(sqrt {}), a root of {}", e.d(), e.minpoly_string());
    println!("fundamental unit {}", e.fundamental_unit());

    let x = RQInt::parse("4+4*a").unwrap();
    let y = RQInt::parse("2+3*a").unwrap();
    println!("({x}) * ({y}) = {}", e.mul(x, y));
    println!("N({y}) = {}, Tr({y}) = {}", e.norm(y), e.trace(y));

    for ell in [2, 5, 11, 31] {
        for (ideal, label) in e.prime_above(ell) {
            println!("  {label}: HNF {:?}", ideal.hnf());
        }
    }

    let i = e.principal(RQInt::int(44));
    println!("(44) = {}", e.factorization(&i));
    let f = Factorization::parse("(2)*l11_1").unwrap();
    let j = e.ideal_of(&f).unwrap();
    println!("{f} is generated by {}", e.find_generator(&j).unwrap());

    // same field, other display basis
    let e2 = RQField::from_minpoly("x^2+3x+1").unwrap();
    let s5 = RQInt::parse("1+2*a").unwrap();
    println!("{s5} -> {}", RQField::change_display_basis(s5, &e, &e2).unwrap());
}
