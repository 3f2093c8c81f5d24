use frobint::jacobian::RationalCurve;
use frobint::pipeline::{render_table, run_curve_mode, CurveModeOptions, Format};
use frobint::quadratic::RQField;

fn main() {
    let curve = RationalCurve::parse("f: 3, 5, 0, -5, 0, 1").unwrap();
    let e = RQField::from_minpoly("x^2+x-1").unwrap();
    let rows = run_curve_mode(&curve, &e, 1, 2..=140, None, &CurveModeOptions::default());
    print!("{}", render_table(&rows, Format::Tsv));
    for r in rows.iter().filter(|r| r.bail.is_some()) {
        println!("# {}: {}", r.p, r.error.as_deref().unwrap_or(""));
    }
    for r in rows.iter().filter(|r| r.sigma.is_some()).take(3) {
        println!("# sigma_{} = {}", r.p, r.sigma.as_ref().unwrap());
    }
}
