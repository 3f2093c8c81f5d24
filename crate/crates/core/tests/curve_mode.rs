use frobint::frobenius::{BailReason, FrobData};
use frobint::jacobian::{Jacobian, ModelPreference, RationalCurve, WorkingModel};
use frobint::orders::order_spec_from_values;
use frobint::pipeline::{render_table, run_curve_mode, CurveModeOptions, Format, TableRow};
use frobint::quadratic::{RQField, RQInt};
use frobint::sigma::verify_sigma;

// y^2 = x^5 - 5x^3 + 5x + 3; multiplication by sqrt5 is defined over F_p only for p = +-1 mod 5
fn family() -> (RationalCurve, RQField) {
    let curve = RationalCurve::parse("f: 3, 5, 0, -5, 0, 1").unwrap();
    (curve, RQField::from_minpoly("x^2+x-1").unwrap())
}

fn rows() -> Vec<TableRow> {
    let (curve, field) = family();
    run_curve_mode(&curve, &field, 1, 2..=200, None, &CurveModeOptions::default())
}

#[test]
fn rows_with_data_are_consistent() {
    let (_, field) = family();
    let rows = rows();
    let mut with_sigma = 0;
    let mut proper = 0;
    for r in &rows {
        let Some(sigma) = &r.sigma else {
            assert!(r.u_p.is_none() && r.b_p.is_none() && r.fac_bp.is_none(), "p={}", r.p);
            continue;
        };
        with_sigma += 1;
        let (u, b) = (r.u_p.unwrap(), r.b_p.unwrap());
        let frob = FrobData::new(&field, r.p, r.a_p, RQInt::int(r.p as i128));
        let spec = order_spec_from_values(&field, &frob, u, b).unwrap();
        assert!(verify_sigma(&field, sigma, &spec).passed(), "p={}", r.p);
        let fb = r.fac_bp.as_ref().unwrap();
        assert_eq!(fb, &field.factorization(&field.principal(b)));
        assert!(fb.divides(r.fac_bol.as_ref().unwrap()), "p={}", r.p);
        if !r.fac_bol.as_ref().unwrap().is_unit() {
            proper += 1;
        }
    }
    assert!(with_sigma >= 10, "{with_sigma}");
    assert!(proper >= 2, "{proper}");
}

#[test]
fn inert_primes_are_not_rm() {
    for r in rows() {
        if r.p == 2 || r.p == 5 || r.bail == Some(BailReason::BadReduction) {
            continue;
        }
        let inert = r.p % 5 == 2 || r.p % 5 == 3;
        assert_eq!(inert, r.bail == Some(BailReason::NotRm), "p={}", r.p);
    }
}

#[test]
fn recovered_ap_matches_divisor_count() {
    let (curve, field) = family();
    for r in rows().iter().filter(|r| r.p < 32 && r.fac_bol.is_some()) {
        let model = curve.reduce(r.p).unwrap();
        let wm = WorkingModel::new(&model, ModelPreference::Imaginary).unwrap();
        let count = Jacobian::new(&wm, 1).enumerate().len() as i128;
        let h1 = field.sub(RQInt::int(1 + r.p as i128), r.a_p);
        assert_eq!(count, field.norm(h1), "p={}", r.p);
    }
}

#[test]
fn bailed_rows_render_dashes() {
    let rows = rows();
    let text = render_table(&rows, Format::Tsv);
    assert_eq!(text, render_table(&self::rows(), Format::Tsv));
    for r in rows.iter().filter(|r| r.bail.is_some()) {
        let line = text.lines().find(|l| l.split('\t').next() == Some(&r.p.to_string())).unwrap();
        let cells: Vec<&str> = line.split('\t').collect();
        assert_eq!(cells[2], "-", "{line}");
        assert_eq!(cells[3], "-", "{line}");
    }
}
