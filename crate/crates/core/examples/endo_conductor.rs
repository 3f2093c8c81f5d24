use frobint::endo::{determine_bp, EndoContext, EndoOptions, Verdict};
use frobint::frobenius::{detect_field_d, recover_ap, FrobData};
use frobint::jacobian::{CurveModel, ModelPreference, WorkingModel};
use frobint::orders::compute_bol;
use frobint::quadratic::{RQField, RQInt};

fn main() {
    for (p, f) in [(11u64, [3i128, 2, 2, 4, 0, 1]), (11, [3, 5, 6, 10, 0, 1])] {
        let c = CurveModel::from_integer(p, &f).unwrap();
        let w = c.weil_quartic().unwrap();
        let e = RQField::standard(detect_field_d(&w).unwrap()).unwrap();
        let a_p = recover_ap(&w, &e).unwrap().canonical();
        let frob = FrobData::new(&e, p, a_p, RQInt::int(p as i128));
        let cond = compute_bol(&e, &frob).unwrap();
        let model = WorkingModel::new(&c, ModelPreference::Imaginary).unwrap();
        let mut ctx = EndoContext::new(&e, frob, model, EndoOptions::default()).unwrap();
        let det = determine_bp(&cond, &mut ctx).unwrap();
        println!(
            "p = {p}, f = {f:?}, E = Q(sqrt {}), a_p = {a_p}: b_OL = {}, b_p = {}, u_p = {}",
            e.d(),
            cond.factorization(),
            e.factorization(&det.b_p),
            det.u_p
        );
        for l in &det.levels {
            println!("  {}: exponent {} of {}", e.factorization(&l.prime), l.exp, l.max_exp);
        }
        for (b, v) in &det.verdicts {
            let tag = match v {
                Verdict::Member => "member".to_string(),
                Verdict::NonMember => "not a member".to_string(),
                Verdict::Inconclusive(why) => why.to_string(),
            };
            println!("  (pi - u)/b for b = {}: {tag}", e.factorization(b));
        }
    }
}
