use rayon::prelude::*;

use super::{Fixture, TableRow};
use crate::arith::is_prime;
use crate::endo::{determine_bp, EndoContext, EndoOptions};
use crate::frobenius::{classify, recover_ap, ApRecovery, BailReason, FrobData};
use crate::jacobian::{good_reduction_check, ModelPreference, RationalCurve, WorkingModel};
use crate::orders::{compute_bol, make_order_spec};
use crate::quadratic::{RQField, RQInt};
use crate::sigma::{build_sigma, companion, verify_sigma};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveModeOptions {
    pub kmax: u32,
    pub budget: usize,
    /// Run the endomorphism step on non-ordinary rows too; such rows get the mark "!".
    pub force_nonordinary: bool,
    pub seed: u64,
}

impl Default for CurveModeOptions {
    fn default() -> Self {
        let e = EndoOptions::default();
        CurveModeOptions {
            kmax: e.kmax,
            budget: e.budget,
            force_nonordinary: false,
            seed: e.seed,
        }
    }
}

impl CurveModeOptions {
    fn endo(&self, p: u64) -> EndoOptions {
        EndoOptions {
            kmax: self.kmax,
            budget: self.budget,
            seed: self.seed ^ p,
            ..EndoOptions::default()
        }
    }
}

fn bail(mut row: TableRow, reason: BailReason, detail: impl Into<String>) -> TableRow {
    row.bail = Some(reason);
    row.error = Some(detail.into());
    row
}

fn curve_row(
    curve: &RationalCurve,
    field: &RQField,
    level: u64,
    p: u64,
    fix: Option<&Fixture>,
    opts: &CurveModeOptions,
) -> TableRow {
    let expected = fix.and_then(|f| f.row(p)).map(|r| r.a_p);
    let row = TableRow::bare(p, expected.unwrap_or(RQInt::ZERO));
    let f_total = curve.f_total();
    if p == 2 || level.is_multiple_of(p) || !good_reduction_check(&f_total, p) {
        return bail(row, BailReason::BadReduction, format!("bad reduction at {p}"));
    }
    let model = match curve.reduce(p) {
        Ok(m) => m,
        Err(e) => return bail(row, BailReason::BadReduction, e.to_string()),
    };
    let w = match model.weil_quartic() {
        Ok(w) => w,
        Err(e) => return bail(row, BailReason::Unsupported, e.to_string()),
    };
    let rec = match recover_ap(&w, field) {
        Ok(r) => r,
        Err(e) => return bail(row, BailReason::NotRm, e.to_string()),
    };
    let a_p = match (expected, rec) {
        (Some(a), r) if r.contains(a) => a,
        (Some(a), r) => {
            return bail(
                row,
                BailReason::ApMismatch,
                format!("counted {} but the fixture has {a}", r.canonical()),
            )
        }
        (None, r) => r.canonical(),
    };
    let mut row = TableRow::bare(p, a_p);
    let frob = FrobData::new(field, p, a_p, RQInt::int(p as i128));
    let class = classify(field, &frob);
    row.marks = class.marks().to_string();
    let cond = match compute_bol(field, &frob) {
        Ok(c) => c,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.fac_bol = Some(cond.factorization());
    if let Some(reason) = class.bail_reason {
        let forced = reason == BailReason::NotOrdinary
            && opts.force_nonordinary
            && matches!(rec, ApRecovery::Pair(..));
        if !forced {
            return bail(row, reason, format!("{p}: {reason}"));
        }
        row.marks.push('!');
    }
    if cond.is_trivial() {
        row.u_p = Some(RQInt::ZERO);
        row.b_p = Some(RQInt::ONE);
        row.fac_bp = Some(cond.factorization());
        row.sigma = Some(companion(field, &frob));
        return row;
    }
    let wm = match WorkingModel::new(&model, ModelPreference::Imaginary) {
        Ok(m) => m,
        Err(e) => return bail(row, BailReason::Unsupported, e.to_string()),
    };
    let mut ctx = match EndoContext::new(field, frob, wm, opts.endo(p)) {
        Ok(c) => c,
        Err(e) => return bail(row, BailReason::Unsupported, e.to_string()),
    };
    let det = match determine_bp(&cond, &mut ctx) {
        Ok(d) => d,
        Err(why) => return bail(row, why.reason, why.to_string()),
    };
    let spec = match make_order_spec(field, &det.b_p, &frob) {
        Ok(s) => s,
        Err(e) => return bail(row, BailReason::Unsupported, e.to_string()),
    };
    let sigma = match build_sigma(field, &spec) {
        Ok(s) => s,
        Err(e) => return bail(row, BailReason::Unsupported, e.to_string()),
    };
    let report = verify_sigma(field, &sigma, &spec);
    if !report.passed() {
        let msg = Error::NonIntegralEntry(report.failures.join("; ")).to_string();
        return bail(row, BailReason::Unsupported, msg);
    }
    row.u_p = Some(spec.u);
    row.b_p = Some(spec.b_gen);
    row.fac_bp = Some(field.factorization(&det.b_p));
    row.sigma = Some(sigma);
    row
}

/// Curve mode: count points on a rational model at every prime in the range and
/// determine the integral Frobenius where the caps allow.
pub fn run_curve_mode(
    curve: &RationalCurve,
    field: &RQField,
    level: u64,
    primes: std::ops::RangeInclusive<u64>,
    fix: Option<&Fixture>,
    opts: &CurveModeOptions,
) -> Vec<TableRow> {
    let ps: Vec<u64> = primes.filter(|&p| is_prime(p)).collect();
    let mut rows: Vec<TableRow> = ps
        .par_iter()
        .map(|&p| curve_row(curve, field, level, p, fix, opts))
        .collect();
    rows.sort_by_key(|r| r.p);
    rows
}
