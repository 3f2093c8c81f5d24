//! Table pipeline: fixtures, eigenvalue mode, curve mode, rendering and regression diffs.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use rayon::prelude::*;

use crate::frobenius::{classify, BailReason, FrobData};
use crate::orders::{basis_conditions, compute_bol, order_spec_from_values};
use crate::quadratic::{Factorization, RQField, RQInt};
use crate::sigma::{build_sigma, companion, verify_sigma, SigmaMatrix};
use crate::{Error, Result};

mod curve;
pub use curve::{run_curve_mode, CurveModeOptions};

/// One transcribed table row; `None` where the table prints a dash.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub p: u64,
    pub a_p: RQInt,
    pub u_p: Option<RQInt>,
    pub b_p: Option<RQInt>,
    pub fac_bp: Option<Factorization>,
    pub fac_bol: Option<Factorization>,
    pub marks: String,
}

impl FixtureRow {
    pub fn has_data(&self) -> bool {
        self.b_p.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub level: u64,
    pub field: RQField,
    pub rows: Vec<FixtureRow>,
}

fn opt<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Option<T>> {
    match s.trim() {
        "-" | "" => Ok(None),
        t => f(t).map(Some),
    }
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let mut level = None;
        let mut minpoly = None;
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim_end();
            if line.trim().is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some((k, v)) = h.split_once(':') {
                    match k.trim() {
                        "level" => {
                            level = Some(v.trim().parse().map_err(|_| {
                                Error::Parse(format!("bad level {:?}", v.trim()))
                            })?)
                        }
                        "minpoly" => minpoly = Some(v.trim().to_string()),
                        _ => {}
                    }
                }
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols[0] == "p" {
                continue;
            }
            if cols.len() != 7 {
                return Err(Error::Parse(format!("expected 7 columns: {line:?}")));
            }
            let p = cols[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime {:?}", cols[0])))?;
            rows.push(FixtureRow {
                p,
                a_p: RQInt::parse(cols[1])?,
                u_p: opt(cols[2], RQInt::parse)?,
                b_p: opt(cols[3], RQInt::parse)?,
                fac_bp: opt(cols[4], Factorization::parse)?,
                fac_bol: opt(cols[5], Factorization::parse)?,
                marks: if cols[6] == "-" {
                    String::new()
                } else {
                    cols[6].to_string()
                },
            });
        }
        let level = level.ok_or_else(|| Error::Parse("missing level header".into()))?;
        let minpoly = minpoly.ok_or_else(|| Error::Parse("missing minpoly header".into()))?;
        let field = RQField::from_minpoly(&minpoly)?;
        rows.sort_by_key(|r| r.p);
        Ok(Fixture { level, field, rows })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Fixture> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Fixture::parse(&text)
    }

    pub fn row(&self, p: u64) -> Option<&FixtureRow> {
        self.rows.iter().find(|r| r.p == p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub p: u64,
    pub a_p: RQInt,
    pub u_p: Option<RQInt>,
    pub b_p: Option<RQInt>,
    pub fac_bp: Option<Factorization>,
    pub fac_bol: Option<Factorization>,
    pub marks: String,
    pub bail: Option<BailReason>,
    pub sigma: Option<SigmaMatrix>,
    pub error: Option<String>,
}

impl TableRow {
    fn bare(p: u64, a_p: RQInt) -> TableRow {
        TableRow {
            p,
            a_p,
            u_p: None,
            b_p: None,
            fac_bp: None,
            fac_bol: None,
            marks: String::new(),
            bail: None,
            sigma: None,
            error: None,
        }
    }

    /// Rows with a proper conductor, the ones the tables list.
    pub fn is_interesting(&self) -> bool {
        self.fac_bol.as_ref().is_some_and(|f| !f.is_unit())
    }
}

fn eigen_row(field: &RQField, p: u64, a_p: RQInt) -> TableRow {
    let mut row = TableRow::bare(p, a_p);
    let frob = FrobData::new(field, p, a_p, RQInt::int(p as i128));
    let class = classify(field, &frob);
    row.marks = class.marks().to_string();
    row.bail = class.bail_reason;
    let cond = match compute_bol(field, &frob) {
        Ok(c) => c,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.fac_bol = Some(cond.factorization());
    if cond.is_trivial() {
        row.u_p = Some(RQInt::ZERO);
        row.b_p = Some(RQInt::ONE);
        row.fac_bp = Some(Factorization::unit());
        row.sigma = Some(companion(field, &frob));
    }
    row
}

/// Eigenvalue mode: conductor of O_E[pi] and classification marks for every fixture row.
pub fn run_eigen_mode(fix: &Fixture) -> Vec<TableRow> {
    let field = &fix.field;
    let mut rows: Vec<TableRow> = fix
        .rows
        .par_iter()
        .map(|r| eigen_row(field, r.p, r.a_p))
        .collect();
    rows.sort_by_key(|r| r.p);
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

const HEADER: [&str; 7] = ["p", "a_p", "u_p", "b_p", "Fac(b_p)", "Fac(b_OL)", "marks"];

fn cells(r: &TableRow) -> [String; 7] {
    let dash = || "-".to_string();
    let s = |x: &Option<RQInt>| x.map_or_else(dash, |v| v.to_string());
    let f = |x: &Option<Factorization>| x.as_ref().map_or_else(dash, |v| v.to_string());
    let bad = matches!(
        r.bail,
        Some(BailReason::BadReduction | BailReason::NotRm | BailReason::ApMismatch)
    );
    [
        r.p.to_string(),
        if bad { dash() } else { r.a_p.to_string() },
        s(&r.u_p),
        s(&r.b_p),
        f(&r.fac_bp),
        f(&r.fac_bol),
        if r.marks.is_empty() {
            dash()
        } else {
            r.marks.clone()
        },
    ]
}

pub fn render_table(rows: &[TableRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Tsv => {
            out.push_str(&HEADER.join("\t"));
            out.push('\n');
            for r in rows {
                out.push_str(&cells(r).join("\t"));
                out.push('\n');
            }
        }
        Format::Markdown => {
            let _ = writeln!(out, "| {} |", HEADER.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(HEADER.len()));
            for r in rows {
                let _ = writeln!(out, "| {} |", cells(r).join(" | "));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Exact,
    Conjugate,
    LabelSwap,
    UClass,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exact => "exact",
            Verdict::Conjugate => "conjugate",
            Verdict::LabelSwap => "label-swap",
            Verdict::UClass => "u-class",
            Verdict::Mismatch => "mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowDiff {
    pub p: u64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    /// Split residue characteristics whose two prime labels are exchanged table-wide.
    pub swapped_ells: Vec<u64>,
    pub rows: Vec<RowDiff>,
}

impl DiffReport {
    pub fn mismatches(&self) -> Vec<&RowDiff> {
        self.rows
            .iter()
            .filter(|r| r.verdict == Verdict::Mismatch)
            .collect()
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }
}

fn restrict(f: &Factorization, ell: u64) -> Factorization {
    Factorization::new(f.parts().iter().filter(|(l, _)| l.ell == ell).copied().collect())
}

/// Per-l orientation of split labels that makes every row agree, when one exists.
fn choose_swaps<'a>(pairs: impl Iterator<Item = (&'a Factorization, &'a Factorization)> + Clone) -> Vec<u64> {
    let mut ells: Vec<u64> = pairs
        .clone()
        .flat_map(|(a, b)| a.split_ells().into_iter().chain(b.split_ells()))
        .collect();
    ells.sort();
    ells.dedup();
    ells.into_iter()
        .filter(|&ell| {
            let agree = |swap: bool| {
                pairs.clone().all(|(c, e)| {
                    let c = restrict(c, ell);
                    let c = if swap { c.swap_ell(ell) } else { c };
                    c == restrict(e, ell)
                })
            };
            !agree(false) && agree(true)
        })
        .collect()
}

fn apply_swaps(f: &Factorization, swaps: &[u64]) -> Factorization {
    swaps.iter().fold(f.clone(), |acc, &ell| acc.swap_ell(ell))
}

/// Compare computed rows with the fixture's expected columns.
pub fn diff_against_fixture(rows: &[TableRow], fix: &Fixture) -> DiffReport {
    let field = &fix.field;
    let matched: Vec<(&TableRow, &FixtureRow)> = rows
        .iter()
        .filter_map(|r| fix.row(r.p).map(|e| (r, e)))
        .collect();
    let fac_pairs = matched.iter().flat_map(|(r, e)| {
        let bol = r.fac_bol.as_ref().zip(e.fac_bol.as_ref());
        let bp = r.fac_bp.as_ref().zip(e.fac_bp.as_ref());
        bol.into_iter().chain(bp)
    });
    let swapped_ells = choose_swaps(fac_pairs);
    let mut out = Vec::new();
    for r in rows {
        let Some(e) = fix.row(r.p) else {
            out.push(RowDiff {
                p: r.p,
                verdict: Verdict::Mismatch,
                notes: vec!["row absent from fixture".into()],
            });
            continue;
        };
        let mut verdict = Verdict::Exact;
        let mut notes = Vec::new();
        let mut worsen = |v: Verdict, note: String, verdict: &mut Verdict| {
            *verdict = (*verdict).max(v);
            notes.push(note);
        };
        if r.a_p != e.a_p {
            if field.conj(r.a_p) == e.a_p {
                worsen(Verdict::Conjugate, format!("a_p {} is the conjugate", r.a_p), &mut verdict);
            } else {
                worsen(Verdict::Mismatch, format!("a_p {} != {}", r.a_p, e.a_p), &mut verdict);
            }
        }
        for (name, c, x) in [
            ("Fac(b_OL)", &r.fac_bol, &e.fac_bol),
            ("Fac(b_p)", &r.fac_bp, &e.fac_bp),
        ] {
            match (c, x) {
                (Some(c), Some(x)) if c == x => {}
                (Some(c), Some(x)) if apply_swaps(c, &swapped_ells) == *x => {
                    worsen(Verdict::LabelSwap, format!("{name} {c} relabels to {x}"), &mut verdict)
                }
                (Some(c), Some(x)) => {
                    worsen(Verdict::Mismatch, format!("{name} {c} != {x}"), &mut verdict)
                }
                (None, None) => {}
                // curve mode may leave dashes on rows beyond its caps; eigen mode leaves u_p, b_p blank
                (None, Some(_)) if name == "Fac(b_p)" => {}
                (c, x) => worsen(
                    Verdict::Mismatch,
                    format!("{name} presence differs: {c:?} vs {x:?}"),
                    &mut verdict,
                ),
            }
        }
        if let (Some(u), Some(ue), Some(b)) = (r.u_p, e.u_p, r.b_p) {
            if u != ue {
                let same_ideal = e.b_p.is_some_and(|be| {
                    field.principal(be) == field.principal(b)
                });
                if same_ideal && field.divides(b, field.sub(u, ue)) {
                    worsen(Verdict::UClass, format!("u {u} = {ue} mod ({b})"), &mut verdict);
                } else {
                    worsen(Verdict::Mismatch, format!("u {u} != {ue}"), &mut verdict);
                }
            }
        }
        if let (Some(b), Some(be)) = (r.b_p, e.b_p) {
            if field.principal(b) != field.principal(be) && r.fac_bp == e.fac_bp {
                // same factorization string but different ideal cannot happen; keep the check honest
                worsen(Verdict::Mismatch, format!("b_p ({b}) != ({be})"), &mut verdict);
            }
        }
        out.push(RowDiff {
            p: r.p,
            verdict,
            notes,
        });
    }
    DiffReport {
        swapped_ells,
        rows: out,
    }
}

/// Checks on one printed row with (u_p, b_p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedRowCheck {
    pub p: u64,
    pub basis_ok: bool,
    pub divides_computed_bol: bool,
    pub sigma_ok: bool,
    pub cofactor_ok: bool,
    /// printed Fac(b_p) names the ideal (b_p), up to label orientation
    pub fac_bp_consistent: bool,
    /// printed Fac(b_p) divides printed Fac(b_OL)
    pub printed_divides: bool,
    pub notes: Vec<String>,
}

impl PrintedRowCheck {
    pub fn passed(&self) -> bool {
        self.basis_ok && self.divides_computed_bol && self.sigma_ok && self.cofactor_ok
    }
}

/// Validate every printed (u_p, b_p): basis conditions, divisibility into the computed
/// conductor, and sigma_p with its cofactor.
pub fn check_printed_rows(fix: &Fixture) -> Vec<PrintedRowCheck> {
    let field = &fix.field;
    fix.rows
        .par_iter()
        .filter_map(|r| {
            let (u, b) = (r.u_p?, r.b_p?);
            let frob = FrobData::new(field, r.p, r.a_p, RQInt::int(r.p as i128));
            let bi = field.principal(b);
            let mut notes = Vec::new();
            let basis_ok = basis_conditions(field, &frob, &bi, u);
            let divides_computed_bol = match compute_bol(field, &frob) {
                Ok(c) => {
                    let ok = field.ideal_divides(&bi, &c.b_ol);
                    if !ok {
                        notes.push(format!("({b}) does not divide {}", c.factorization()));
                    }
                    ok
                }
                Err(e) => {
                    notes.push(e.to_string());
                    false
                }
            };
            let (sigma_ok, cofactor_ok) = match order_spec_from_values(field, &frob, u, b)
                .and_then(|spec| build_sigma(field, &spec).map(|m| (spec, m)))
            {
                Ok((spec, m)) => {
                    let rep = verify_sigma(field, &m, &spec);
                    notes.extend(rep.failures.iter().cloned());
                    (rep.trace_ok && rep.det_ok, rep.cofactor_integral)
                }
                Err(e) => {
                    notes.push(e.to_string());
                    (false, false)
                }
            };
            let fac = field.factorization(&bi);
            let fac_bp_consistent = r.fac_bp.as_ref().is_some_and(|x| equal_up_to_swaps(&fac, x));
            if !fac_bp_consistent {
                notes.push(format!("({b}) factors as {fac}"));
            }
            let printed_divides = match (&r.fac_bp, &r.fac_bol) {
                (Some(x), Some(y)) => x.divides(y),
                _ => false,
            };
            if !printed_divides {
                notes.push("printed Fac(b_p) does not divide printed Fac(b_OL)".into());
            }
            Some(PrintedRowCheck {
                p: r.p,
                basis_ok,
                divides_computed_bol,
                sigma_ok,
                cofactor_ok,
                fac_bp_consistent,
                printed_divides,
                notes,
            })
        })
        .collect()
}

/// a equals b after exchanging the split labels of some set of residue characteristics.
pub fn equal_up_to_swaps(a: &Factorization, b: &Factorization) -> bool {
    let ells = a.split_ells();
    (0u32..1 << ells.len()).any(|mask| {
        let chosen: Vec<u64> = (0..ells.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ells[i])
            .collect();
        apply_swaps(a, &chosen) == *b
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Primes p of rows with data whose printed Fac(b_p) is divisible by `label`.
fn rows_divisible(fix: &Fixture, label: &str) -> Vec<u64> {
    let f = Factorization::parse(label).expect("label");
    fix.rows
        .iter()
        .filter(|r| r.has_data() && r.fac_bp.as_ref().is_some_and(|x| f.divides(x)))
        .map(|r| r.p)
        .collect()
}

/// Rows with data and p = 1 mod m lacking `label` in Fac(b_p).
pub fn congruence_exceptions(fix: &Fixture, m: u64, label: &str) -> (usize, Vec<u64>) {
    let with = rows_divisible(fix, label);
    let sel: Vec<u64> = fix
        .rows
        .iter()
        .filter(|r| r.has_data() && r.p % m == 1)
        .map(|r| r.p)
        .collect();
    let bad = sel.iter().copied().filter(|p| !with.contains(p)).collect();
    (sel.len(), bad)
}

/// Observed patterns on the tables of levels 23, 125 and 133.
pub fn pattern_checks(fix: &Fixture) -> Vec<PatternCheck> {
    let mut out = Vec::new();
    let mut cong = |m: u64, label: &str, name: &str| {
        let (n, bad) = congruence_exceptions(fix, m, label);
        out.push(PatternCheck {
            name: name.to_string(),
            passed: bad.is_empty() && n > 0,
            detail: format!("{n} rows with p = 1 mod {m}; exceptions {bad:?}"),
        });
    };
    match fix.level {
        23 => cong(11, "l11_1", "p = 1 mod 11 implies l11_1 | b_p"),
        125 => cong(5, "l5", "p = 1 mod 5 implies l5 | b_p"),
        _ => {}
    }
    let expected: &[u64] = match fix.level {
        125 => &[887, 1657, 1699],
        133 => &[839, 941, 1663, 1783, 1789],
        _ => &[],
    };
    if !expected.is_empty() {
        let got = rows_divisible(fix, "(2)");
        let mut detail = format!("found {got:?}, expected {expected:?}");
        for p in got.iter().filter(|p| !expected.contains(p)) {
            let marks = fix.row(*p).map(|r| r.marks.as_str()).unwrap_or("");
            detail.push_str(&format!("; extra {p} marked {marks:?}"));
        }
        out.push(PatternCheck {
            name: "(2) | b_p exactly on the listed primes".into(),
            passed: got == expected,
            detail,
        });
    }
    out
}

/// Summary of a mod-23 variant of the level-23 congruence, for reporting only.
pub fn mod23_variant(fix: &Fixture) -> String {
    let (n, bad) = congruence_exceptions(fix, 23, "l11_1");
    let (n11, bad11) = congruence_exceptions(fix, 11, "l11_1");
    format!(
        "p = 1 mod 23: {n} rows, {} without l11_1; p = 1 mod 11: {n11} rows, {} without",
        bad.len(),
        bad11.len()
    )
}

/// Group rows by the printed and computed conductor for quick summaries.
pub fn conductor_histogram(rows: &[TableRow]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for r in rows {
        if let Some(f) = &r.fac_bol {
            *m.entry(f.to_string()).or_insert(0) += 1;
        }
    }
    m
}
