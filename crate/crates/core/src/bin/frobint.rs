use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frobint::frobenius::FrobData;
use frobint::jacobian::RationalCurve;
use frobint::orders::{compute_bol, make_order_spec, order_spec_from_values};
use frobint::pipeline::{
    diff_against_fixture, render_table, run_curve_mode, run_eigen_mode, CurveModeOptions, Fixture,
    Format,
};
use frobint::quadratic::{RQField, RQInt};
use frobint::sigma::{build_sigma, verify_sigma};

#[derive(Parser)]
#[command(name = "frobint", about = "Integral Frobenius matrices for RM abelian surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conductors of O_E[pi] for the a_p of a fixture table.
    Eigen {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, default_value = "tsv")]
        format: Format,
        /// Compare with the fixture columns; exit 1 on any mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Full pipeline from a genus-2 model over Q.
    Curve {
        #[arg(long)]
        model: PathBuf,
        /// Inclusive range such as 2..1997.
        #[arg(long, default_value = "2..200")]
        primes: String,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Needed when no fixture is given.
        #[arg(long)]
        minpoly: Option<String>,
        #[arg(long, default_value_t = 36)]
        kmax: u32,
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[arg(long)]
        force_nonordinary: bool,
        #[arg(long, default_value = "tsv")]
        format: Format,
    },
    /// The matrix sigma_p for one a_p; u and b default to the conductor of O_L.
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        ap: String,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, default_value = "x^2+x-1")]
        minpoly: String,
    },
}

fn parse_range(s: &str) -> frobint::Result<std::ops::RangeInclusive<u64>> {
    let bad = || frobint::Error::Parse(format!("bad prime range {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.trim_start_matches('=');
    Ok(a.parse().map_err(|_| bad())?..=b.parse().map_err(|_| bad())?)
}

fn run(cli: Cli) -> frobint::Result<ExitCode> {
    match cli.cmd {
        Cmd::Eigen {
            fixture,
            format,
            check,
        } => {
            let fix = Fixture::load(&fixture)?;
            let rows = run_eigen_mode(&fix);
            print!("{}", render_table(&rows, format));
            if check {
                let report = diff_against_fixture(&rows, &fix);
                if !report.swapped_ells.is_empty() {
                    eprintln!("label swaps: {:?}", report.swapped_ells);
                }
                for m in report.mismatches() {
                    eprintln!("mismatch at p = {}: {}", m.p, m.notes.join("; "));
                }
                if !report.mismatches().is_empty() {
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Cmd::Curve {
            model,
            primes,
            level,
            fixture,
            minpoly,
            kmax,
            budget,
            force_nonordinary,
            format,
        } => {
            let text = std::fs::read_to_string(&model)
                .map_err(|e| frobint::Error::Io(format!("{}: {e}", model.display())))?;
            let curve = RationalCurve::parse(&text)?;
            let fix = fixture.map(Fixture::load).transpose()?;
            let field = match (&fix, minpoly) {
                (Some(f), _) => f.field.clone(),
                (None, Some(m)) => RQField::from_minpoly(&m)?,
                (None, None) => {
                    return Err(frobint::Error::Parse(
                        "curve mode needs --fixture or --minpoly".into(),
                    ))
                }
            };
            let opts = CurveModeOptions {
                kmax,
                budget,
                force_nonordinary,
                ..CurveModeOptions::default()
            };
            let rows = run_curve_mode(&curve, &field, level, parse_range(&primes)?, fix.as_ref(), &opts);
            print!("{}", render_table(&rows, format));
            for r in rows.iter().filter(|r| r.bail.is_some()) {
                eprintln!("{}: {}", r.p, r.error.as_deref().unwrap_or(""));
            }
        }
        Cmd::Sigma {
            ap,
            p,
            u,
            b,
            minpoly,
        } => {
            let field = RQField::from_minpoly(&minpoly)?;
            let a_p = RQInt::parse(&ap)?;
            let frob = FrobData::new(&field, p, a_p, RQInt::int(p as i128));
            let spec = match (u, b) {
                (Some(u), Some(b)) => {
                    order_spec_from_values(&field, &frob, RQInt::parse(&u)?, RQInt::parse(&b)?)?
                }
                (None, None) => make_order_spec(&field, &compute_bol(&field, &frob)?.b_ol, &frob)?,
                _ => {
                    return Err(frobint::Error::Parse(
                        "give both --u and --b, or neither".into(),
                    ))
                }
            };
            let sigma = build_sigma(&field, &spec)?;
            let report = verify_sigma(&field, &sigma, &spec);
            println!("u_p = {}, b_p = {}", spec.u, spec.b_gen);
            println!("sigma = {sigma}");
            println!(
                "trace {} det {} cofactor {}",
                ok(report.trace_ok),
                ok(report.det_ok),
                ok(report.cofactor_integral)
            );
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
