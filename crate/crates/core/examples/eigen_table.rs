use frobint::pipeline::{diff_against_fixture, render_table, run_eigen_mode, Fixture, Format};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/table1_N23.tsv");
    let fix = Fixture::load(path).unwrap();
    let rows = run_eigen_mode(&fix);
    let first: Vec<_> = rows.iter().filter(|r| r.is_interesting()).take(8).cloned().collect();
    print!("{}", render_table(&first, Format::Markdown));

    let report = diff_against_fixture(&rows, &fix);
    println!("label swaps {:?}", report.swapped_ells);
    for m in report.mismatches() {
        println!("p = {}: {}", m.p, m.notes.join("; "));
    }
}
