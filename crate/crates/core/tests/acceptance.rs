//! Acceptance run: one line per criterion, each at its stated size and
//! tolerance. Criteria 3 and 6 are known to be unattainable as stated (see
//! the notes in the guide); they are run in full and reported, but only the
//! other criteria gate the exit status. Criterion numbers given as arguments
//! select a subset.

use curvegraph::suite;

fn main() {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let rows = suite::run(&only);
    for r in &rows {
        println!("{}", suite::format_row(r));
    }
    let gating: Vec<u8> = rows.iter().filter(|r| r.gating_failure()).map(|r| r.criterion).collect();
    if !gating.is_empty() {
        eprintln!("failing criteria: {gating:?}");
        std::process::exit(1);
    }
}
