//! Checks every case of the seven theorems on all prime quadruples up to a
//! bound (first argument, default 40) and prints one line per case.
//!
//! ```bash
//! cargo run --release --example verify_theorems -- 120
//! ```

use polya_fields::families::{verify_theorem_with, Reading, TheoremCase};
use polya_fields::quadratic::QuadCache;

pub fn run_example() -> polya_fields::Result<()> {
    let bound = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(40);
    run_with(bound)
}

pub fn run_with(bound: u64) -> polya_fields::Result<()> {
    let cache = QuadCache::new();
    let mut cases = TheoremCase::all();
    cases.extend(
        TheoremCase::all()
            .into_iter()
            .filter(|c| c.reading_sensitive())
            .map(|c| c.with_reading(Reading::Hoisted)),
    );
    for case in cases {
        let report = verify_theorem_with(&case, bound, &cache)?;
        println!(
            "{:<20} witnesses {:>5}  counterexamples {:>3}  {} ms",
            case.to_string(),
            report.witnesses.len(),
            report.counterexamples.len(),
            report.elapsed_ms
        );
        for c in report.counterexamples.iter().take(3) {
            println!("    {} has Polya order {}", c.tuple, c.report.polya_order);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
