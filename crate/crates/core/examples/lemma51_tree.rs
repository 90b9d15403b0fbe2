//! The eight-leaf tree predicting `[N(u + 1)]` for ℚ(√qrs), checked against
//! the computed unit for every admissible triple up to a bound (default 60).

use polya_fields::families::{lemma51_leaf, lemma51_verify};

pub fn run_example() -> polya_fields::Result<()> {
    let bound = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(60);
    run_with(bound)
}

pub fn run_with(bound: u64) -> polya_fields::Result<()> {
    for (q, r, s) in [(3, 7, 5), (3, 11, 5), (7, 3, 29)] {
        let leaf: Vec<String> = lemma51_leaf(q, r, s)?.iter().map(|c| c.to_string()).collect();
        println!("(q, r, s) = ({q}, {r}, {s}): leaf {}", leaf.join(" "));
    }
    let report = lemma51_verify(bound)?;
    println!(
        "bound {bound}: {} triples, {} failures, {} half-integer units, {} cube mismatches",
        report.triples, report.failures, report.half_integer_units, report.cube_mismatches
    );
    for (key, counts) in &report.by_qrs_mod8 {
        println!(
            "    qrs = {key} mod 8: {} triples, {} in single-outcome leaves, {} failures",
            counts.triples, counts.single_outcome, counts.failures
        );
    }
    for (leaf, hits) in &report.outcomes {
        println!("    {leaf}: {hits:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
