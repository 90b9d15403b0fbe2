//! Elimination chain, resultant certificates and the prime search for the
//! cubic/quintic compositum. The optional argument is the search limit
//! (default 10^7).
//!
//! ```bash
//! cargo run --release --example compositum_search -- 100000000
//! ```

use polya_fields::compositum::{
    candidate_search, common_prime_certificate, common_roots_mod, compositum_disc,
    gcd_chain_replay, lehmer_f1, lehmer_f2, shanks_core, DEFAULT_CONGRUENCES,
};

pub fn run_example() -> polya_fields::Result<()> {
    let limit = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10_000_000);
    run_with(limit)
}

pub fn run_with(limit: u64) -> polya_fields::Result<()> {
    for step in gcd_chain_replay() {
        println!("{} = {}  [{}]", step.expression, step.result, if step.holds { "ok" } else { "FAILS" });
    }
    let core = shanks_core();
    for (name, other, m) in [("f1", lehmer_f1(), 181), ("f2", lehmer_f2(), 541)] {
        println!(
            "common primes of core and {name}: {:?}, common roots mod {m}: {:?}",
            common_prime_certificate(&core, &other)?,
            common_roots_mod(&core, &other, m)
        );
    }

    let report = candidate_search(limit, &DEFAULT_CONGRUENCES)?;
    println!(
        "p = {} mod {}, p <= {}: {} terms, {} primes, {} rejected by gcd, {} by small primes {:?}",
        report.residue,
        report.modulus,
        limit,
        report.scanned,
        report.primes,
        report.rejected_gcd,
        report.rejected_zylinski,
        report.zylinski_offenders
    );
    if report.empty {
        println!("no qualifying prime up to {limit}");
    }
    for hit in &report.hits {
        let disc = compositum_disc(hit.p)?;
        println!(
            "p = {}: core {} (squarefree {:?}), compositum discriminant has {} digits",
            hit.p, hit.s_core, hit.core_squarefree, disc.digits
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
