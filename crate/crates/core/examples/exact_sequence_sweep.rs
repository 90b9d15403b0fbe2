//! Sweeps all bi-quadratic fields ℚ(√m, √n) with squarefree `m < n` up to a
//! bound (default 60) and tallies Pólya group orders.

use std::collections::BTreeMap;

use polya_fields::arith::is_squarefree;
use polya_fields::polya::{polya_order_biquad_with, BiquadField};
use polya_fields::quadratic::QuadCache;

pub fn run_example() -> polya_fields::Result<()> {
    let bound = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(60);
    run_with(bound)
}

pub fn run_with(bound: u64) -> polya_fields::Result<()> {
    let cache = QuadCache::new();
    let ds: Vec<u64> = (2..=bound).filter(|&d| is_squarefree(d as u128)).collect();
    let mut orders: BTreeMap<u64, usize> = BTreeMap::new();
    let mut doubled = 0;
    for (i, &m) in ds.iter().enumerate() {
        for &n in &ds[i + 1..] {
            let r = polya_order_biquad_with(&BiquadField::new(m, n)?, &cache)?;
            *orders.entry(r.polya_order).or_default() += 1;
            doubled += usize::from(r.setzer_doubled);
        }
    }
    println!("|Po| distribution for m < n <= {bound}: {orders:?}");
    println!("fields where H1 is twice its 2-torsion: {doubled}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
