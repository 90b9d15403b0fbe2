//! Pólya group orders from the exact sequence, for quadratic and
//! bi-quadratic fields given on the command line (`m` or `m n`), or a
//! default list.
//!
//! ```bash
//! cargo run --example polya_groups -- 11 105
//! ```

use polya_fields::polya::{polya_order_biquad, polya_order_quad, BiquadField, PolyaReport};

fn show(r: &PolyaReport) {
    let ram: Vec<String> = r.ramified.iter().map(|x| format!("{}^{}", x.p, x.e)).collect();
    println!(
        "{:?}: ramified {}, |H1[2]| = {}, doubled {}, |H1| = {}, |Po| = {} / {} = {}",
        r.radicands,
        ram.join(" "),
        r.h1_two_torsion_order,
        r.setzer_doubled,
        r.h1_order,
        r.edge_product,
        r.h1_order,
        r.polya_order
    );
    for g in &r.generators {
        println!("    [{}] = {}", g.label, g.class);
    }
}

pub fn run_example() -> polya_fields::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    match args[..] {
        [d] => show(&polya_order_quad(d)?),
        [m, n] => show(&polya_order_biquad(&BiquadField::new(m, n)?)?),
        _ => {
            for d in [5, 34, 65] {
                show(&polya_order_quad(d)?);
            }
            for (m, n) in [(2, 3), (5, 13), (11, 105), (2, 15)] {
                show(&polya_order_biquad(&BiquadField::new(m, n)?)?);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
