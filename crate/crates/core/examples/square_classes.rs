//! Square classes of ℚ*/(ℚ*)² as GF(2) vectors: spans and membership.

use polya_fields::squareclass::{span, SquareClass};

pub fn run_example() -> polya_fields::Result<()> {
    let gens = [2u128, 11, 105, 1155, 22, 21]
        .iter()
        .map(|&n| SquareClass::of(n))
        .collect::<polya_fields::Result<Vec<_>>>()?;
    let group = span(&gens);
    let basis: Vec<String> = group.basis().iter().map(|c| c.to_string()).collect();
    println!("span has order {} with basis {}", group.order(), basis.join(" "));
    for n in [3u128, 6, 13, 84] {
        let c = SquareClass::of(n)?;
        println!("{c} in span: {}", group.contains(&c));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
