//! Fundamental units of a few real quadratic fields, with the square class
//! of `N(u + 1)` and the `x ± 1` splitting for norm `+1` units.

use polya_fields::quadratic::{
    fundamental_unit, maarefparvar_check, pell_decomposition, represents_pm2, unit_plus_one_class,
};

pub fn run_example() -> polya_fields::Result<()> {
    for d in [2u64, 3, 5, 13, 34, 94, 105, 151, 1155] {
        let u = fundamental_unit(d)?;
        let shown = if u.denom == 2 {
            format!("({} + {} sqrt {d}) / 2", u.x, u.y)
        } else {
            format!("{} + {} sqrt {d}", u.x, u.y)
        };
        println!(
            "d = {d:>4}: u = {shown}, N(u) = {:+}, [N(u+1)] = {}, norm +-2 {}",
            u.norm,
            unit_plus_one_class(d)?,
            if represents_pm2(d)? { "yes" } else { "no" }
        );
        if u.norm == 1 {
            let m = maarefparvar_check(d)?;
            let pd = pell_decomposition(d)?;
            println!(
                "          n_k = {}, checks pass: {}, t1 a^2 - t2 b^2 = {} with (t1, t2) = ({}, {})",
                m.n_k,
                m.all_pass(),
                pd.c,
                pd.t1,
                pd.t2
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> polya_fields::Result<()> {
    run_example()
}
