//! Rearranges one function along all three enumerations and compares the
//! gradient norms.
//!
//! `cargo run --example rearrange_function`

use rearrange_lab::enumerations::Enumeration;
use rearrange_lab::lattice::{grad_lp, lp_norm};
use rearrange_lab::rearrangement::{ps_ratio, rearrange};
use rearrange_lab::{Exponent, LatticeFunction, LatticePoint};

fn main() -> rearrange_lab::Result<()> {
    let f = LatticeFunction::from_entries(
        2,
        [
            (0, 0, 1.0),
            (1, 0, 0.5),
            (-1, 0, 0.5),
            (0, 1, 0.5),
            (0, -1, 0.5),
        ]
        .map(|(x, y, v)| (LatticePoint::xy(x, y), v)),
    )?;
    let p = Exponent::Finite(2.0);
    for mut e in [
        Enumeration::spiral(0),
        Enumeration::wang_wang(0),
        Enumeration::l1_random(2, 7, 0)?,
    ] {
        let g = rearrange(&f, &mut e)?;
        let r = ps_ratio(&f, &mut e, p)?;
        println!("{}:", e.kind());
        for (pt, v) in g.iter() {
            println!("  {pt} -> {v}");
        }
        println!(
            "  |f|_2 = {:.4} = {:.4}, |grad f|_2 = {:.4}, |grad f*|_2 = {:.4}, squared ratio {:.4}",
            lp_norm(&f, p),
            lp_norm(&g, p),
            grad_lp(&f, p),
            grad_lp(&g, p),
            r.power_ratio.unwrap()
        );
    }
    Ok(())
}
