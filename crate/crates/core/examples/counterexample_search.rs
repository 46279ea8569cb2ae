//! Searches for a five-point function whose spiral rearrangement increases
//! the Dirichlet energy, then checks the result with the exact p = 2 oracle.
//!
//! `cargo run --release --example counterexample_search -- [budget] [seed]`

use rearrange_lab::enumerations::Enumeration;
use rearrange_lab::search::{
    best_connected_support_p2, counterexample_search, rayleigh_oracle_p2, SearchConfig,
};
use rearrange_lab::{Exponent, LatticePoint};

fn main() -> rearrange_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let budget = args
        .next()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let mut e = Enumeration::spiral(0);
    let cfg = SearchConfig::new(Exponent::Finite(2.0), 5, budget, seed);
    let report = counterexample_search(&mut e, &cfg)?;
    let best = report.best_function()?;
    println!(
        "searched squared ratio {:.9} in {} ms",
        report.power_ratio.unwrap(),
        report.wall_ms
    );
    for (p, v) in best.iter() {
        println!("  f{p} = {v:.6}");
    }

    let support: Vec<LatticePoint> = best.support().cloned().collect();
    let oracle = rayleigh_oracle_p2(&mut e, &support)?;
    println!("oracle on the same support   {:.9}", oracle.quotient);

    let (shape, top) = best_connected_support_p2(&mut e, 5)?;
    let shape: Vec<String> = shape.iter().map(ToString::to_string).collect();
    println!(
        "best connected five-point support {} with {:.9}",
        shape.join(" "),
        top.quotient
    );
    Ok(())
}
