//! Random l1-respecting enumerations in two and three dimensions: audited
//! boundary constant, implied bound and best searched ratio.
//!
//! `cargo run --release --example dimension_check`

use rearrange_lab::search::{dimension_check, SweepConfig};
use rearrange_lab::Exponent;

fn main() -> rearrange_lab::Result<()> {
    let cfg = SweepConfig {
        budget: 20_000,
        ..SweepConfig::default()
    };
    let seeds: Vec<u64> = (1..=10).collect();
    println!("dim,enum,c_min,bound,searched,profile_verified");
    for d in [2, 3] {
        for r in dimension_check(d, &seeds, Exponent::Finite(2.0), &cfg)? {
            println!(
                "{},{},{:.3},{:.3},{:.4},{}",
                r.dim, r.kind, r.c_min, r.bound, r.searched, r.profile_verified
            );
            assert!(r.ok);
        }
    }
    Ok(())
}
