//! Wang-Wang labels, their prefix boundary sizes, and a brute-force check
//! that those sizes are minimal for small sets.
//!
//! `cargo run --release --example wang_wang_profile`

use rearrange_lab::enumerations::{brute_force_profile, prefix_profile, Enumeration};

fn main() -> rearrange_lab::Result<()> {
    let e = Enumeration::wang_wang(13);
    for (k, p) in e.points().iter().enumerate() {
        println!("{:>3} {p}", k + 1);
    }
    let profile = prefix_profile(&e, 13)?;
    println!("prefix boundaries {profile:?}");

    let brute = brute_force_profile(2, 10, 3)?;
    println!("minimal boundaries {:?}", &brute.values()[1..]);
    assert_eq!(brute.values()[1..], profile[..10]);
    Ok(())
}
