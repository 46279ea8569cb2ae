//! Prints the spiral labels on a small square, the way they sit in the plane.
//!
//! `cargo run --example spiral_labels -- 3`

use rearrange_lab::enumerations::spiral_index;
use rearrange_lab::LatticePoint;

fn main() -> rearrange_lab::Result<()> {
    let r: i64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    for y in (-r..=r).rev() {
        let row = (-r..=r)
            .map(|x| spiral_index(&LatticePoint::xy(x, y)).map(|k| format!("{k:>4}")))
            .collect::<rearrange_lab::Result<Vec<_>>>()?;
        println!("{}", row.concat());
    }
    Ok(())
}
