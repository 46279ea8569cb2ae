//! Maps lattice edges into the comparison tree and reports the largest path
//! length and edge multiplicity up to a label bound.
//!
//! `cargo run --release --example psi_embedding -- 10000`

use rearrange_lab::comparison::ComparisonTree;
use rearrange_lab::embedding::{multiplicity_audit, path_length_audit, psi_spiral, tree_size_for};
use rearrange_lab::enumerations::KindName;

fn main() -> rearrange_lab::Result<()> {
    let label_max: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000);
    let t = ComparisonTree::z2(tree_size_for(label_max))?;

    println!("psi(1,8) = {:?}", psi_spiral(1, 8, &t)?.vertices());

    let len = path_length_audit(&t, label_max)?;
    println!(
        "spiral: {} edges, max path length {} at {:?}",
        len.edges, len.max_len, len.argmax
    );
    for kind in [KindName::Spiral, KindName::Wang] {
        let m = multiplicity_audit(kind, &t, label_max)?;
        println!(
            "{kind}: max multiplicity {} on tree edge {:?}",
            m.max_mult, m.argmax
        );
    }
    Ok(())
}
