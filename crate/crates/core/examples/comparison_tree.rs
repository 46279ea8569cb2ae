//! Builds the comparison tree of the square lattice and prints its first
//! vertices, sphere sizes and a Graphviz rendering of the top of the tree.
//!
//! `cargo run --example comparison_tree > tree.dot`

use rearrange_lab::comparison::{tree_dot, ComparisonTree};

fn main() -> rearrange_lab::Result<()> {
    let t = ComparisonTree::z2(200)?;
    for n in 1..=5 {
        eprintln!("children({n}) = {:?}", t.children(n)?);
    }
    for r in 0..=5 {
        let (sphere, ball) = t.sphere_ball_sizes(r)?;
        eprintln!("r={r}: sphere {sphere}, ball {ball}");
    }
    print!("{}", tree_dot(&ComparisonTree::z2(25)?));
    Ok(())
}
