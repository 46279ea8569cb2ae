//! Both sides of the level-set formula for the gradient energy, in exact
//! rational arithmetic.
//!
//! `cargo run --example coarea_identity`

use num::BigRational;
use rearrange_lab::lattice::coarea_check_exact;
use rearrange_lab::{LatticeFunction, LatticePoint};

fn main() -> rearrange_lab::Result<()> {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let f = LatticeFunction::from_entries(
        2,
        [
            (LatticePoint::xy(0, 0), q(1, 1)),
            (LatticePoint::xy(1, 0), q(2, 3)),
            (LatticePoint::xy(1, 1), q(1, 7)),
            (LatticePoint::xy(-2, 0), q(5, 9)),
        ],
    )?;
    for p in 1..=4 {
        let (lhs, rhs) = coarea_check_exact(&f, p)?;
        println!("p={p}: {lhs} = {rhs}");
        assert_eq!(lhs, rhs);
    }
    Ok(())
}
