//! Sorted values on the comparison tree never have a larger gradient than
//! the original function. Checks this on random functions.
//!
//! `cargo run --release --example comparison_lemma`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rearrange_lab::comparison::{comparison_lemma_check, ComparisonTree};
use rearrange_lab::{Exponent, LatticeFunction, LatticePoint};

fn main() -> rearrange_lab::Result<()> {
    let t = ComparisonTree::z2(400)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tightest: f64 = 0.0;
    for _ in 0..2000 {
        let mut f = LatticeFunction::zero(2);
        while f.is_empty() {
            let pts: Vec<_> = (0..rng.gen_range(1..20))
                .map(|_| {
                    (
                        LatticePoint::xy(rng.gen_range(-3..=3), rng.gen_range(-3..=3)),
                        rng.gen_range(0.01..1.0),
                    )
                })
                .collect::<std::collections::BTreeMap<_, _>>()
                .into_iter()
                .collect();
            f = LatticeFunction::from_entries(2, pts)?;
        }
        for p in [
            Exponent::Finite(1.0),
            Exponent::Finite(2.0),
            Exponent::Infinity,
        ] {
            let (tree, lattice) = comparison_lemma_check(&f, &t, p)?;
            assert!(tree <= lattice * (1.0 + 1e-9));
            tightest = tightest.max(tree / lattice);
        }
    }
    println!("largest tree/lattice gradient ratio: {tightest:.6}");
    Ok(())
}
