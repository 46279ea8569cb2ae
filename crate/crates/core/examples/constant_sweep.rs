//! Best found ratios next to the proven bounds over a grid of exponents,
//! as CSV.
//!
//! `cargo run --release --example constant_sweep > sweep.csv`

use rearrange_lab::enumerations::KindName;
use rearrange_lab::search::{constant_sweep, emit_plot_data, SweepConfig};
use rearrange_lab::Exponent;

fn main() -> rearrange_lab::Result<()> {
    let ps: Vec<Exponent> = ["1", "1.25", "1.5", "2", "3", "5", "inf"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let cfg = SweepConfig {
        budget: 200_000,
        ..SweepConfig::default()
    };
    let rows = constant_sweep(
        &[KindName::Spiral, KindName::Wang, KindName::L1rand],
        &ps,
        &cfg,
    )?;
    print!("{}", emit_plot_data(&rows));
    Ok(())
}
