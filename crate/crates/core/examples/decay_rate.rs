//! The error 1/S_n - B_n shrinks geometrically with ratio |beta|^m.
//!
//!     cargo run --release --example decay_rate

use horadam::cli::render;
use horadam::{decay_fit, spectral, verify_run, Family, RecurrenceParams, WeightedSelector};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> horadam::Result<()> {
    let eps = BigRational::new(1.into(), BigInt::from(10).pow(40));
    for (name, params, m) in [
        ("fibonacci", RecurrenceParams::fibonacci(), 1),
        ("fibonacci", RecurrenceParams::fibonacci(), 2),
        ("pell", RecurrenceParams::pell(), 1),
        ("p=3 q=-1", RecurrenceParams::new(0, 1, 3, -1)?, 1),
    ] {
        let rows = verify_run(&params, &WeightedSelector::single(m), Family::PlainGeneral, 6..=20, &eps)?;
        let fit = decay_fit(&rows, &spectral(&params)?, m)?;
        println!(
            "{name:>9} m={m}: fitted {}  predicted {}  r^2 {}",
            render::decimal(&fit.ratio_estimate, 6),
            render::decimal(&fit.predicted_ratio.midpoint(), 6),
            render::decimal(&fit.r_squared, 6),
        );
    }
    Ok(())
}
