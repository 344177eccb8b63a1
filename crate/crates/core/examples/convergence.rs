//! Convergence table: enclosed 1/S_n against the estimate, rows computed
//! on several threads.
//!
//!     cargo run --release --example convergence

use horadam::cli::render;
use horadam::{verify_run_concurrent, Family, RecurrenceParams, WeightedSelector};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> horadam::Result<()> {
    let eps = BigRational::new(1.into(), BigInt::from(10).pow(30));
    let rows = verify_run_concurrent(
        &RecurrenceParams::pell(),
        &WeightedSelector::single(1),
        Family::PlainGeneral,
        2..=20,
        &eps,
        4,
    )?;
    println!("{:>3} {:>28} {:>10} {:>24}", "n", "1/S_n", "B_n", "1/S_n - B_n");
    for row in &rows {
        println!(
            "{:>3} {:>28} {:>10} {:>24}",
            row.n,
            render::decimal(&row.inverse.midpoint(), 20),
            render::estimate(&row.estimate, 0),
            render::decimal(&row.error.midpoint(), 20),
        );
    }
    Ok(())
}
