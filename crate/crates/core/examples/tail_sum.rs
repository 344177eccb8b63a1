//! Certified enclosures of reciprocal tail sums.
//!
//!     cargo run --example tail_sum

use horadam::cli::render;
use horadam::{inverse_enclosure, sum_enclosure, RecurrenceParams, SumSpec, WeightedSelector};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> horadam::Result<()> {
    let eps = BigRational::new(1.into(), BigInt::from(10).pow(30));
    let fib = RecurrenceParams::fibonacci();

    for alternating in [false, true] {
        for n in [1, 4, 10] {
            let spec = SumSpec::new(fib.clone(), WeightedSelector::single(1), alternating, n)?;
            let tail = sum_enclosure(&spec, &eps)?;
            let inv = inverse_enclosure(&tail)?;
            println!(
                "{} n={n:>2}: S in [{}, {}]  1/S ~ {}  ({} terms, {:?} bound)",
                if alternating { "alt  " } else { "plain" },
                render::decimal(tail.interval.lo(), 32),
                render::decimal(tail.interval.hi(), 32),
                render::decimal(&inv.midpoint(), 20),
                tail.terms_used,
                tail.bound_kind,
            );
        }
    }

    // a weighted sum over Pell numbers: 1/(P_{2k} + P_{2k+2})
    let sel = WeightedSelector::new(2, [1u32, 1], [0, 2])?;
    let spec = SumSpec::new(RecurrenceParams::pell(), sel, false, 3)?;
    let tail = sum_enclosure(&spec, &eps)?;
    println!("pell weighted n=3: {}", render::decimal(&tail.interval.midpoint(), 32));
    Ok(())
}
