//! Exact roots and Binet coefficients in Q(sqrt D).
//!
//!     cargo run --example spectral

use horadam::{spectral, sqrt_enclosure, w_fast, RecurrenceParams};
use num_rational::BigRational;

fn main() -> horadam::Result<()> {
    let eps = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(20));
    for params in [
        RecurrenceParams::fibonacci(),
        RecurrenceParams::pell(),
        RecurrenceParams::new(0, 1, 3, -1)?,
        RecurrenceParams::new(1, 2, 2, 0)?,
    ] {
        let sp = spectral(&params)?;
        println!("{params}  D = {}", params.discriminant());
        println!("  alpha = {}  in {}", sp.alpha, sp.alpha.enclose(&eps));
        println!("  beta  = {}", sp.beta);
        println!("  c1 = {}  c2 = {}", sp.c1, sp.c2);

        // Binet agrees with the recurrence exactly
        for n in [0, 1, 7, 30] {
            let b = sp.binet(n);
            assert!(b.is_rational());
            assert_eq!(b.x().to_integer(), w_fast(&params, n));
        }
    }
    println!("sqrt(5) in {}", sqrt_enclosure(&5.into(), &eps));
    Ok(())
}
