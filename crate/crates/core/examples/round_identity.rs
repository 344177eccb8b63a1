//! Where the integer estimate becomes the nearest integer to 1/S_n.
//!
//!     cargo run --release --example round_identity

use horadam::{round_identity_scan, Family, RecurrenceParams, WeightedSelector};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> horadam::Result<()> {
    let eps = BigRational::new(1.into(), BigInt::from(10).pow(30));
    for (name, params) in [
        ("fibonacci", RecurrenceParams::fibonacci()),
        ("pell", RecurrenceParams::pell()),
        ("p=3 q=-1", RecurrenceParams::new(0, 1, 3, -1)?),
    ] {
        for family in [Family::PlainGeneral, Family::AltGeneral] {
            let scan = round_identity_scan(&params, &WeightedSelector::single(1), family, 20, &eps)?;
            let onset = scan.onset.map_or("never".to_string(), |n| format!("n >= {n}"));
            println!("{name:>9} {family:<13}: holds for {onset} (checked up to {})", scan.checked_to);
        }
    }
    Ok(())
}
