//! Checking the convergence hypotheses exactly.
//!
//!     cargo run --example validity

use horadam::{validity_check, RecurrenceParams, WeightedSelector};

fn main() -> horadam::Result<()> {
    let cases = [
        ("fibonacci", RecurrenceParams::fibonacci(), WeightedSelector::single(1)),
        ("pell, m=2", RecurrenceParams::pell(), WeightedSelector::single(2)),
        ("p=3 q=-1", RecurrenceParams::new(0, 1, 3, -1)?, WeightedSelector::single(1)),
        // D = 0: repeated root
        ("p=2 q=-1", RecurrenceParams::new(0, 1, 2, -1)?, WeightedSelector::single(1)),
        // |beta| = 2
        ("p=1 q=6", RecurrenceParams::new(0, 1, 1, 6)?, WeightedSelector::single(1)),
        // b = a*beta kills the dominant term, W_n = (-1)^n
        ("a=1 b=-1", RecurrenceParams::new(1, -1, 1, 2)?, WeightedSelector::single(1)),
    ];
    for (name, params, sel) in &cases {
        let report = validity_check(params, sel);
        println!("{name:>10}: {}", serde_json::to_string(&report).unwrap());
    }
    Ok(())
}
