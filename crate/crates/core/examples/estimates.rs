//! The four closed-form estimates for 1/S_n.
//!
//!     cargo run --example estimates

use horadam::cli::render;
use horadam::{estimate, Family, RecurrenceParams, WeightedSelector};

fn main() -> horadam::Result<()> {
    let fib = RecurrenceParams::fibonacci();
    let single = WeightedSelector::single(1);
    let block = WeightedSelector::block(2, 2);

    println!("{:>3} {:>14} {:>14} {:>34} {:>34}", "n", "plain", "alt", "block m=2 t=2", "alt block");
    for n in 2..=10 {
        let cells = [
            estimate(&fib, &single, Family::PlainGeneral, n)?,
            estimate(&fib, &single, Family::AltGeneral, n)?,
            estimate(&fib, &block, Family::PlainBlock, n)?,
            estimate(&fib, &block, Family::AltBlock, n)?,
        ];
        let text: Vec<String> = cells.iter().map(|v| render::estimate(v, 6)).collect();
        println!("{n:>3} {:>14} {:>14} {:>34} {:>34}", text[0], text[1], text[2], text[3]);
    }
    Ok(())
}
