//! Terms of a few Horadam sequences, by iteration and by matrix powers.
//!
//!     cargo run --example sequence

use horadam::{w_fast, w_iter, w_range, weighted_denominator, RecurrenceParams, WeightedSelector};

fn main() -> horadam::Result<()> {
    let fib = RecurrenceParams::fibonacci();
    let lucas = RecurrenceParams::new(2, 1, 1, 1)?;
    let pell = RecurrenceParams::pell();

    for (name, params) in [("fibonacci", &fib), ("lucas", &lucas), ("pell", &pell)] {
        let head: Vec<String> = w_range(params, 0, 10).iter().map(ToString::to_string).collect();
        println!("{name:>9} {params}: {}", head.join(" "));
    }

    // the two evaluators agree; the matrix form is logarithmic in n
    let n = 1000;
    assert_eq!(w_iter(&fib, n), w_fast(&fib, n));
    let digits = w_fast(&fib, n).to_string().len();
    println!("F_{n} has {digits} digits");

    // weighted denominators W_{2k} + W_{2k+1} = F_{2k+2}
    let sel = WeightedSelector::new(2, [1u32, 1], [0, 1])?;
    for k in 1..=5 {
        println!("k={k}: W_{{2k}} + W_{{2k+1}} = {}", weighted_denominator(&fib, &sel, k)?);
    }
    Ok(())
}
