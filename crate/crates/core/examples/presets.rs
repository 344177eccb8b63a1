//! Driving the command-line front end in-process with the built-in presets.
//!
//!     cargo run --example presets

use horadam::cli::{self, PRESETS};

fn main() {
    for preset in PRESETS {
        println!("# {}: {}", preset.name, preset.note);
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = ["horadam", "estimate", "--preset", preset.name, "--n", "6", "--digits", "12"];
        let code = cli::run(args, &mut out, &mut err);
        print!("{}", String::from_utf8_lossy(&out));
        if code != 0 {
            eprint!("exit {code}: {}", String::from_utf8_lossy(&err));
        }
    }
}
