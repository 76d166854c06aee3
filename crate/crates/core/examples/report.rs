//! The quick checks of the harness, printed as report lines.
//!
//!     cargo run --release --example report

use lambek_diamond::harness::{run_ai_family, run_golden, run_pentus_trials, run_thin};

fn main() {
    for r in [run_golden(), run_thin(), run_ai_family(4), run_pentus_trials(1000, 6, 4, 3, 2024)] {
        print!("{r}");
    }
}
