//! Rule sets S and T, Cut derivations from T, and the reduction of a long
//! bracket-free sequent to short ones.
//!
//!     cargo run --release --example cut_derive

use std::collections::BTreeSet;

use lambek_diamond::interpolate::cut_complete;
use lambek_diamond::prelude::*;

fn main() -> Result<()> {
    let b: BTreeSet<String> = ["p".to_string()].into();
    let rules = build_rulesets(&b, 3, Calculus::Ldia)?;
    println!("|S| = {}, |T| = {}", rules.s.len(), rules.t.len());

    let base = rules.t_list();
    for text in ["[ boxd p ] p \\ p => p", "[ p p \\ p ] => dia p", "[ p ] => p"] {
        let s = parse_sequent(text)?;
        match cut_derives(&base, &s) {
            Some(d) => print!("{s}\n{}", d.to_text()),
            None => println!("{s}: not derivable from T"),
        }
    }

    let s = parse_sequent("[ boxd p ] p \\ p => p")?;
    let d = cut_complete(&s, &b, 3, Calculus::Ldia)?;
    println!("constructed: {} leaves, {} cuts, replays: {}", d.leaves().len(), d.cuts(), d.replay()? == s);

    let long = parse_sequent("p / p p / p p p \\ p p \\ p => p")?;
    let d = pentus_reduce(&long, &b, 2, Calculus::Ldia)?;
    print!("\n{}", d.to_text());
    Ok(())
}
