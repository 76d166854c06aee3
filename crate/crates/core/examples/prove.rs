//! Prove a few sequents, check the proofs, and print one of them.
//!
//!     cargo run --example prove

use lambek_diamond::prelude::*;
use lambek_diamond::prover::translate_flat_sequent;

fn main() -> Result<()> {
    let cases = [
        ("[ [ p ] dia p \\ p ] => boxd dia dia p", Calculus::Ldia),
        ("dia boxd p dia boxd q => dia boxd (p * q)", Calculus::Ldia),
        ("p / p => p / p", Calculus::L),
        ("=> p / p", Calculus::Lstar),
        ("p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3", Calculus::L1starDiaM),
    ];
    for (text, calc) in cases {
        let s = parse_sequent(text)?;
        match prove(&s, calc)? {
            Some(p) => println!("{calc:<10} {s}  provable, {} rules, checks: {}", p.size(), check(&p, calc)),
            None => println!("{calc:<10} {s}  UNPROVABLE"),
        }
    }

    let s = parse_sequent(cases[0].0)?;
    let p = prove(&s, Calculus::Ldia)?.expect("provable");
    println!("\n{}", p.to_text());

    // the bracket-free image of the unprovable sequent goes through in L
    let flat = translate_flat_sequent(&parse_sequent(cases[1].0)?)?;
    println!("{flat}: {}", prove_flat(&flat, Calculus::L)?.is_some());
    Ok(())
}
