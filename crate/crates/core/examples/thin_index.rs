//! Thin-index a proof and compare free-group images of both sides.
//!
//!     cargo run --example thin_index

use lambek_diamond::prelude::*;

fn main() -> Result<()> {
    let s = parse_sequent("[ [ p ] dia p \\ p ] => boxd dia dia p")?;
    let p = prove(&s, Calculus::Ldia)?.expect("provable");
    let (ip, theta) = thin_index(&p)?;
    print!("{}", ip.to_text());
    println!("thin: {}", ip.conclusion.is_thin());
    for (k, v) in &theta {
        println!("  {k} -> {v}");
    }
    let c = &ip.conclusion;
    println!("[[antecedent]] = {}", interpret_hedge(&c.antecedent)?);
    println!("[[succedent]]  = {}", interpret(&c.succedent)?);
    assert_eq!(c.deindex(&theta), s);
    Ok(())
}
