//! Interpolants of every partition of a small proof, and the guarded
//! interpolant of the unit example.
//!
//!     cargo run --example interpolate

use lambek_diamond::interpolate::extract_at;
use lambek_diamond::prelude::*;

fn main() -> Result<()> {
    let s = parse_sequent("p / q q r => p * r")?;
    let p = prove(&s, Calculus::Ldia)?.expect("provable");
    println!("{s}");
    for part in Partition::all(&s.antecedent, false) {
        let r = extract_interpolant(&p, &part, Calculus::Ldia)?;
        println!("  {:<28} E = {:<12} (i)-(iv): {}", part.to_string(), r.interpolant.to_string(), r.conditions(Calculus::Ldia).all());
    }

    let e = parse_sequent("p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3")?;
    let p = prove(&e, Calculus::L1starDiaM)?.expect("provable");
    let r = extract_at(&p, &Span::root(1, 2), Calculus::L1starDiaM)?;
    println!("\n{e}\n  selecting {}: E = {}", r.partition.selected, r.interpolant);
    println!("{}", serde_json::to_string_pretty(&r.to_json(Calculus::L1starDiaM))?);
    Ok(())
}
