//! Free-group words, interpretations and the adjacent-pair split.
//!
//!     cargo run --example free_group

use lambek_diamond::freegroup::{random_identity_tuple, Generator};
use lambek_diamond::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    for t in ["dia:1 p1 \\ p2", "boxd:2 (p1 * q1)", "(p1 / q1) * q1"] {
        let ty = parse_type(t)?;
        println!("{t:<20} {}", interpret(&ty)?);
    }

    let gens: Vec<Generator> = ["a", "b", "c"].iter().map(|g| Generator::Prim(g.to_string())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=6 {
        let words = random_identity_tuple(&mut rng, n, 4, &gens);
        let k = pentus_split(&words)?;
        let shown: Vec<String> = words.iter().map(|w| format!("[{w}]")).collect();
        println!("{}  k = {k}", shown.join(" "));
    }
    let w = GroupWord::prim("p").mul(&GroupWord::prim("q").inv());
    println!("{w} * ({w})^-1 = {}", w.mul(&w.inv()));
    Ok(())
}
