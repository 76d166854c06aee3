//! Compile a bundled grammar to a context-free grammar and parse with it.
//!
//!     cargo run --release --example compile_grammar

use lambek_diamond::cfgkit::Parser;
use lambek_diamond::prelude::*;

fn main() -> Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/grammars/anbn.lg");
    let g = parse_grammar(&std::fs::read_to_string(path)?)?;
    let cfg = compile_cfg(&g, Calculus::Ldia)?;
    println!("{} nonterminals, {} productions, start {}", cfg.nonterminals.len(), cfg.productions.len(), cfg.start);

    let parser = Parser::new(&cfg);
    for w in ["a b", "a a b b", "a b b", "b a"] {
        let terms: Vec<&str> = w.split_whitespace().collect();
        println!("{w:<10} {}", if parser.accepts(&terms) { "yes" } else { "no" });
    }
    let w: Vec<Symbol> = ["a", "a", "b", "b"].into_iter().map(Symbol::t).collect();
    if let Some(tree) = parser.derives(&cfg.start, &w)? {
        print!("{tree}");
    }
    let short: Vec<String> = language_upto(&cfg, 6).into_iter().map(|w| w.join("")).collect();
    println!("up to length 6: {short:?}");
    Ok(())
}
