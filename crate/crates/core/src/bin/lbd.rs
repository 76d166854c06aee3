use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lambek_diamond::cfgkit::{cut_derives, Cfg, Parser as CfgParser, Symbol};
use lambek_diamond::compiler::{compile_cfg_with, BuildOptions};
use lambek_diamond::freegroup::{interpret, interpret_erased, interpret_hedge, interpret_hedge_erased};
use lambek_diamond::harness::{run_all, run_equivalence_file, write_reports, HarnessOptions};
use lambek_diamond::interpolate::{extract_interpolant, thin_index, Partition};
use lambek_diamond::prover::{parse_proof, prove_with, translate_flat, translate_flat_sequent, Limits, Proof};
use lambek_diamond::syntax::{parse_context, parse_grammar, parse_hedge, parse_sequent, parse_type, Calculus, Sequent, Type};
use lambek_diamond::Error;

#[derive(Parser)]
#[command(name = "lbd", version, about = "Lambek calculus with brackets and modalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Ldia, LdiaM, LstarDia, L1starDia, L1starDiaM, L, Lstar or L1star.
    #[arg(long, global = true, default_value = "Ldia")]
    calculus: Calculus,
    #[arg(long, global = true, alias = "maxlen")]
    max_len: Option<usize>,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Per-query prover timeout.
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
    /// Directory for cached rule sets.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Prove a sequent and print its proof, or UNPROVABLE.
    Prove { sequent: String },
    /// Interpolant for the part of the antecedent filling the hole `_` of CONTEXT.
    Interpolate { sequent: String, context: String },
    /// Thin-index a proof (a proof file, or a sequent to prove first).
    Thin { input: String },
    /// Free-group image of a type or hedge.
    Interpret { input: String },
    /// Bracket-free translation of a type or bracket-free sequent.
    TranslateFlat { input: String },
    /// Compile a grammar file to a context-free grammar.
    Compile {
        grammar: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Override the length bound.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Parse a space-separated string with a CFG file.
    Parse { cfg: PathBuf, string: String },
    /// Derive a sequent by Cut from the sequents in BASE (one per line).
    CutDerive { base: PathBuf, sequent: String },
    /// Compare a grammar with its compiled CFG on all short strings.
    Compare { grammar: PathBuf },
    /// Run every check and write report.json / report.txt.
    Report {
        #[arg(short, long, default_value = ".")]
        out: PathBuf,
    },
}

fn limits(cli: &Cli) -> Limits {
    cli.timeout_ms.map(Limits::timeout_ms).unwrap_or_default()
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn proof_or_unprovable(s: &Sequent, cli: &Cli) -> Result<Option<Proof>, Error> {
    let p = prove_with(s, cli.calculus, limits(cli))?;
    if p.is_none() {
        if cli.json {
            println!("{}", json!({ "sequent": s.to_string(), "provable": false }));
        } else {
            println!("UNPROVABLE");
        }
    }
    Ok(p)
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Prove { sequent } => {
            let s = parse_sequent(sequent)?;
            if let Some(p) = proof_or_unprovable(&s, cli)? {
                if cli.json {
                    println!("{}", json!({ "sequent": s.to_string(), "provable": true, "proof": p.to_text() }));
                } else {
                    print!("{}", p.to_text());
                }
            }
        }
        Command::Interpolate { sequent, context } => {
            let s = parse_sequent(sequent)?;
            let ctx = parse_context(context)?;
            let span = s
                .antecedent
                .spans(true)
                .into_iter()
                .find(|sp| s.antecedent.context_of(sp) == ctx)
                .ok_or_else(|| Error::Partition(format!("`{context}` is not a context of `{}`", s.antecedent)))?;
            let part = Partition::from_span(&s.antecedent, &span)?;
            if let Some(p) = proof_or_unprovable(&s, cli)? {
                let r = extract_interpolant(&p, &part, cli.calculus)?;
                println!("{}", serde_json::to_string_pretty(&r.to_json(cli.calculus))?);
            }
        }
        Command::Thin { input } => {
            let p = if Path::new(input).is_file() {
                parse_proof(&read(Path::new(input))?)?
            } else {
                match proof_or_unprovable(&parse_sequent(input)?, cli)? {
                    Some(p) => p,
                    None => return Ok(ExitCode::SUCCESS),
                }
            };
            let (ip, theta) = thin_index(&p)?;
            if cli.json {
                println!("{}", json!({ "conclusion": ip.conclusion.to_string(), "proof": ip.to_text(), "theta": theta }));
            } else {
                print!("{}", ip.to_text());
                for (k, v) in &theta {
                    println!("{k} -> {v}");
                }
            }
        }
        Command::Interpret { input } => {
            let word = match parse_type(input) {
                Ok(t) if !is_indexed(&t) => interpret_erased(&t),
                Ok(t) => interpret(&t)?,
                Err(_) => {
                    let h = parse_hedge(input)?;
                    if h.indices().iter().all(Option::is_none) {
                        interpret_hedge_erased(&h)
                    } else {
                        interpret_hedge(&h)?
                    }
                }
            };
            if cli.json {
                println!("{}", json!({ "input": input, "word": word.to_string(), "length": word.len() }));
            } else {
                println!("{word}");
            }
        }
        Command::TranslateFlat { input } => match parse_type(input) {
            Ok(t) => println!("{}", translate_flat(&t)?),
            Err(_) => println!("{}", translate_flat_sequent(&parse_sequent(input)?)?),
        },
        Command::Compile { grammar, output, m } => {
            let g = parse_grammar(&read(grammar)?)?;
            let opts = BuildOptions { cache_dir: cli.cache_dir.clone(), limits: limits(cli), m_override: *m, ..BuildOptions::default() };
            let cfg = compile_cfg_with(&g, cli.calculus, &opts)?;
            match output {
                Some(path) => {
                    std::fs::write(path, cfg.to_text())?;
                    eprintln!("{} productions, {} nonterminals -> {}", cfg.productions.len(), cfg.nonterminals.len(), path.display());
                }
                None => print!("{}", cfg.to_text()),
            }
        }
        Command::Parse { cfg, string } => {
            let g: Cfg = read(cfg)?.parse()?;
            let w: Vec<Symbol> = string.split_whitespace().map(Symbol::t).collect();
            match CfgParser::new(&g).derives(&g.start, &w)? {
                Some(tree) => print!("{tree}"),
                None => println!("NO"),
            }
        }
        Command::CutDerive { base, sequent } => {
            let base: Vec<Sequent> = read(base)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse_sequent)
                .collect::<Result<_, _>>()?;
            match cut_derives(&base, &parse_sequent(sequent)?) {
                Some(d) => print!("{}", d.to_text()),
                None => println!("NO"),
            }
        }
        Command::Compare { grammar } => {
            let starred = match cli.calculus {
                Calculus::Ldia => false,
                Calculus::LstarDia => true,
                other => return Err(Error::Precondition(format!("compare works in Ldia or LstarDia, not {other}"))),
            };
            let opts = harness_options(cli);
            let max_len = cli.max_len.unwrap_or(if starred { 4 } else { 5 });
            let out = run_equivalence_file(grammar, starred, max_len, &opts)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.report)?);
            } else {
                eprint!("{}", out.report);
            }
            if !out.report.passed {
                println!("NOT EQUIVALENT up to {max_len}");
                return Ok(ExitCode::from(1));
            }
            println!("EQUIVALENT up to {max_len}");
        }
        Command::Report { out } => {
            let reports = run_all(&harness_options(cli))?;
            write_reports(&reports, out)?;
            for r in &reports {
                println!("{}", r.line());
            }
            if reports.iter().any(|r| !r.passed) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn is_indexed(t: &Type) -> bool {
    let mut idx = BTreeSet::new();
    t.collect_indices(&mut idx);
    idx.iter().any(Option::is_some)
}

fn harness_options(cli: &Cli) -> HarnessOptions {
    let mut opts = HarnessOptions { seed: cli.seed, timeout_ms: cli.timeout_ms, cache_dir: cli.cache_dir.clone(), ..HarnessOptions::default() };
    if let Some(n) = cli.max_len {
        opts.max_len = n;
    }
    opts
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e @ Error::Parse(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
