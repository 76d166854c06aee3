//! Executable checks of the calculus, interpolation, reduction and grammar
//! compilation results, each producing a [`Report`].

mod equivalence;
mod golden;
mod sweeps;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;

pub use equivalence::{
    bracket_bound, generates, run_equivalence, run_equivalence_file, EquivalenceOutcome, BUNDLED_GRAMMARS,
};
pub use golden::{run_ai_family, run_golden, run_thin, UNIT_EXAMPLE, FLAT_COUNTEREXAMPLE, BRACKET_EXAMPLE};
pub use sweeps::{
    cut_population, interpolation_population, run_cut_completeness, run_freegroup_soundness,
    run_interpolation_on, run_interpolation_sweep, run_pentus_reduce, run_pentus_trials, SweepBounds,
};

/// The outcome of one checked claim. A failing report names a minimal
/// reproducer.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub passed: bool,
    pub counts: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
    pub artifacts: Vec<String>,
    pub reproducer: Option<String>,
    pub details: Vec<String>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn start(claim: impl Into<String>) -> Report {
        Report {
            claim: claim.into(),
            passed: true,
            counts: BTreeMap::new(),
            elapsed_ms: 0,
            artifacts: Vec::new(),
            reproducer: None,
            details: Vec::new(),
            started: Some(Instant::now()),
        }
    }

    pub fn add(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += n;
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    /// Record a failure; the first reproducer is kept.
    pub fn fail(&mut self, reproducer: impl Into<String>) {
        self.passed = false;
        self.add("failures", 1);
        if self.reproducer.is_none() {
            self.reproducer = Some(reproducer.into());
        }
    }

    /// `fail` unless `ok`.
    pub fn expect(&mut self, ok: bool, reproducer: impl FnOnce() -> String) {
        if !ok {
            self.fail(reproducer());
        }
    }

    pub fn finish(mut self) -> Report {
        if let Some(t) = self.started.take() {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    /// One summary line: `PASS claim (counts) in N ms`.
    pub fn line(&self) -> String {
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut s = format!(
            "{} {} ({}) in {} ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.claim,
            counts.join(", "),
            self.elapsed_ms
        );
        if let Some(r) = &self.reproducer {
            s.push_str(&format!("; reproducer: {r}"));
        }
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.line())?;
        for d in &self.details {
            writeln!(f, "    {d}")?;
        }
        Ok(())
    }
}

/// Settings shared by the full harness run.
#[derive(Clone, Debug)]
pub struct HarnessOptions {
    pub seed: u64,
    pub timeout_ms: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub grammar_dir: PathBuf,
    /// Longest string for plain (and, minus one, starred) grammar equivalence.
    pub max_len: usize,
    pub pentus_trials: usize,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            seed: 2024,
            timeout_ms: None,
            cache_dir: None,
            grammar_dir: PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/grammars")),
            max_len: 5,
            pentus_trials: 10_000,
        }
    }
}

/// Run every claim in a fixed order.
pub fn run_all(opts: &HarnessOptions) -> Result<Vec<Report>> {
    let mut out = vec![run_golden(), run_thin()];
    let sweep = interpolation_population(&SweepBounds::default())?;
    out.push(run_interpolation_on(&sweep, crate::syntax::Calculus::Ldia));
    out.push(run_pentus_trials(opts.pentus_trials, 6, 4, 3, opts.seed));
    out.push(run_pentus_reduce(&["p", "q"], 2, 5)?);
    let plain = cut_population(&["p"], 2, 4, crate::syntax::Calculus::Ldia)?;
    let guarded = cut_population(&["p"], 2, 4, crate::syntax::Calculus::L1starDia)?;
    out.push(run_cut_completeness(&plain, &["p"], 2, crate::syntax::Calculus::Ldia)?);
    out.push(run_cut_completeness(&guarded, &["p"], 2, crate::syntax::Calculus::L1starDia)?);
    for (name, starred) in BUNDLED_GRAMMARS {
        let path = opts.grammar_dir.join(name);
        let len = if *starred { opts.max_len.saturating_sub(1) } else { opts.max_len };
        out.push(run_equivalence_file(&path, *starred, len, opts)?.report);
    }
    out.push(run_ai_family(4));
    let mut population: Vec<crate::prover::Proof> = sweep;
    population.extend(plain.into_iter().filter_map(|(_, p)| p));
    population.extend(guarded.into_iter().filter_map(|(_, p)| p));
    out.push(run_freegroup_soundness(&population));
    Ok(out)
}

/// Write `report.json` and `report.txt` into `dir`.
pub fn write_reports(reports: &[Report], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(reports)?)?;
    let text: String = reports.iter().map(|r| r.to_string()).collect();
    std::fs::write(dir.join("report.txt"), text)?;
    Ok(())
}
