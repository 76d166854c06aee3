use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::syntax::{parse_sequent, Calculus, Sequent};

fn header(b: &BTreeSet<String>, m: usize, calc: Calculus) -> Vec<String> {
    vec![
        "# lambek-diamond rule-set cache".to_string(),
        format!("# version {}", env!("CARGO_PKG_VERSION")),
        format!("# calculus {calc}"),
        format!("# m {m}"),
        format!("# primitives {}", b.iter().cloned().collect::<Vec<_>>().join(" ")),
    ]
}

pub fn cache_path(dir: &Path, b: &BTreeSet<String>, m: usize, calc: Calculus) -> PathBuf {
    let prims = b.iter().cloned().collect::<Vec<_>>().join("_");
    dir.join(format!("rules-{calc}-m{m}-{prims}.txt"))
}

/// The cached members of `S`, or `None` when the file is missing or was
/// written for different parameters.
pub fn read_cache(path: &Path, b: &BTreeSet<String>, m: usize, calc: Calculus) -> Result<Option<Vec<Sequent>>> {
    let Ok(text) = fs::read_to_string(path) else { return Ok(None) };
    let expect = header(b, m, calc);
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < expect.len() || lines.iter().zip(&expect).any(|(a, b)| a != b) {
        return Ok(None);
    }
    let mut out = Vec::new();
    for l in &lines[expect.len()..] {
        if !l.trim().is_empty() {
            out.push(parse_sequent(l)?);
        }
    }
    Ok(Some(out))
}

pub fn write_cache(path: &Path, b: &BTreeSet<String>, m: usize, calc: Calculus, members: &[Sequent]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut text = header(b, m, calc).join("\n");
    text.push('\n');
    for s in members {
        text.push_str(&s.to_string());
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}
