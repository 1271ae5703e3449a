//! The plain-text generator file format:
//!
//! ```text
//! # comment
//! degree 5
//! (1,2,3,4,5)
//! (1,2,3)
//! ```

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Degree and generators read from a generator file.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| {
                        Error::MalformedInput(format!("line {}: expected `degree n`, found `{line}`", lineno + 1))
                    })?;
                if n == 0 {
                    return Err(Error::MalformedInput("degree must be at least 1".into()));
                }
                degree = Some(n);
            }
            Some(n) => gens.push(
                Permutation::parse(line, n)
                    .map_err(|e| Error::MalformedInput(format!("line {}: {e}", lineno + 1)))?,
            ),
        }
    }
    let degree = degree.ok_or_else(|| Error::MalformedInput("missing `degree n` line".into()))?;
    Ok((degree, gens))
}

pub fn parse_generator_file(text: &str) -> Result<PermGroup> {
    let (degree, gens) = parse_generators(text)?;
    PermGroup::new(degree, gens)
}

/// Writes `group`'s generators, with optional leading comment lines.
pub fn to_generator_file(group: &PermGroup, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("degree {}\n", group.degree()));
    for g in group.generator_strings() {
        out.push_str(&g);
        out.push('\n');
    }
    out
}
