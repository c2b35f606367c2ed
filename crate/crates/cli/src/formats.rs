//! Input file formats.
//!
//! Automorphism spec:
//!
//! ```text
//! # comment
//! p=3 r=2 N=6
//! x1 -> x1 [x1,x2]
//! x2 -> x2
//! ```
//!
//! Generators without a line map to themselves. Defining system: lines
//! `a k l i value`, an optional `m <length>` line (otherwise `m` is the
//! largest `l` minus one) and optional `p=` header. Degree multiset: optional
//! `p=<prime>` header, then one positive integer per line.

use std::collections::BTreeMap;

use projohnson_core::massey::DefiningSystem;
use projohnson_core::words::parse_word;
use projohnson_core::{GroupContext, GroupEndo, Word};

use crate::CliError;

/// Context values read from a `p=.. r=.. N=..` header.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Header {
    pub p: Option<u32>,
    pub r: Option<usize>,
    pub n: Option<usize>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn is_header(line: &str) -> bool {
    line.split_whitespace().all(|tok| tok.contains('=')) && !line.contains("->")
}

fn parse_header(line: &str, lineno: usize, into: &mut Header) -> Result<(), CliError> {
    for tok in line.split_whitespace() {
        let (key, value) = tok.split_once('=').expect("header token");
        let bad = || CliError::user(format!("line {lineno}: bad header value `{tok}`"));
        match key.trim() {
            "p" => into.p = Some(value.parse().map_err(|_| bad())?),
            "r" => into.r = Some(value.parse().map_err(|_| bad())?),
            "N" => into.n = Some(value.parse().map_err(|_| bad())?),
            other => return Err(CliError::user(format!("line {lineno}: unknown header key `{other}`"))),
        }
    }
    Ok(())
}

/// A parsed automorphism spec whose words are still text, so the context
/// can be fixed after reading the header.
#[derive(Clone, Debug, Default)]
pub struct AutomorphismSpec {
    pub header: Header,
    images: BTreeMap<usize, (usize, String)>,
}

impl AutomorphismSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut spec = AutomorphismSpec::default();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if is_header(line) {
                parse_header(line, lineno, &mut spec.header)?;
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| CliError::user(format!("line {lineno}: expected `xj -> word`")))?;
            let lhs = lhs.trim();
            let j: usize = lhs
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&j| j >= 1)
                .ok_or_else(|| CliError::user(format!("line {lineno}: `{lhs}` is not a generator")))?;
            if spec.images.insert(j, (lineno, rhs.trim().to_string())).is_some() {
                return Err(CliError::user(format!("line {lineno}: second image given for x{j}")));
            }
        }
        Ok(spec)
    }

    pub fn max_generator(&self) -> usize {
        self.images.keys().next_back().copied().unwrap_or(0)
    }

    pub fn build(&self, ctx: GroupContext) -> Result<GroupEndo, CliError> {
        if self.max_generator() > ctx.rank() {
            return Err(CliError::user(format!(
                "image given for x{} but the rank is {}",
                self.max_generator(),
                ctx.rank()
            )));
        }
        let mut images: Vec<Word> = (1..=ctx.rank()).map(Word::generator).collect();
        for (&j, (lineno, text)) in &self.images {
            images[j - 1] = parse_word(text, &ctx).map_err(|e| CliError::user(format!("line {lineno}: {e}")))?;
        }
        Ok(GroupEndo::from_images(ctx, images)?)
    }
}

/// A defining system before the prime and generator count are fixed.
#[derive(Clone, Debug, Default)]
pub struct DefiningSystemSpec {
    pub header: Header,
    pub m: Option<usize>,
    entries: Vec<(usize, [usize; 3], i64)>,
}

impl DefiningSystemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut spec = DefiningSystemSpec::default();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if is_header(line) {
                parse_header(line, lineno, &mut spec.header)?;
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || CliError::user(format!("line {lineno}: expected `a k l i value` or `m <length>`"));
            match toks.as_slice() {
                ["m", m] => spec.m = Some(m.parse().map_err(|_| bad())?),
                ["a", k, l, i, v] => {
                    let idx = [k.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?];
                    spec.entries.push((lineno, idx, v.parse().map_err(|_| bad())?));
                }
                _ => return Err(bad()),
            }
        }
        Ok(spec)
    }

    pub fn max_generator(&self) -> usize {
        self.entries.iter().map(|(_, idx, _)| idx[2]).max().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.m.unwrap_or_else(|| self.entries.iter().map(|(_, idx, _)| idx[1]).max().unwrap_or(1).saturating_sub(1))
    }

    pub fn build(&self, p: u32, generators: usize) -> Result<DefiningSystem, CliError> {
        let mut ds = DefiningSystem::new(p, self.length(), generators)?;
        for (lineno, [k, l, i], v) in &self.entries {
            ds.set(*k, *l, *i, *v).map_err(|e| CliError::user(format!("line {lineno}: {e}")))?;
        }
        Ok(ds)
    }
}

/// Degree multiset from a file body, or from an inline list like `4` or `3,1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSpec {
    pub p: Option<u32>,
    pub degrees: Vec<u32>,
}

impl DegreeSpec {
    pub fn parse_inline(text: &str) -> Option<Self> {
        let degrees = text.split(',').map(|t| t.trim().parse().ok()).collect::<Option<Vec<u32>>>()?;
        Some(DegreeSpec { p: None, degrees })
    }

    pub fn parse_file(text: &str) -> Result<Self, CliError> {
        let mut spec = DegreeSpec::default();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("p=") {
                spec.p = Some(v.trim().parse().map_err(|_| CliError::user(format!("line {lineno}: bad prime `{v}`")))?);
                continue;
            }
            let d = line.parse().map_err(|_| CliError::user(format!("line {lineno}: expected a degree, got `{line}`")))?;
            spec.degrees.push(d);
        }
        Ok(spec)
    }
}
