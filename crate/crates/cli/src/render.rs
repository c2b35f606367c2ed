//! Deterministic text and JSON renderings. Rows follow generator order and
//! length-lex monomial order, the iteration order of the core types.

use std::fmt::Write;

use projohnson_core::iwasawa::MonodromySequences;
use projohnson_core::massey::JohnsonMasseyCheck;
use projohnson_core::{AutDepth, GroupContext, JohnsonTable, TruncSeries};
use serde::Serialize;

pub fn context_header(ctx: &GroupContext) -> String {
    format!("# p={} r={} N={}", ctx.p(), ctx.rank(), ctx.trunc())
}

/// Header `# p=.. r=.. N=.. m=..`, then `X<j>\t<monomial>\t<coefficient>`.
pub fn format_table(t: &JohnsonTable) -> String {
    let mut out = format!("{} m={}\n", context_header(t.ctx()), t.level());
    for (j, mono, c) in t.entries() {
        writeln!(out, "X{j}\t{mono}\t{c}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct TableRow {
    j: usize,
    mono: String,
    coef: u32,
}

#[derive(Serialize)]
struct TableJson {
    p: u32,
    r: usize,
    #[serde(rename = "N")]
    n: usize,
    m: usize,
    rows: Vec<TableRow>,
}

pub fn table_json(t: &JohnsonTable) -> String {
    let ctx = t.ctx();
    let doc = TableJson {
        p: ctx.p(),
        r: ctx.rank(),
        n: ctx.trunc(),
        m: t.level(),
        rows: t.entries().map(|(j, mono, coef)| TableRow { j, mono: mono.to_string(), coef }).collect(),
    };
    serde_json::to_string(&doc).unwrap() + "\n"
}

/// `<monomial>\t<coefficient>` per nonzero term.
pub fn series_tsv(s: &TruncSeries) -> String {
    let mut out = String::new();
    for (mono, c) in s.terms() {
        writeln!(out, "{mono}\t{c}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct Term {
    mono: String,
    coef: u32,
}

pub fn series_json(s: &TruncSeries) -> serde_json::Value {
    let terms: Vec<Term> = s.terms().map(|(m, c)| Term { mono: m.to_string(), coef: c }).collect();
    serde_json::json!({ "series": s.to_string(), "terms": terms })
}

fn depth_cell(d: &AutDepth) -> String {
    match d {
        AutDepth::Level(m) => m.to_string(),
        AutDepth::BeyondHorizon => "exceeds".to_string(),
    }
}

/// Two TSV blocks, `m\td(m)` and `d\tm(d)`, under the context header.
pub fn format_sequences(ctx: &GroupContext, s: &MonodromySequences) -> String {
    let mut out = format!("{} mMax={} dMax={}\n", context_header(ctx), s.m_max(), s.d_max());
    out.push_str("m\td(m)\n");
    for (k, d) in s.d_seq.iter().enumerate() {
        match d {
            Some(d) => writeln!(out, "{}\t{d}", k + 1).unwrap(),
            None => writeln!(out, "{}\tnot found <= {}", k + 1, s.d_max()).unwrap(),
        }
    }
    out.push_str("d\tm(d)\n");
    for (d, m) in s.m_seq.iter().enumerate() {
        match m {
            AutDepth::Level(m) => writeln!(out, "{d}\t{m}").unwrap(),
            AutDepth::BeyondHorizon => writeln!(out, "{d}\texceeds {}", ctx.trunc() - 1).unwrap(),
        }
    }
    out
}

pub fn sequences_json(ctx: &GroupContext, s: &MonodromySequences) -> String {
    let doc = serde_json::json!({
        "p": ctx.p(),
        "r": ctx.rank(),
        "N": ctx.trunc(),
        "d_of_m": s.d_seq,
        "m_of_d": s.m_seq.iter().map(depth_cell).collect::<Vec<_>>(),
        "steps_ok": s.steps_ok(),
        "growth_ok": s.growth_ok(),
    });
    doc.to_string() + "\n"
}

#[derive(Serialize)]
struct CheckLine {
    d: u32,
    j: usize,
    mono: String,
    lhs: u32,
    rhs: u32,
    equal: bool,
}

/// One JSON object per line with keys `d, j, mono, lhs, rhs, equal`.
pub fn check_line(c: &JohnsonMasseyCheck) -> String {
    let line = CheckLine { d: c.d, j: c.j, mono: c.mono.to_string(), lhs: c.lhs, rhs: c.rhs, equal: c.equal };
    serde_json::to_string(&line).unwrap() + "\n"
}
