//! Text formats for instances and walks.
//!
//! Instance documents are UTF-8 with LF line endings; `#` starts a comment
//! line. The serializer is byte-deterministic: edges are emitted sorted by
//! `(step, u, v)`.
//!
//! ```text
//! temporal-graph v1
//! vertices <n>
//! steps <L>
//! start <s>
//! edge <t> <u> <v>     # 1 <= t <= L, 0 <= u < v < n
//! ```
//!
//! Walks are a single line: `walk <w0> <w1> ... <wT>`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, TemporalGraph};
use crate::walk::TemporalWalk;

pub const FORMAT_HEADER: &str = "temporal-graph v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Serializes an instance in the canonical byte-deterministic form.
pub fn serialize_instance(tg: &TemporalGraph, start: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", FORMAT_HEADER);
    let _ = writeln!(out, "vertices {}", tg.n);
    let _ = writeln!(out, "steps {}", tg.lifetime);
    let _ = writeln!(out, "start {}", start);
    for (i, es) in tg.steps.iter().enumerate() {
        for &(u, v) in es {
            let _ = writeln!(out, "edge {} {} {}", i + 1, u, v);
        }
    }
    out
}

fn parse_number(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("invalid {}: `{}`", what, token)))
}

/// Parses an instance document, returning the graph and its start vertex.
pub fn parse_instance(text: &str) -> Result<(TemporalGraph, usize), ParseError> {
    // Header lines are expected in fixed order; comments and blank lines may
    // appear anywhere.
    let mut stage = 0usize;
    let mut n = 0usize;
    let mut lifetime = 0usize;
    let mut start = 0usize;
    let mut steps: Vec<BTreeSet<Edge>> = Vec::new();
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match stage {
            0 => {
                if line != FORMAT_HEADER {
                    return Err(ParseError::new(
                        lineno,
                        format!("expected header `{}`", FORMAT_HEADER),
                    ));
                }
                stage = 1;
            }
            1 => {
                if tokens.len() != 2 || tokens[0] != "vertices" {
                    return Err(ParseError::new(lineno, "expected `vertices <n>`"));
                }
                n = parse_number(lineno, tokens[1], "vertex count")?;
                stage = 2;
            }
            2 => {
                if tokens.len() != 2 || tokens[0] != "steps" {
                    return Err(ParseError::new(lineno, "expected `steps <L>`"));
                }
                lifetime = parse_number(lineno, tokens[1], "step count")?;
                steps = vec![BTreeSet::new(); lifetime];
                stage = 3;
            }
            3 => {
                if tokens.len() != 2 || tokens[0] != "start" {
                    return Err(ParseError::new(lineno, "expected `start <s>`"));
                }
                start = parse_number(lineno, tokens[1], "start vertex")?;
                if start >= n {
                    return Err(ParseError::new(
                        lineno,
                        format!("start vertex {} out of range 0..{}", start, n),
                    ));
                }
                stage = 4;
            }
            _ => {
                if tokens.len() != 4 || tokens[0] != "edge" {
                    return Err(ParseError::new(lineno, "expected `edge <t> <u> <v>`"));
                }
                let t = parse_number(lineno, tokens[1], "step index")?;
                let u = parse_number(lineno, tokens[2], "endpoint")?;
                let v = parse_number(lineno, tokens[3], "endpoint")?;
                if t == 0 || t > lifetime {
                    return Err(ParseError::new(
                        lineno,
                        format!("step index {} out of range 1..={}", t, lifetime),
                    ));
                }
                if u >= v {
                    return Err(ParseError::new(
                        lineno,
                        format!("endpoints must satisfy u < v, got {} {}", u, v),
                    ));
                }
                if v >= n {
                    return Err(ParseError::new(
                        lineno,
                        format!("endpoint {} out of range 0..{}", v, n),
                    ));
                }
                if !steps[t - 1].insert((u, v)) {
                    return Err(ParseError::new(
                        lineno,
                        format!("duplicate edge {{{},{}}} at step {}", u, v, t),
                    ));
                }
            }
        }
    }

    if stage < 4 {
        return Err(ParseError::new(
            last_line + 1,
            "unexpected end of input before the `start` line",
        ));
    }
    Ok((
        TemporalGraph {
            n,
            lifetime,
            steps,
        },
        start,
    ))
}

pub fn serialize_walk(walk: &TemporalWalk) -> String {
    let mut out = String::from("walk");
    for p in &walk.positions {
        let _ = write!(out, " {}", p);
    }
    out.push('\n');
    out
}

pub fn parse_walk(text: &str) -> Result<TemporalWalk, ParseError> {
    let mut found: Option<TemporalWalk> = None;
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if found.is_some() {
            return Err(ParseError::new(lineno, "more than one walk line"));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() || tokens[0] != "walk" || tokens.len() < 2 {
            return Err(ParseError::new(lineno, "expected `walk <w0> <w1> ...`"));
        }
        let mut positions = Vec::with_capacity(tokens.len() - 1);
        for tok in &tokens[1..] {
            positions.push(parse_number(lineno, tok, "position")?);
        }
        found = Some(TemporalWalk::new(positions));
    }
    found.ok_or_else(|| ParseError::new(last_line + 1, "missing `walk` line"))
}
