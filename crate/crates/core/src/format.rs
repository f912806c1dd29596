//! The `.pdfa` text format and Graphviz export.
//!
//! ```text
//! # comment
//! alphabet b c
//! states 3
//! start 0
//! accept 0
//! 0 b 0
//! 0 c 1
//! 1 c 2
//! 2 c 0
//! ```
//!
//! `alphabet` must be the first non-comment line. `accept` may be empty or
//! omitted. Every remaining line is a transition `SRC SYM DST`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::automaton::{PartialDfa, RawDfa, StateId};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected {what} index, found `{token}`")))
}

/// Parses a `.pdfa` document.
pub fn parse_dfa(text: &str) -> Result<PartialDfa> {
    let mut alphabet: Option<Vec<char>> = None;
    let mut states: Option<(usize, usize)> = None;
    let mut start: Option<(usize, StateId)> = None;
    let mut accept: Option<(usize, Vec<StateId>)> = None;
    let mut transitions: Vec<(usize, StateId, char, StateId)> = Vec::new();
    let mut seen: BTreeMap<(StateId, char), usize> = BTreeMap::new();
    let mut last_line = 0;

    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(symbols) = alphabet.as_ref() else {
            if tokens[0] != "alphabet" {
                return Err(parse_err(lineno, "first line must be `alphabet ...`"));
            }
            let mut symbols = Vec::new();
            for tok in &tokens[1..] {
                let mut chars = tok.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => {
                        if symbols.contains(&c) {
                            return Err(parse_err(lineno, format!("duplicate symbol '{c}'")));
                        }
                        symbols.push(c);
                    }
                    _ => {
                        return Err(parse_err(
                            lineno,
                            format!("symbols are single characters, found `{tok}`"),
                        ))
                    }
                }
            }
            if symbols.is_empty() {
                return Err(parse_err(lineno, "alphabet is empty"));
            }
            alphabet = Some(symbols);
            continue;
        };
        match tokens[0] {
            "alphabet" => return Err(parse_err(lineno, "repeated `alphabet` line")),
            "states" => {
                if states.is_some() {
                    return Err(parse_err(lineno, "repeated `states` line"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(lineno, "expected `states N`"));
                }
                let n = parse_index(lineno, tokens[1], "state count")?;
                if n == 0 {
                    return Err(parse_err(lineno, "state count must be positive"));
                }
                states = Some((lineno, n));
            }
            "start" => {
                if start.is_some() {
                    return Err(parse_err(lineno, "repeated `start` line"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(lineno, "expected `start S`"));
                }
                start = Some((lineno, parse_index(lineno, tokens[1], "state")?));
            }
            "accept" => {
                if accept.is_some() {
                    return Err(parse_err(lineno, "repeated `accept` line"));
                }
                let list = tokens[1..]
                    .iter()
                    .map(|t| parse_index(lineno, t, "state"))
                    .collect::<Result<Vec<_>>>()?;
                accept = Some((lineno, list));
            }
            _ => {
                if tokens.len() != 3 {
                    return Err(parse_err(
                        lineno,
                        format!("malformed line `{content}`; expected `SRC SYM DST`"),
                    ));
                }
                let src = parse_index(lineno, tokens[0], "source state")?;
                let mut chars = tokens[1].chars();
                let sym = match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => {
                        return Err(parse_err(
                            lineno,
                            format!("symbols are single characters, found `{}`", tokens[1]),
                        ))
                    }
                };
                if !symbols.contains(&sym) {
                    return Err(parse_err(lineno, format!("unknown symbol '{sym}'")));
                }
                let dst = parse_index(lineno, tokens[2], "target state")?;
                if let Some(prev) = seen.insert((src, sym), lineno) {
                    return Err(parse_err(
                        lineno,
                        format!("duplicate transition for ({src}, {sym}); first defined on line {prev}"),
                    ));
                }
                transitions.push((lineno, src, sym, dst));
            }
        }
    }

    let alphabet = alphabet.ok_or_else(|| parse_err(last_line.max(1), "missing `alphabet` line"))?;
    let (_, state_count) = states.ok_or_else(|| parse_err(last_line.max(1), "missing `states` line"))?;
    let (start_line, start) = start.ok_or_else(|| parse_err(last_line.max(1), "missing `start` line"))?;
    let range = |line: usize, q: StateId| {
        if q < state_count {
            Ok(q)
        } else {
            Err(parse_err(line, format!("state {q} out of range 0..{state_count}")))
        }
    };
    range(start_line, start)?;
    let accepting = match accept {
        Some((line, list)) => list
            .into_iter()
            .map(|q| range(line, q))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let transitions = transitions
        .into_iter()
        .map(|(line, src, sym, dst)| Ok((range(line, src)?, sym, range(line, dst)?)))
        .collect::<Result<Vec<_>>>()?;

    RawDfa {
        alphabet,
        state_count,
        start,
        accepting,
        transitions,
    }
    .into_dfa()
}

/// Canonical `.pdfa` rendering: header lines, then transitions sorted by
/// source and alphabet order.
pub fn render_dfa(dfa: &PartialDfa) -> String {
    let mut out = String::new();
    writeln!(out, "alphabet {}", dfa.alphabet()).unwrap();
    writeln!(out, "states {}", dfa.state_count()).unwrap();
    writeln!(out, "start {}", dfa.start()).unwrap();
    out.push_str("accept");
    for q in dfa.accepting_states() {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
    for (src, sym, dst) in dfa.transitions() {
        writeln!(out, "{src} {sym} {dst}").unwrap();
    }
    out
}

/// Graphviz rendering. Parallel edges are merged into one labelled edge.
pub fn render_dot(dfa: &PartialDfa) -> String {
    let mut out = String::from("digraph pdfa {\n  rankdir=LR;\n");
    out.push_str("  __start [shape=point];\n");
    writeln!(out, "  __start -> {};", dfa.start()).unwrap();
    for q in 0..dfa.state_count() {
        let shape = if dfa.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    let mut edges: BTreeMap<(StateId, StateId), Vec<char>> = BTreeMap::new();
    for (src, sym, dst) in dfa.transitions() {
        edges.entry((src, dst)).or_default().push(sym);
    }
    for ((src, dst), labels) in edges {
        let label: Vec<String> = labels.iter().map(char::to_string).collect();
        writeln!(out, "  {src} -> {dst} [label=\"{}\"];", label.join(",")).unwrap();
    }
    out.push_str("}\n");
    out
}
