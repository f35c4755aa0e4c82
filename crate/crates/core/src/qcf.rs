//! Reader and writer for `.qcf` circuit files.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 0
//! cnot 0 1
//! ```
//!
//! The first non-blank, non-comment line must be `qubits N`. Every later
//! line is blank, a comment starting with `#`, or a gate label followed by
//! exactly one wire index per gate qubit. Gate labels and the `qubits`
//! keyword are case-insensitive. CRLF line endings are accepted.

use std::fmt;

use crate::circuit::Circuit;
use crate::gates::Gate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    UnknownGate,
    BadArity,
    WireOutOfRange,
    BadInteger,
    MissingHeader,
    TrailingGarbage,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A rejected `.qcf` source, located at the offending token (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}: {}",
            self.line, self.column, self.kind, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// A whitespace-separated word and its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut column = 0;
    let mut start_column = 0;
    for (byte, ch) in line.char_indices() {
        column += 1;
        if ch == ' ' || ch == '\t' {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..byte],
                    column: start_column,
                });
            }
        } else if start.is_none() {
            start = Some(byte);
            start_column = column;
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &line[s..],
            column: start_column,
        });
    }
    tokens
}

struct LineCtx {
    line: usize,
    width: usize,
}

impl LineCtx {
    fn error(&self, column: usize, kind: ParseErrorKind, message: String) -> ParseError {
        ParseError {
            line: self.line,
            column,
            kind,
            message,
        }
    }

    fn integer(&self, tok: Token<'_>) -> Result<usize, ParseError> {
        let ok = !tok.text.is_empty() && tok.text.bytes().all(|b| b.is_ascii_digit());
        ok.then(|| tok.text.parse::<usize>().ok())
            .flatten()
            .ok_or_else(|| {
                self.error(
                    tok.column,
                    ParseErrorKind::BadInteger,
                    format!("expected a non-negative integer, found '{}'", tok.text),
                )
            })
    }
}

/// Parses `.qcf` text into a circuit. The first error encountered wins.
pub fn parse(source: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 1;

    for (idx, raw) in source.split('\n').enumerate() {
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let ctx = LineCtx {
            line: idx + 1,
            width: text.chars().count(),
        };
        last_line = ctx.line;
        let tokens = tokenize(text);
        let Some(&first) = tokens.first() else {
            continue;
        };
        if first.text.starts_with('#') {
            continue;
        }

        match circuit.as_mut() {
            None => circuit = Some(parse_header(&ctx, &tokens)?),
            Some(c) => parse_instruction(&ctx, &tokens, c)?,
        }
    }

    circuit.ok_or_else(|| ParseError {
        line: last_line,
        column: 1,
        kind: ParseErrorKind::MissingHeader,
        message: "file has no 'qubits N' header".into(),
    })
}

fn parse_header(ctx: &LineCtx, tokens: &[Token<'_>]) -> Result<Circuit, ParseError> {
    let keyword = tokens[0];
    if !keyword.text.eq_ignore_ascii_case("qubits") {
        return Err(ctx.error(
            keyword.column,
            ParseErrorKind::MissingHeader,
            format!("expected 'qubits N' header, found '{}'", keyword.text),
        ));
    }
    let Some(&count) = tokens.get(1) else {
        return Err(ctx.error(
            ctx.width + 1,
            ParseErrorKind::BadInteger,
            "missing qubit count after 'qubits'".into(),
        ));
    };
    let n = ctx.integer(count)?;
    if n == 0 {
        return Err(ctx.error(
            count.column,
            ParseErrorKind::BadInteger,
            "qubit count must be positive".into(),
        ));
    }
    if let Some(extra) = tokens.get(2) {
        return Err(ctx.error(
            extra.column,
            ParseErrorKind::TrailingGarbage,
            format!("unexpected '{}' after header", extra.text),
        ));
    }
    Ok(Circuit::new(n).expect("positive qubit count"))
}

fn parse_instruction(ctx: &LineCtx, tokens: &[Token<'_>], c: &mut Circuit) -> Result<(), ParseError> {
    let name = tokens[0];
    let gate: Gate = name.text.parse().map_err(|_| {
        let message = if name.text.eq_ignore_ascii_case("qubits") {
            "header may appear only once".to_string()
        } else {
            format!("unknown gate '{}'", name.text)
        };
        ctx.error(name.column, ParseErrorKind::UnknownGate, message)
    })?;

    let arity = gate.arity();
    let args = &tokens[1..];
    if args.len() < arity {
        return Err(ctx.error(
            name.column,
            ParseErrorKind::BadArity,
            format!(
                "{} takes {arity} wire(s), found {}",
                name.text.to_ascii_lowercase(),
                args.len()
            ),
        ));
    }

    let mut wires = Vec::with_capacity(arity);
    for &tok in &args[..arity] {
        let wire = ctx.integer(tok)?;
        if wire >= c.num_qubits() {
            return Err(ctx.error(
                tok.column,
                ParseErrorKind::WireOutOfRange,
                format!("wire {wire} out of range for {} qubit(s)", c.num_qubits()),
            ));
        }
        if wires.contains(&wire) {
            return Err(ctx.error(
                tok.column,
                ParseErrorKind::WireOutOfRange,
                format!("wire {wire} used twice in one instruction"),
            ));
        }
        wires.push(wire);
    }

    if let Some(&extra) = args.get(arity) {
        let numeric = extra.text.bytes().all(|b| b.is_ascii_digit());
        let (kind, message) = if numeric {
            (
                ParseErrorKind::BadArity,
                format!(
                    "{} takes {arity} wire(s), found {}",
                    name.text.to_ascii_lowercase(),
                    args.len()
                ),
            )
        } else {
            (
                ParseErrorKind::TrailingGarbage,
                format!("unexpected '{}' after instruction", extra.text),
            )
        };
        return Err(ctx.error(extra.column, kind, message));
    }

    c.push(gate, &wires).expect("wires validated above");
    Ok(())
}

/// Canonical text: lowercase labels, single spaces, one instruction per
/// line, trailing newline.
pub fn serialize(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.num_qubits());
    for inst in c.instructions() {
        out.push_str(&inst.gate().label().to_ascii_lowercase());
        for w in inst.wires() {
            out.push(' ');
            out.push_str(&w.to_string());
        }
        out.push('\n');
    }
    out
}
