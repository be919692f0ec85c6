//! Line-oriented text format for machine descriptions.
//!
//! ```text
//! machine MULT2            # comments run to end of line
//! input_alphabet: 1
//! tape_alphabet: 1 B       # must include B, the blank
//! start: s0
//! final: acc
//! pan:                     # may be empty
//! delta:
//! s0 1 -> s1 1 R
//! end
//! ```
//!
//! Sections appear in exactly this order. Symbols are single non-whitespace
//! characters other than `#`. States are collected from their mentions: the
//! start state first, then finals, pans and rule states in order of first
//! appearance; that order is the declaration order the canonical encoding
//! indices are derived from.

use thiserror::Error;

use crate::machine::{validate_machine, Dir, MachineDef, Rule, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate rule for ({0}, {1})")]
    DuplicateRule(String, char),
    #[error("undeclared identifier `{0}`")]
    UndeclaredIdentifier(String),
    #[error("state `{0}` is both a pan state and a final state")]
    PanFinalOverlap(String),
    #[error("pan state `{0}` rewrites the tape on symbol `{1}`")]
    PanWritesTape(String, char),
    #[error("invalid machine: {0}")]
    Invalid(Violation),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn violation_error(v: Violation) -> ParseError {
    match v {
        Violation::DuplicateRule(s, c) => ParseError::DuplicateRule(s, c),
        Violation::UndeclaredIdentifier(n) => ParseError::UndeclaredIdentifier(n),
        Violation::PanFinalOverlap(s) => ParseError::PanFinalOverlap(s),
        Violation::PanWritesTape(s, c) => ParseError::PanWritesTape(s, c),
        other => ParseError::Invalid(other),
    }
}

struct Lines<'a> {
    // (1-based line number, content with comments stripped)
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    None
                } else {
                    Some((i + 1, content))
                }
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.items.get(self.pos).copied();
        self.pos += 1;
        item
    }

    fn last_line_no(&self) -> usize {
        self.items.last().map(|(n, _)| *n).unwrap_or(0)
    }
}

fn expect_section<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
) -> Result<(usize, Vec<&'a str>), ParseError> {
    let eof = lines.last_line_no() + 1;
    let (no, content) = lines
        .next()
        .ok_or_else(|| syntax(eof, format!("expected `{keyword}`")))?;
    let mut tokens = content.split_whitespace();
    match tokens.next() {
        Some(head) if head == keyword => Ok((no, tokens.collect())),
        Some(head) => Err(syntax(no, format!("expected `{keyword}`, found `{head}`"))),
        None => Err(syntax(no, format!("expected `{keyword}`"))),
    }
}

fn symbol_token(line: usize, token: &str) -> Result<char, ParseError> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c != '#' => Ok(c),
        _ => Err(syntax(line, format!("`{token}` is not a single-character symbol"))),
    }
}

/// Parses a complete machine description. Any returned machine satisfies all
/// `MachineDef` invariants.
pub fn parse_machine(text: &str) -> Result<MachineDef, ParseError> {
    let mut lines = Lines::new(text);

    let (no, rest) = expect_section(&mut lines, "machine")?;
    let name = match rest.as_slice() {
        [name] => name.to_string(),
        _ => return Err(syntax(no, "expected `machine <name>`")),
    };

    let (no, rest) = expect_section(&mut lines, "input_alphabet:")?;
    let input_alphabet = rest
        .iter()
        .map(|t| symbol_token(no, t))
        .collect::<Result<Vec<_>, _>>()?;

    let (no, rest) = expect_section(&mut lines, "tape_alphabet:")?;
    let tape_alphabet = rest
        .iter()
        .map(|t| symbol_token(no, t))
        .collect::<Result<Vec<_>, _>>()?;
    if !tape_alphabet.contains(&'B') {
        return Err(syntax(no, "tape_alphabet must include `B`, the blank"));
    }

    let (no, rest) = expect_section(&mut lines, "start:")?;
    let start_state = match rest.as_slice() {
        [state] => state.to_string(),
        _ => return Err(syntax(no, "expected `start: <state>`")),
    };

    let (_, rest) = expect_section(&mut lines, "final:")?;
    let mut final_states: Vec<String> = Vec::new();
    for t in rest {
        if !final_states.iter().any(|s| s == t) {
            final_states.push(t.to_string());
        }
    }

    let (_, rest) = expect_section(&mut lines, "pan:")?;
    let mut pan_states: Vec<String> = Vec::new();
    for t in rest {
        if !pan_states.iter().any(|s| s == t) {
            pan_states.push(t.to_string());
        }
    }

    let (no, rest) = expect_section(&mut lines, "delta:")?;
    if !rest.is_empty() {
        return Err(syntax(no, "`delta:` takes no arguments"));
    }

    let mut rules = Vec::new();
    let end_line = loop {
        let eof = lines.last_line_no() + 1;
        let (no, content) = lines
            .next()
            .ok_or_else(|| syntax(eof, "expected a rule or `end`"))?;
        if content == "end" {
            break no;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [state, read, "->", next, write, dir] => {
                let dir = match *dir {
                    "L" => Dir::L,
                    "R" => Dir::R,
                    other => return Err(syntax(no, format!("direction must be L or R, found `{other}`"))),
                };
                rules.push(Rule {
                    state: state.to_string(),
                    read: symbol_token(no, read)?,
                    next: next.to_string(),
                    write: symbol_token(no, write)?,
                    dir,
                });
            }
            _ => {
                return Err(syntax(
                    no,
                    "expected `<state> <sym> -> <state> <sym> <L|R>`",
                ))
            }
        }
    };
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "unexpected content after `end`"));
    }
    let _ = end_line;

    // States in declaration order: start first, then finals, pans and the
    // rule states left to right.
    let mut states: Vec<String> = vec![start_state.clone()];
    let declare = |name: &str, states: &mut Vec<String>| {
        if !states.iter().any(|s| s == name) {
            states.push(name.to_string());
        }
    };
    for s in final_states.iter().chain(pan_states.iter()) {
        declare(s, &mut states);
    }
    for r in &rules {
        declare(&r.state, &mut states);
        declare(&r.next, &mut states);
    }

    let def = MachineDef {
        name,
        states,
        input_alphabet,
        tape_alphabet,
        blank: 'B',
        start_state,
        final_states,
        pan_states,
        rules,
    };

    if let Some(v) = validate_machine(&def).into_iter().next() {
        return Err(violation_error(v));
    }
    Ok(def)
}

/// Renders a valid machine back into the text format. Output re-parses to an
/// equal definition. The machine's blank must be `B`, which is the only blank
/// the format can express.
pub fn to_text(def: &MachineDef) -> String {
    assert_eq!(def.blank, 'B', "the text format fixes the blank symbol to `B`");
    let mut out = String::new();
    out.push_str(&format!("machine {}\n", def.name));
    let syms = |cs: &[char]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    out.push_str(format!("input_alphabet: {}", syms(&def.input_alphabet)).trim_end());
    out.push('\n');
    out.push_str(&format!("tape_alphabet: {}\n", syms(&def.tape_alphabet)));
    out.push_str(&format!("start: {}\n", def.start_state));
    out.push_str(format!("final: {}\n", def.final_states.join(" ")).trim_end());
    out.push('\n');
    out.push_str(format!("pan: {}\n", def.pan_states.join(" ")).trim_end());
    out.push('\n');
    out.push_str("delta:\n");
    for r in &def.rules {
        out.push_str(&format!(
            "{} {} -> {} {} {}\n",
            r.state, r.read, r.next, r.write, r.dir
        ));
    }
    out.push_str("end\n");
    out
}
