//! The machine model: a deterministic single-tape machine extended with a
//! distinguished set of *pan states* whose transitions may not alter the tape.
//!
//! A [`MachineDef`] is plain data and may be built by hand in any shape;
//! [`validate_machine`] reports every invariant violation as data. The parser
//! and the binary decoder only ever hand out definitions that validate
//! cleanly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Head movement. The tape is two-way infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    L,
    R,
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dir::L => write!(f, "L"),
            Dir::R => write!(f, "R"),
        }
    }
}

/// One transition table entry: in `state`, reading `read`, write `write`,
/// move `dir` and switch to `next`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub state: String,
    pub read: char,
    pub next: String,
    pub write: char,
    pub dir: Dir,
}

/// A machine definition.
///
/// `states`, `input_alphabet` and `tape_alphabet` are ordered sets: their
/// declaration order fixes the canonical index assignment used by the binary
/// encoding (start state first, blank symbol first).
///
/// Invariants (reported by [`validate_machine`]):
/// - every identifier mentioned anywhere is declared,
/// - `input_alphabet` is a subset of `tape_alphabet` minus the blank,
/// - at most one rule per `(state, read)` pair,
/// - no state is both a pan state and a final state,
/// - rules leaving a pan state write back the symbol they read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineDef {
    pub name: String,
    pub states: Vec<String>,
    pub input_alphabet: Vec<char>,
    pub tape_alphabet: Vec<char>,
    pub blank: char,
    pub start_state: String,
    pub final_states: Vec<String>,
    pub pan_states: Vec<String>,
    pub rules: Vec<Rule>,
}

/// A single invariant violation. Violations are data, not errors: a
/// hand-built definition may carry several at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A state or symbol is mentioned but not declared.
    UndeclaredIdentifier(String),
    /// Two rules share the same `(state, symbol)` key.
    DuplicateRule(String, char),
    /// A state appears in both the pan set and the final set.
    PanFinalOverlap(String),
    /// A rule leaving a pan state rewrites the cell it read.
    PanWritesTape(String, char),
    /// The blank symbol is missing from the tape alphabet.
    BlankNotInTapeAlphabet(char),
    /// An input symbol is the blank or missing from the tape alphabet.
    InputSymbolNotAllowed(char),
    /// A state is declared twice.
    DuplicateState(String),
    /// A symbol is declared twice within one alphabet.
    DuplicateSymbol(char),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UndeclaredIdentifier(name) => {
                write!(f, "undeclared identifier `{name}`")
            }
            Violation::DuplicateRule(state, sym) => {
                write!(f, "duplicate rule for ({state}, {sym})")
            }
            Violation::PanFinalOverlap(state) => {
                write!(f, "state `{state}` is both a pan state and a final state")
            }
            Violation::PanWritesTape(state, sym) => {
                write!(f, "pan state `{state}` rewrites the tape on symbol `{sym}`")
            }
            Violation::BlankNotInTapeAlphabet(blank) => {
                write!(f, "blank `{blank}` is not in the tape alphabet")
            }
            Violation::InputSymbolNotAllowed(sym) => {
                write!(f, "input symbol `{sym}` must be a non-blank tape symbol")
            }
            Violation::DuplicateState(name) => write!(f, "state `{name}` declared twice"),
            Violation::DuplicateSymbol(sym) => write!(f, "symbol `{sym}` declared twice"),
        }
    }
}

/// Returns every invariant violation of `def`; an empty list means the
/// definition is valid.
pub fn validate_machine(def: &MachineDef) -> Vec<Violation> {
    let mut out = Vec::new();

    let mut seen_states = BTreeSet::new();
    for s in &def.states {
        if !seen_states.insert(s.clone()) {
            out.push(Violation::DuplicateState(s.clone()));
        }
    }
    let mut seen_syms = BTreeSet::new();
    for &c in &def.tape_alphabet {
        if !seen_syms.insert(c) {
            out.push(Violation::DuplicateSymbol(c));
        }
    }
    let mut seen_inputs = BTreeSet::new();
    for &c in &def.input_alphabet {
        if !seen_inputs.insert(c) {
            out.push(Violation::DuplicateSymbol(c));
        }
    }

    if !def.tape_alphabet.contains(&def.blank) {
        out.push(Violation::BlankNotInTapeAlphabet(def.blank));
    }
    for &c in &def.input_alphabet {
        if c == def.blank || !def.tape_alphabet.contains(&c) {
            out.push(Violation::InputSymbolNotAllowed(c));
        }
    }

    let declared = |name: &str| def.states.iter().any(|s| s == name);
    if !declared(&def.start_state) {
        out.push(Violation::UndeclaredIdentifier(def.start_state.clone()));
    }
    for list in [&def.final_states, &def.pan_states] {
        let mut seen = BTreeSet::new();
        for s in list {
            if !declared(s) {
                out.push(Violation::UndeclaredIdentifier(s.clone()));
            }
            if !seen.insert(s.clone()) {
                out.push(Violation::DuplicateState(s.clone()));
            }
        }
    }
    for p in &def.pan_states {
        if def.final_states.contains(p) {
            out.push(Violation::PanFinalOverlap(p.clone()));
        }
    }

    let mut keys = BTreeSet::new();
    for r in &def.rules {
        if !declared(&r.state) {
            out.push(Violation::UndeclaredIdentifier(r.state.clone()));
        }
        if !declared(&r.next) {
            out.push(Violation::UndeclaredIdentifier(r.next.clone()));
        }
        for c in [r.read, r.write] {
            if !def.tape_alphabet.contains(&c) {
                out.push(Violation::UndeclaredIdentifier(c.to_string()));
            }
        }
        if !keys.insert((r.state.clone(), r.read)) {
            out.push(Violation::DuplicateRule(r.state.clone(), r.read));
        }
        if def.pan_states.contains(&r.state) && r.write != r.read {
            out.push(Violation::PanWritesTape(r.state.clone(), r.read));
        }
    }

    out
}

impl MachineDef {
    pub fn is_valid(&self) -> bool {
        validate_machine(self).is_empty()
    }

    pub fn is_final(&self, state: &str) -> bool {
        self.final_states.iter().any(|s| s == state)
    }

    pub fn is_pan(&self, state: &str) -> bool {
        self.pan_states.iter().any(|s| s == state)
    }

    /// Looks up the rule for `(state, read)` by linear scan. The simulator
    /// uses an indexed fast path; this is the reference lookup.
    pub fn rule_for(&self, state: &str, read: char) -> Option<&Rule> {
        self.rules.iter().find(|r| r.state == state && r.read == read)
    }

    /// States in canonical order: the start state first, then every other
    /// state at its first mention (final list, then pan list, then the rules
    /// read left to right), then any mentioned-nowhere states in declaration
    /// order. Canonical indices are 1-based positions herein.
    ///
    /// For machines built by the parser this is exactly the declaration
    /// order, since the parser declares states by mention. Deriving indices
    /// from mentions keeps the binary code of a decoded machine stable
    /// through a render/re-parse cycle.
    pub fn canonical_states(&self) -> Vec<&str> {
        let mut out: Vec<&str> = vec![&self.start_state];
        fn push<'a>(name: &'a str, out: &mut Vec<&'a str>) {
            if !out.contains(&name) {
                out.push(name);
            }
        }
        for s in self.final_states.iter().chain(self.pan_states.iter()) {
            push(s, &mut out);
        }
        for r in &self.rules {
            push(&r.state, &mut out);
            push(&r.next, &mut out);
        }
        for s in &self.states {
            push(s, &mut out);
        }
        out
    }

    /// Tape symbols in canonical order: blank first, then the input alphabet
    /// in declaration order, then the remaining tape symbols in declaration
    /// order. Canonical indices are 1-based positions herein.
    pub fn canonical_symbols(&self) -> Vec<char> {
        let mut out = vec![self.blank];
        for &c in &self.input_alphabet {
            out.push(c);
        }
        for &c in &self.tape_alphabet {
            if c != self.blank && !self.input_alphabet.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

/// Canonical names for non-blank symbols, in canonical index order (index 2
/// maps to `1`, index 3 to `0`, index 4 to `2`, ...). The blank is always
/// `B`. Placing `1` and `0` first keeps the usual unary and binary machines
/// fixed under canonical renaming; in particular a machine that spells a
/// binary machine code on its tape still spells it after canonicalization.
pub(crate) const CANONICAL_SYMBOLS: &str =
    "1023456789abcdefghijklmnopqrstuvwxyzACDEFGHIJKLMNOPQRSTUVWXYZ";

/// Canonical blank character.
pub(crate) const CANONICAL_BLANK: char = 'B';

/// Name a canonical state: 1-based index `i` becomes `q{i}`.
pub(crate) fn canonical_state_name(index: usize) -> String {
    format!("q{index}")
}

/// Name a canonical non-blank symbol: canonical index `i >= 2` picks from the
/// fixed palette. Returns `None` when the palette is exhausted.
pub(crate) fn canonical_symbol_char(index: usize) -> Option<char> {
    debug_assert!(index >= 2);
    CANONICAL_SYMBOLS.chars().nth(index - 2)
}

/// Rewrites a valid machine into canonical form: states renamed `q1, q2, ...`
/// in canonical (first-mention) order and re-listed in that order, symbols
/// renamed from the fixed palette with blank `B`, the machine name
/// normalised to `M`. The final, pan and rule lists keep their stored order,
/// renamed; the binary code reads them positionally.
///
/// Decoding an encoded machine yields exactly this form, and canonical form
/// is a fixed point of render-then-parse (up to states no rule, final list
/// or pan list ever mentions, which the text format cannot express).
pub fn canonicalize(def: &MachineDef) -> MachineDef {
    debug_assert!(def.is_valid(), "canonicalize requires a valid machine");

    let states = def.canonical_states();
    let symbols = def.canonical_symbols();

    let state_idx: BTreeMap<&str, usize> =
        states.iter().enumerate().map(|(i, s)| (*s, i + 1)).collect();
    let sym_idx: BTreeMap<char, usize> =
        symbols.iter().enumerate().map(|(i, c)| (*c, i + 1)).collect();

    let state_name = |name: &str| canonical_state_name(state_idx[name]);
    let sym_char = |c: char| -> char {
        let idx = sym_idx[&c];
        if idx == 1 {
            CANONICAL_BLANK
        } else {
            canonical_symbol_char(idx).expect("canonical symbol palette exhausted")
        }
    };

    MachineDef {
        name: "M".to_string(),
        states: (1..=states.len()).map(canonical_state_name).collect(),
        input_alphabet: (0..def.input_alphabet.len())
            .map(|i| sym_char(symbols[i + 1]))
            .collect(),
        tape_alphabet: (0..symbols.len()).map(|i| sym_char(symbols[i])).collect(),
        blank: CANONICAL_BLANK,
        start_state: canonical_state_name(1),
        final_states: def.final_states.iter().map(|s| state_name(s)).collect(),
        pan_states: def.pan_states.iter().map(|s| state_name(s)).collect(),
        rules: def
            .rules
            .iter()
            .map(|r| Rule {
                state: state_name(&r.state),
                read: sym_char(r.read),
                next: state_name(&r.next),
                write: sym_char(r.write),
                dir: r.dir,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> MachineDef {
        MachineDef {
            name: "T".into(),
            states: vec!["a".into(), "b".into()],
            input_alphabet: vec!['1'],
            tape_alphabet: vec!['1', 'B'],
            blank: 'B',
            start_state: "a".into(),
            final_states: vec!["b".into()],
            pan_states: vec![],
            rules: vec![Rule {
                state: "a".into(),
                read: '1',
                next: "b".into(),
                write: '1',
                dir: Dir::R,
            }],
        }
    }

    #[test]
    fn valid_machine_has_no_violations() {
        assert!(validate_machine(&two_state()).is_empty());
    }

    #[test]
    fn duplicate_rule_detected() {
        let mut def = two_state();
        def.rules.push(def.rules[0].clone());
        let v = validate_machine(&def);
        assert!(v.contains(&Violation::DuplicateRule("a".into(), '1')));
    }

    #[test]
    fn undeclared_start_detected() {
        let mut def = two_state();
        def.start_state = "ghost".into();
        let v = validate_machine(&def);
        assert!(v.contains(&Violation::UndeclaredIdentifier("ghost".into())));
    }

    #[test]
    fn pan_final_overlap_detected() {
        let mut def = two_state();
        def.pan_states = vec!["b".into()];
        let v = validate_machine(&def);
        assert!(v.contains(&Violation::PanFinalOverlap("b".into())));
    }

    #[test]
    fn pan_write_detected() {
        let mut def = two_state();
        def.pan_states = vec!["a".into()];
        def.final_states = vec![];
        def.rules[0].write = 'B';
        let v = validate_machine(&def);
        assert!(v.contains(&Violation::PanWritesTape("a".into(), '1')));
    }

    #[test]
    fn canonical_order_puts_start_first() {
        let mut def = two_state();
        def.states = vec!["b".into(), "a".into()];
        let canon = canonicalize(&def);
        assert_eq!(canon.start_state, "q1");
        assert_eq!(canon.states, vec!["q1", "q2"]);
        assert_eq!(canon.final_states, vec!["q2"]);
        assert_eq!(canon.rules[0].state, "q1");
        assert_eq!(canon.rules[0].next, "q2");
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let canon = canonicalize(&two_state());
        assert_eq!(canonicalize(&canon), canon);
    }
}
