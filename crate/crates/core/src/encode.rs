//! Bit-exact binary encoding of machine descriptions.
//!
//! Grammar, over ASCII `0`/`1`:
//!
//! ```text
//! 0^|Q| 1 0^|Σ| 1 0^|Γ| 111 <pan section> 111 <final section> 111 <rules>
//! ```
//!
//! The pan and final sections list member indices as `0^i` joined by single
//! `1`s, in ascending order. Each rule `(i, j, k, l, m)` is
//! `0^i 1 0^j 1 0^k 1 0^l 1 0^m`; rules are joined by `11` and sorted by
//! `(i, j)`. Indices are canonical: states numbered from 1 with the start
//! state first, symbols numbered from 1 with the blank first, directions
//! `L = 1`, `R = 2`.
//!
//! Decoding is strict: only strings produced by [`encode_machine`] are
//! accepted, so encode and decode form a bijection between valid machines
//! (up to canonical renaming) and their codes.

use std::fmt;

use thiserror::Error;

use crate::machine::{
    canonical_state_name, canonical_symbol_char, Dir, MachineDef, Rule,
    CANONICAL_BLANK, CANONICAL_SYMBOLS,
};

/// A machine code: an ASCII string of `0`s and `1`s.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Encoding(String);

impl Encoding {
    /// Wraps a raw bit string, rejecting anything but `0`/`1` characters.
    pub fn from_bits(bits: &str) -> Result<Encoding, MalformedEncoding> {
        match bits.chars().position(|c| c != '0' && c != '1') {
            Some(offset) => Err(MalformedEncoding {
                offset,
                reason: "expected only 0 and 1".into(),
            }),
            None => Ok(Encoding(bits.to_string())),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The bit string is not the code of any valid machine. `offset` is the
/// 0-based bit position at which decoding failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed encoding at bit {offset}: {reason}")]
pub struct MalformedEncoding {
    pub offset: usize,
    pub reason: String,
}

fn zeros(n: usize) -> String {
    "0".repeat(n)
}

fn section(indices: &[usize]) -> String {
    indices.iter().map(|&i| zeros(i)).collect::<Vec<_>>().join("1")
}

/// Encodes a valid machine. The output depends only on the machine's
/// canonical form: `encode(M) == encode(canonicalize(M))`. Member and rule
/// lists are read positionally, in their stored order.
pub fn encode_machine(def: &MachineDef) -> Encoding {
    debug_assert!(def.is_valid(), "encode_machine requires a valid machine");

    let states = def.canonical_states();
    let symbols = def.canonical_symbols();
    let state_idx = |name: &str| states.iter().position(|s| *s == name).unwrap() + 1;
    let sym_idx = |c: char| symbols.iter().position(|s| *s == c).unwrap() + 1;

    let pans: Vec<usize> = def.pan_states.iter().map(|s| state_idx(s)).collect();
    let finals: Vec<usize> = def.final_states.iter().map(|s| state_idx(s)).collect();

    let rules: Vec<(usize, usize, usize, usize, usize)> = def
        .rules
        .iter()
        .map(|r| {
            (
                state_idx(&r.state),
                sym_idx(r.read),
                state_idx(&r.next),
                sym_idx(r.write),
                match r.dir {
                    Dir::L => 1,
                    Dir::R => 2,
                },
            )
        })
        .collect();

    let mut bits = String::new();
    bits.push_str(&zeros(states.len()));
    bits.push('1');
    bits.push_str(&zeros(def.input_alphabet.len()));
    bits.push('1');
    bits.push_str(&zeros(symbols.len()));
    bits.push_str("111");
    bits.push_str(&section(&pans));
    bits.push_str("111");
    bits.push_str(&section(&finals));
    bits.push_str("111");
    bits.push_str(
        &rules
            .iter()
            .map(|&(i, j, k, l, m)| {
                format!("{}1{}1{}1{}1{}", zeros(i), zeros(j), zeros(k), zeros(l), zeros(m))
            })
            .collect::<Vec<_>>()
            .join("11"),
    );
    Encoding(bits)
}

struct Cursor<'a> {
    bits: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bits: &'a str) -> Result<Cursor<'a>, MalformedEncoding> {
        if let Some(offset) = bits.bytes().position(|b| b != b'0' && b != b'1') {
            return Err(MalformedEncoding {
                offset,
                reason: "expected only 0 and 1".into(),
            });
        }
        Ok(Cursor {
            bits: bits.as_bytes(),
            pos: 0,
        })
    }

    fn fail(&self, reason: impl Into<String>) -> MalformedEncoding {
        MalformedEncoding {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bits.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bits.len()
    }

    fn read_zeros(&mut self) -> usize {
        let start = self.pos;
        while self.peek() == Some(b'0') {
            self.pos += 1;
        }
        self.pos - start
    }

    fn expect_ones(&mut self, n: usize, what: &str) -> Result<(), MalformedEncoding> {
        for _ in 0..n {
            if self.peek() != Some(b'1') {
                return Err(self.fail(format!("expected `{}` ({what})", "1".repeat(n))));
            }
            self.pos += 1;
        }
        Ok(())
    }

    /// Reads a positive count `0^n` (n >= 1).
    fn read_count(&mut self, what: &str) -> Result<usize, MalformedEncoding> {
        let n = self.read_zeros();
        if n == 0 {
            return Err(self.fail(format!("expected at least one 0 ({what})")));
        }
        Ok(n)
    }

    /// Parses a pan/final member section terminated by `111`. Members are
    /// kept in listed order; repeats are rejected.
    fn read_section(&mut self, what: &str) -> Result<Vec<usize>, MalformedEncoding> {
        let mut members = Vec::new();
        if self.peek() == Some(b'1') || self.at_end() {
            self.expect_ones(3, "section terminator")?;
            return Ok(members);
        }
        loop {
            let at = self.pos;
            let i = self.read_count(&format!("{what} member index"))?;
            if members.contains(&i) {
                return Err(MalformedEncoding {
                    offset: at,
                    reason: format!("{what} members may not repeat"),
                });
            }
            members.push(i);
            let mut ones = 0;
            while ones < 3 && self.peek() == Some(b'1') {
                self.pos += 1;
                ones += 1;
            }
            match ones {
                3 => return Ok(members),
                1 if self.peek() == Some(b'0') => continue,
                _ => return Err(self.fail(format!("bad separator inside {what} section"))),
            }
        }
    }
}

/// Decodes a machine code, producing the canonical form of the encoded
/// machine. Inverse of [`encode_machine`] on its image; anything outside the
/// image is rejected with the offending bit offset.
pub fn decode_machine(bits: &str) -> Result<MachineDef, MalformedEncoding> {
    let mut cur = Cursor::new(bits)?;

    let state_count = cur.read_count("state count")?;
    cur.expect_ones(1, "after state count")?;
    let input_count = cur.read_zeros();
    cur.expect_ones(1, "after input alphabet count")?;
    let gamma_at = cur.pos;
    let tape_count = cur.read_count("tape alphabet count")?;
    if input_count > tape_count - 1 {
        return Err(MalformedEncoding {
            offset: gamma_at,
            reason: "input alphabet larger than the non-blank tape alphabet".into(),
        });
    }
    if tape_count - 1 > CANONICAL_SYMBOLS.chars().count() {
        return Err(MalformedEncoding {
            offset: gamma_at,
            reason: "tape alphabet exceeds the canonical symbol palette".into(),
        });
    }
    cur.expect_ones(3, "header terminator")?;

    let pan_at = cur.pos;
    let pans = cur.read_section("pan")?;
    let final_at = cur.pos;
    let finals = cur.read_section("final")?;

    for &i in pans.iter().chain(finals.iter()) {
        if i > state_count {
            return Err(MalformedEncoding {
                offset: if pans.contains(&i) { pan_at } else { final_at },
                reason: format!("member index {i} out of range (|Q| = {state_count})"),
            });
        }
    }
    if let Some(i) = pans.iter().find(|i| finals.contains(i)) {
        return Err(MalformedEncoding {
            offset: final_at,
            reason: format!("state {i} is both pan and final"),
        });
    }

    let mut rules: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    if !cur.at_end() {
        loop {
            let rule_at = cur.pos;
            let mut fields = [0usize; 5];
            for (n, field) in fields.iter_mut().enumerate() {
                *field = cur.read_count("rule field")?;
                if n < 4 {
                    cur.expect_ones(1, "rule field separator")?;
                    if cur.peek() != Some(b'0') {
                        return Err(cur.fail("expected a rule field"));
                    }
                }
            }
            let [i, j, k, l, m] = fields;
            if i > state_count || k > state_count {
                return Err(MalformedEncoding {
                    offset: rule_at,
                    reason: format!("rule state index out of range (|Q| = {state_count})"),
                });
            }
            if j > tape_count || l > tape_count {
                return Err(MalformedEncoding {
                    offset: rule_at,
                    reason: format!("rule symbol index out of range (|Γ| = {tape_count})"),
                });
            }
            if m > 2 {
                return Err(MalformedEncoding {
                    offset: rule_at,
                    reason: "direction must be 1 (L) or 2 (R)".into(),
                });
            }
            if rules.iter().any(|&(pi, pj, ..)| (pi, pj) == (i, j)) {
                return Err(MalformedEncoding {
                    offset: rule_at,
                    reason: "two rules share the same (state, symbol) key".into(),
                });
            }
            if pans.contains(&i) && l != j {
                return Err(MalformedEncoding {
                    offset: rule_at,
                    reason: "rule from a pan state must write the symbol it reads".into(),
                });
            }
            rules.push((i, j, k, l, m));

            if cur.at_end() {
                break;
            }
            cur.expect_ones(2, "rule separator")?;
            if cur.peek() != Some(b'0') {
                return Err(cur.fail("expected a rule after separator"));
            }
        }
    }

    let sym_char = |idx: usize| -> char {
        if idx == 1 {
            CANONICAL_BLANK
        } else {
            canonical_symbol_char(idx).expect("palette bound checked above")
        }
    };

    Ok(MachineDef {
        name: "M".to_string(),
        states: (1..=state_count).map(canonical_state_name).collect(),
        input_alphabet: (2..=input_count + 1).map(sym_char).collect(),
        tape_alphabet: (1..=tape_count).map(sym_char).collect(),
        blank: CANONICAL_BLANK,
        start_state: canonical_state_name(1),
        final_states: finals.into_iter().map(canonical_state_name).collect(),
        pan_states: pans.into_iter().map(canonical_state_name).collect(),
        rules: rules
            .into_iter()
            .map(|(i, j, k, l, m)| Rule {
                state: canonical_state_name(i),
                read: sym_char(j),
                next: canonical_state_name(k),
                write: sym_char(l),
                dir: if m == 1 { Dir::L } else { Dir::R },
            })
            .collect(),
    })
}
