//! The fixture catalog: concrete validated machines for the example
//! languages (unary multiples and primes) plus the standard degenerate
//! fixtures every property test needs. Each entry pairs its transition table
//! with a native reference predicate used only for cross-checking.
//!
//! Every table entry also ships as a `.tm` source file under `machines/`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::acceptor::Acceptor;
use crate::dovetail::string_by_index;
use crate::parse::parse_machine;
use crate::sim::{run_machine, Outcome, Verdict3};

/// One catalog entry.
#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: &'static str,
    /// The table machine, wrapped as an acceptor. All core entries are
    /// genuine transition tables.
    pub acceptor: Acceptor,
    pub intended_language: &'static str,
    /// Bounded reference predicate: the ground truth the table machine is
    /// cross-checked against up to `check_len`.
    pub native_oracle: fn(&str) -> bool,
    /// Lengths up to which table and native oracle are known to agree.
    pub check_len: usize,
    /// True for the one entry that never halts; its verifier rows are all
    /// expected to stay unknown.
    pub never_halts: bool,
}

impl ZooEntry {
    pub fn machine(&self) -> &crate::machine::MachineDef {
        self.acceptor
            .as_table()
            .expect("every zoo entry is a table machine")
    }

    pub fn source(&self) -> &'static str {
        source_for(self.name).expect("every zoo entry has a source file")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error("unknown zoo machine `{0}`")]
    UnknownName(String),
}

fn unary_count(w: &str) -> Option<usize> {
    w.chars().all(|c| c == '1').then(|| w.chars().count())
}

fn native_accept_all(_w: &str) -> bool {
    true
}

fn native_empty(_w: &str) -> bool {
    false
}

fn native_loop(_w: &str) -> bool {
    false
}

fn native_mult2(w: &str) -> bool {
    matches!(unary_count(w), Some(n) if n >= 4 && n % 2 == 0)
}

fn native_mult3(w: &str) -> bool {
    matches!(unary_count(w), Some(n) if n >= 6 && n % 3 == 0)
}

fn native_mult6(w: &str) -> bool {
    matches!(unary_count(w), Some(n) if n >= 6 && n % 6 == 0)
}

/// Trial-division primality; the reference predicate for PRIME.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn native_prime(w: &str) -> bool {
    matches!(unary_count(w), Some(n) if is_prime(n))
}

fn native_pandemo(w: &str) -> bool {
    w == "1"
}

const SOURCES: &[(&str, &str)] = &[
    ("ACCEPT_ALL", include_str!("../machines/accept_all.tm")),
    ("EMPTY", include_str!("../machines/empty.tm")),
    ("LOOP", include_str!("../machines/loop.tm")),
    ("MULT2", include_str!("../machines/mult2.tm")),
    ("MULT3", include_str!("../machines/mult3.tm")),
    ("MULT6", include_str!("../machines/mult6.tm")),
    ("PRIME", include_str!("../machines/prime.tm")),
    ("PANDEMO", include_str!("../machines/pandemo.tm")),
];

fn source_for(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn catalog() -> &'static Vec<ZooEntry> {
    static CATALOG: OnceLock<Vec<ZooEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let table = |name: &str| {
            let def = parse_machine(source_for(name).unwrap())
                .unwrap_or_else(|e| panic!("zoo machine {name} failed to parse: {e}"));
            Acceptor::table(def)
        };
        vec![
            ZooEntry {
                name: "ACCEPT_ALL",
                acceptor: table("ACCEPT_ALL"),
                intended_language: "every string over {0,1}",
                native_oracle: native_accept_all,
                check_len: 8,
                never_halts: false,
            },
            ZooEntry {
                name: "EMPTY",
                acceptor: table("EMPTY"),
                intended_language: "the empty language",
                native_oracle: native_empty,
                check_len: 200,
                never_halts: false,
            },
            ZooEntry {
                name: "LOOP",
                acceptor: table("LOOP"),
                intended_language: "the empty language (by never halting)",
                native_oracle: native_loop,
                check_len: 200,
                never_halts: true,
            },
            ZooEntry {
                name: "MULT2",
                acceptor: table("MULT2"),
                intended_language: "1^n for n in {4, 6, 8, ...}",
                native_oracle: native_mult2,
                check_len: 200,
                never_halts: false,
            },
            ZooEntry {
                name: "MULT3",
                acceptor: table("MULT3"),
                intended_language: "1^n for n in {6, 9, 12, ...}",
                native_oracle: native_mult3,
                check_len: 200,
                never_halts: false,
            },
            ZooEntry {
                name: "MULT6",
                acceptor: table("MULT6"),
                intended_language: "1^n for n in {6, 12, 18, ...}",
                native_oracle: native_mult6,
                check_len: 200,
                never_halts: false,
            },
            ZooEntry {
                name: "PRIME",
                acceptor: table("PRIME"),
                intended_language: "1^n for prime n",
                native_oracle: native_prime,
                check_len: 200,
                never_halts: false,
            },
            ZooEntry {
                name: "PANDEMO",
                acceptor: table("PANDEMO"),
                intended_language: "exactly the string 1",
                native_oracle: native_pandemo,
                check_len: 200,
                never_halts: false,
            },
        ]
    })
}

/// Looks up a catalog entry by name (case-insensitive).
pub fn zoo_get(name: &str) -> Result<&'static ZooEntry, ZooError> {
    let upper = name.to_ascii_uppercase();
    catalog()
        .iter()
        .find(|e| e.name == upper)
        .ok_or_else(|| ZooError::UnknownName(name.to_string()))
}

/// Every catalog entry, in fixed order.
pub fn zoo_list() -> Vec<&'static ZooEntry> {
    catalog().iter().collect()
}

/// One cross-check row: the table machine's bounded verdict against the
/// native predicate. `agrees` is `None` while the verdict is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZooCheck {
    pub input: String,
    pub verdict: Verdict3,
    pub native: bool,
    pub agrees: Option<bool>,
}

/// Result of running a catalog entry against its native oracle. `rows`
/// holds only the problematic inputs (disagreements and unknowns); clean
/// agreements are just counted.
#[derive(Debug, Clone)]
pub struct ZooReport {
    pub name: String,
    pub checked: usize,
    pub rows: Vec<ZooCheck>,
    pub disagreements: usize,
    pub unknowns: usize,
    /// Unknowns are expected for the never-halting entry.
    pub expected_unknowns: bool,
}

/// Runs the named entry on `1^n` for `n <= max_n` (or on every string of
/// length `<= max_n` for entries over a non-unary alphabet) and compares each
/// bounded verdict with the native oracle, listing every disagreement or
/// unknown.
pub fn zoo_verify(name: &str, max_n: usize, budget: u64) -> Result<ZooReport, ZooError> {
    let entry = zoo_get(name)?;
    let def = entry.machine();

    let inputs: Vec<String> = if def.input_alphabet == ['1'] {
        (0..=max_n).map(|n| "1".repeat(n)).collect()
    } else {
        let mut v = Vec::new();
        let mut j = 1u64;
        loop {
            let w = string_by_index(&def.input_alphabet, j);
            if w.chars().count() > max_n {
                break;
            }
            v.push(w);
            j += 1;
        }
        v
    };

    let checked = inputs.len();
    let mut rows = Vec::new();
    let mut disagreements = 0;
    let mut unknowns = 0;
    for input in inputs {
        let native = (entry.native_oracle)(&input);
        let verdict = match run_machine(def, &input, budget)
            .expect("zoo inputs are over the entry's alphabet")
            .outcome
        {
            Outcome::AcceptedAt(_) => Verdict3::Yes,
            Outcome::HaltedNonAccepting(_) => Verdict3::No,
            Outcome::BudgetExhausted(b) => Verdict3::Unknown(b),
        };
        let agrees = match verdict {
            Verdict3::Yes => Some(native),
            Verdict3::No => Some(!native),
            Verdict3::Unknown(_) => None,
        };
        match agrees {
            Some(false) => disagreements += 1,
            None => unknowns += 1,
            Some(true) => continue,
        }
        rows.push(ZooCheck {
            input,
            verdict,
            native,
            agrees,
        });
    }

    Ok(ZooReport {
        name: entry.name.to_string(),
        checked,
        rows,
        disagreements,
        unknowns,
        expected_unknowns: entry.never_halts,
    })
}
