//! Bounded deterministic simulation.
//!
//! The tape is two-way infinite and sparse: a [`Configuration`] stores only
//! non-blank cells. Acceptance means halting (no applicable rule) in a final
//! state. Budgets count machine steps; step 0 is the initial configuration,
//! so a machine whose start state is final and has no applicable rule accepts
//! at step 0.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::machine::MachineDef;

/// An instantaneous description: sparse tape, head position, control state
/// and the number of steps taken so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    /// Non-blank cells only. Reading an absent position yields the blank.
    pub tape: BTreeMap<i64, char>,
    pub head: i64,
    pub state: String,
    pub step_count: u64,
}

impl Configuration {
    pub fn symbol_at(&self, pos: i64, blank: char) -> char {
        self.tape.get(&pos).copied().unwrap_or(blank)
    }

    /// The contiguous non-blank word starting at `pos` and extending right.
    /// Empty if the cell at `pos` is blank.
    pub fn word_at(&self, pos: i64, blank: char) -> String {
        let mut word = String::new();
        let mut p = pos;
        loop {
            let c = self.symbol_at(p, blank);
            if c == blank {
                return word;
            }
            word.push(c);
            p += 1;
        }
    }

    pub fn to_json(&self) -> Value {
        let tape: BTreeMap<String, String> = self
            .tape
            .iter()
            .map(|(pos, sym)| (pos.to_string(), sym.to_string()))
            .collect();
        json!({
            "state": self.state,
            "head": self.head,
            "step": self.step_count,
            "tape": tape,
        })
    }

    /// Parses the JSON produced by [`Configuration::to_json`]. Blank cells
    /// are normalised away using `blank`.
    pub fn from_json(value: &Value, blank: char) -> Result<Configuration, String> {
        let obj = value.as_object().ok_or("configuration must be an object")?;
        let state = obj
            .get("state")
            .and_then(Value::as_str)
            .ok_or("configuration `state` must be a string")?
            .to_string();
        let head = obj
            .get("head")
            .and_then(Value::as_i64)
            .ok_or("configuration `head` must be an integer")?;
        let step_count = obj
            .get("step")
            .and_then(Value::as_u64)
            .ok_or("configuration `step` must be a non-negative integer")?;
        let mut tape = BTreeMap::new();
        let cells = obj
            .get("tape")
            .and_then(Value::as_object)
            .ok_or("configuration `tape` must be an object")?;
        for (pos, sym) in cells {
            let pos: i64 = pos.parse().map_err(|_| "tape key must be an integer")?;
            let sym = sym
                .as_str()
                .and_then(|s| {
                    let mut cs = s.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => Some(c),
                        _ => None,
                    }
                })
                .ok_or("tape cell must be a single-character string")?;
            if sym != blank {
                tape.insert(pos, sym);
            }
        }
        Ok(Configuration {
            tape,
            head,
            state,
            step_count,
        })
    }
}

/// How a bounded run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Halted in a final state after the given number of steps.
    AcceptedAt(u64),
    /// Halted in a non-final state after the given number of steps.
    HaltedNonAccepting(u64),
    /// Still running when the budget ran out.
    BudgetExhausted(u64),
}

impl Outcome {
    pub fn is_accepting(&self) -> bool {
        matches!(self, Outcome::AcceptedAt(_))
    }

    pub fn steps(&self) -> u64 {
        match *self {
            Outcome::AcceptedAt(s) | Outcome::HaltedNonAccepting(s) | Outcome::BudgetExhausted(s) => s,
        }
    }
}

/// The observable result of a bounded run: the outcome, every entry into a
/// pan state, and (when requested) the full configuration log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub outcome: Outcome,
    /// `(step, state)` for every step that entered a pan state, in order.
    /// A run that starts in a pan state records an event at step 0.
    pub pan_events: Vec<(u64, String)>,
    pub step_log: Option<Vec<Configuration>>,
}

impl RunTrace {
    pub fn to_json(&self) -> Value {
        let (outcome, steps) = match self.outcome {
            Outcome::AcceptedAt(s) => ("accepted", s),
            Outcome::HaltedNonAccepting(s) => ("halted_non_accepting", s),
            Outcome::BudgetExhausted(b) => ("budget_exhausted", b),
        };
        let pan_events: Vec<Value> = self
            .pan_events
            .iter()
            .map(|(step, state)| json!([step, state]))
            .collect();
        let mut doc = json!({
            "outcome": outcome,
            "steps": steps,
            "pan_events": pan_events,
        });
        if let Some(log) = &self.step_log {
            doc["log"] = Value::Array(log.iter().map(Configuration::to_json).collect());
        }
        doc
    }
}

/// One-sided verdict for a semi-decidable query. `Yes` and `No` are
/// definitive and stay fixed at every larger budget; `Unknown` carries the
/// number of steps actually spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict3 {
    Yes,
    No,
    Unknown(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Yes,
    No,
    Unknown,
}

impl Verdict3 {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict3::Yes => VerdictKind::Yes,
            Verdict3::No => VerdictKind::No,
            Verdict3::Unknown(_) => VerdictKind::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict3::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict3::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict3::Unknown(_))
    }

    pub fn as_str(&self) -> &'static str {
        match self.kind() {
            VerdictKind::Yes => "yes",
            VerdictKind::No => "no",
            VerdictKind::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("input symbol `{symbol}` at position {position} is not in the input alphabet")]
    InputAlphabetViolation { position: usize, symbol: char },
}

/// The initial configuration for `input`: input written on cells `0..len`,
/// head at 0, start state, step 0.
pub fn initial_configuration(def: &MachineDef, input: &str) -> Result<Configuration, SimError> {
    let mut tape = BTreeMap::new();
    for (i, c) in input.chars().enumerate() {
        if !def.input_alphabet.contains(&c) {
            return Err(SimError::InputAlphabetViolation {
                position: i,
                symbol: c,
            });
        }
        if c != def.blank {
            tape.insert(i as i64, c);
        }
    }
    Ok(Configuration {
        tape,
        head: 0,
        state: def.start_state.clone(),
        step_count: 0,
    })
}

/// Result of a single step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult {
    Next(Configuration),
    /// No rule applies to the current (state, symbol) pair.
    Halted,
}

/// Applies one transition to `c`, or reports that none applies. Pure; the
/// bounded runner agrees with iterating this function.
pub fn step_machine(def: &MachineDef, c: &Configuration) -> StepResult {
    let read = c.symbol_at(c.head, def.blank);
    match def.rule_for(&c.state, read) {
        None => StepResult::Halted,
        Some(rule) => {
            let mut tape = c.tape.clone();
            if rule.write == def.blank {
                tape.remove(&c.head);
            } else {
                tape.insert(c.head, rule.write);
            }
            let head = match rule.dir {
                crate::machine::Dir::L => c.head - 1,
                crate::machine::Dir::R => c.head + 1,
            };
            StepResult::Next(Configuration {
                tape,
                head,
                state: rule.next.clone(),
                step_count: c.step_count + 1,
            })
        }
    }
}

/// How a runner's bounded advance ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RunStatus {
    Halted { accepted: bool, at: u64 },
    Running,
}

type SymIdx = u16;

#[derive(Debug, Clone, Copy)]
struct CompiledRule {
    next: u32,
    write: SymIdx,
    move_right: bool,
}

/// Indexed, resumable simulation engine. `advance(cap)` runs until the
/// machine halts or `steps == cap`; calling it again with a larger cap
/// continues the same run, which lets the dovetailer revisit a (machine,
/// input) pair without re-simulating the prefix.
#[derive(Debug, Clone)]
pub(crate) struct Runner {
    trans: Vec<Vec<Option<CompiledRule>>>,
    finals: Vec<bool>,
    pans: Vec<bool>,
    state_names: Vec<String>,
    symbols: Vec<char>,
    blank: SymIdx,
    right: Vec<SymIdx>,
    left: Vec<SymIdx>,
    head: i64,
    state: u32,
    steps: u64,
    pan_events: Vec<(u64, u32)>,
    halted: Option<(bool, u64)>,
}

impl Runner {
    pub(crate) fn new(def: &MachineDef, input: &str) -> Result<Runner, SimError> {
        debug_assert!(def.is_valid(), "Runner requires a valid machine");
        let state_names = def.states.clone();
        let symbols = def.tape_alphabet.clone();
        let state_idx =
            |name: &str| state_names.iter().position(|s| s == name).unwrap() as u32;
        let sym_idx = |c: char| symbols.iter().position(|s| *s == c).unwrap() as SymIdx;

        let mut trans = vec![vec![None; symbols.len()]; state_names.len()];
        for r in &def.rules {
            let slot = &mut trans[state_idx(&r.state) as usize][sym_idx(r.read) as usize];
            if slot.is_none() {
                *slot = Some(CompiledRule {
                    next: state_idx(&r.next),
                    write: sym_idx(r.write),
                    move_right: r.dir == crate::machine::Dir::R,
                });
            }
        }
        let finals: Vec<bool> = state_names.iter().map(|s| def.is_final(s)).collect();
        let pans: Vec<bool> = state_names.iter().map(|s| def.is_pan(s)).collect();

        let blank = sym_idx(def.blank);
        let mut right = Vec::with_capacity(input.len());
        for (i, c) in input.chars().enumerate() {
            if !def.input_alphabet.contains(&c) {
                return Err(SimError::InputAlphabetViolation {
                    position: i,
                    symbol: c,
                });
            }
            right.push(sym_idx(c));
        }

        let state = state_idx(&def.start_state);
        let mut pan_events = Vec::new();
        if pans[state as usize] {
            pan_events.push((0, state));
        }
        Ok(Runner {
            trans,
            finals,
            pans,
            state_names,
            symbols,
            blank,
            right,
            left: Vec::new(),
            head: 0,
            state,
            steps: 0,
            pan_events,
            halted: None,
        })
    }

    fn read(&self) -> SymIdx {
        if self.head >= 0 {
            self.right.get(self.head as usize).copied().unwrap_or(self.blank)
        } else {
            self.left
                .get((-self.head - 1) as usize)
                .copied()
                .unwrap_or(self.blank)
        }
    }

    fn write(&mut self, sym: SymIdx) {
        let (vec, idx) = if self.head >= 0 {
            (&mut self.right, self.head as usize)
        } else {
            (&mut self.left, (-self.head - 1) as usize)
        };
        if idx >= vec.len() {
            vec.resize(idx + 1, self.blank);
        }
        vec[idx] = sym;
    }

    pub(crate) fn steps(&self) -> u64 {
        self.steps
    }

    /// `Some((accepted, at))` once the run has halted.
    pub(crate) fn halted(&self) -> Option<(bool, u64)> {
        self.halted
    }

    pub(crate) fn current_state_name(&self) -> &str {
        &self.state_names[self.state as usize]
    }

    pub(crate) fn in_state(&self, name: &str) -> bool {
        self.current_state_name() == name
    }

    /// Forces the control state; used by the oracle driver to apply a query
    /// resolution step (tape and head unchanged, one step consumed).
    pub(crate) fn resolve_to_state(&mut self, name: &str) {
        debug_assert!(self.halted.is_none());
        let idx = self
            .state_names
            .iter()
            .position(|s| s == name)
            .expect("resolution state must be declared") as u32;
        self.state = idx;
        self.steps += 1;
        if self.pans[idx as usize] {
            self.pan_events.push((self.steps, idx));
        }
    }

    /// The non-blank word starting at the head and extending right.
    pub(crate) fn word_at_head(&self) -> String {
        let mut word = String::new();
        let mut pos = self.head;
        loop {
            let sym = if pos >= 0 {
                self.right.get(pos as usize).copied().unwrap_or(self.blank)
            } else {
                self.left.get((-pos - 1) as usize).copied().unwrap_or(self.blank)
            };
            if sym == self.blank {
                return word;
            }
            word.push(self.symbols[sym as usize]);
            pos += 1;
        }
    }

    /// Runs until the machine halts or `steps == cap`, whichever first.
    /// Halting is detected even when `steps == cap` already, since detection
    /// consumes no step.
    pub(crate) fn advance(&mut self, cap: u64) -> RunStatus {
        loop {
            if let Some((accepted, at)) = self.halted {
                return RunStatus::Halted { accepted, at };
            }
            let sym = self.read();
            match self.trans[self.state as usize][sym as usize] {
                None => {
                    let accepted = self.finals[self.state as usize];
                    self.halted = Some((accepted, self.steps));
                    return RunStatus::Halted {
                        accepted,
                        at: self.steps,
                    };
                }
                Some(rule) => {
                    if self.steps >= cap {
                        return RunStatus::Running;
                    }
                    self.write(rule.write);
                    self.head += if rule.move_right { 1 } else { -1 };
                    self.state = rule.next;
                    self.steps += 1;
                    if self.pans[rule.next as usize] {
                        self.pan_events.push((self.steps, rule.next));
                    }
                }
            }
        }
    }

    /// Like `advance`, but returns control whenever the machine sits in
    /// `pause_state` (before consuming the step that would leave it). Drives
    /// the oracle query loop.
    pub(crate) fn advance_or_pause(&mut self, cap: u64, pause_state: &str) -> Option<RunStatus> {
        loop {
            if self.halted.is_none() && self.in_state(pause_state) {
                return None;
            }
            if let Some((accepted, at)) = self.halted {
                return Some(RunStatus::Halted { accepted, at });
            }
            let sym = self.read();
            match self.trans[self.state as usize][sym as usize] {
                None => {
                    let accepted = self.finals[self.state as usize];
                    self.halted = Some((accepted, self.steps));
                    return Some(RunStatus::Halted {
                        accepted,
                        at: self.steps,
                    });
                }
                Some(rule) => {
                    if self.steps >= cap {
                        return Some(RunStatus::Running);
                    }
                    self.write(rule.write);
                    self.head += if rule.move_right { 1 } else { -1 };
                    self.state = rule.next;
                    self.steps += 1;
                    if self.pans[rule.next as usize] {
                        self.pan_events.push((self.steps, rule.next));
                    }
                }
            }
        }
    }

    pub(crate) fn pan_events(&self) -> Vec<(u64, String)> {
        self.pan_events
            .iter()
            .map(|&(step, idx)| (step, self.state_names[idx as usize].clone()))
            .collect()
    }

    pub(crate) fn to_configuration(&self) -> Configuration {
        let mut tape = BTreeMap::new();
        for (i, &sym) in self.right.iter().enumerate() {
            if sym != self.blank {
                tape.insert(i as i64, self.symbols[sym as usize]);
            }
        }
        for (i, &sym) in self.left.iter().enumerate() {
            if sym != self.blank {
                tape.insert(-(i as i64) - 1, self.symbols[sym as usize]);
            }
        }
        Configuration {
            tape,
            head: self.head,
            state: self.state_names[self.state as usize].clone(),
            step_count: self.steps,
        }
    }

    pub(crate) fn trace(&self, budget: u64, log: Option<Vec<Configuration>>) -> RunTrace {
        let outcome = match self.halted {
            Some((true, at)) => Outcome::AcceptedAt(at),
            Some((false, at)) => Outcome::HaltedNonAccepting(at),
            None => Outcome::BudgetExhausted(budget),
        };
        RunTrace {
            outcome,
            pan_events: self.pan_events(),
            step_log: log,
        }
    }
}

/// Runs `def` on `input` for at most `budget` steps.
pub fn run_machine(def: &MachineDef, input: &str, budget: u64) -> Result<RunTrace, SimError> {
    let mut runner = Runner::new(def, input)?;
    runner.advance(budget);
    Ok(runner.trace(budget, None))
}

/// As [`run_machine`], but records every configuration from step 0 to the
/// last one reached.
pub fn run_machine_logged(def: &MachineDef, input: &str, budget: u64) -> Result<RunTrace, SimError> {
    let mut runner = Runner::new(def, input)?;
    let mut log = vec![runner.to_configuration()];
    loop {
        let before = runner.steps();
        let status = runner.advance((before + 1).min(budget));
        if runner.steps() > before {
            log.push(runner.to_configuration());
        }
        match status {
            RunStatus::Halted { .. } => break,
            RunStatus::Running if runner.steps() >= budget => break,
            RunStatus::Running => {}
        }
    }
    Ok(runner.trace(budget, Some(log)))
}

/// Bounded membership query: `Yes` iff `def` accepts `w` within `n` steps,
/// `No` iff it halts non-accepting within `n` steps, `Unknown(n)` otherwise.
/// Monotone in `n`: a definitive verdict never changes at a larger budget.
pub fn accepts_within(def: &MachineDef, w: &str, n: u64) -> Result<Verdict3, SimError> {
    Ok(match run_machine(def, w, n)?.outcome {
        Outcome::AcceptedAt(_) => Verdict3::Yes,
        Outcome::HaltedNonAccepting(_) => Verdict3::No,
        Outcome::BudgetExhausted(b) => Verdict3::Unknown(b),
    })
}
