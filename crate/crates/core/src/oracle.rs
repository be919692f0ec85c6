//! Oracle-machine execution and the bounded one-sided approximators for the
//! machine sets defined by disjointness from a fixed family.
//!
//! An oracle machine has three special states. Entering the query state
//! reads the non-blank word starting at the head as a query; the bounded
//! resolver either answers (the next step moves to the yes or no state,
//! leaving tape and head untouched) or fails to, in which case the run
//! aborts and counts as unknown. A negative answer ("the queried machine's
//! language is *not* disjoint from the family") is the only answer the
//! budgeted resolver can certify, and it always rests on a replayable
//! witness.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::acceptor::{Acceptor, FamilyLevel, LanguageFamily, ProbeSource, ResumableProbe};
use crate::dovetail::{dovetail_search, find_common_element, Witness};
use crate::encode::{decode_machine, Encoding, MalformedEncoding};
use crate::machine::{canonical_state_name, canonicalize, Dir, MachineDef, Rule};
use crate::sim::{Configuration, RunStatus, RunTrace, Runner, SimError, Verdict3};

/// A machine with oracle access: a base table plus the three special states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMachineDef {
    pub base: MachineDef,
    pub query_state: String,
    pub yes_state: String,
    pub no_state: String,
}

impl OracleMachineDef {
    /// Wraps a plain machine, adding fresh unreachable special states.
    pub fn from_plain(base: MachineDef) -> OracleMachineDef {
        let mut base = base;
        let add = |candidate: &str, states: &mut Vec<String>| -> String {
            let mut name = candidate.to_string();
            let mut n = 2;
            while states.contains(&name) {
                name = format!("{candidate}_{n}");
                n += 1;
            }
            states.push(name.clone());
            name
        };
        let query_state = add("ask", &mut base.states);
        let yes_state = add("got_yes", &mut base.states);
        let no_state = add("got_no", &mut base.states);
        OracleMachineDef {
            base,
            query_state,
            yes_state,
            no_state,
        }
    }

    /// Every violated oracle-machine invariant, as human-readable reasons.
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = crate::machine::validate_machine(&self.base)
            .iter()
            .map(|v| v.to_string())
            .collect();
        let specials = [&self.query_state, &self.yes_state, &self.no_state];
        for s in specials {
            if !self.base.states.contains(s) {
                out.push(format!("special state `{s}` is not declared"));
            }
        }
        if specials[0] == specials[1] || specials[0] == specials[2] || specials[1] == specials[2] {
            out.push("the query, yes and no states must be pairwise distinct".into());
        }
        if self.base.rules.iter().any(|r| r.state == self.query_state) {
            out.push(format!(
                "query state `{}` may not have outgoing rules; resolution is external",
                self.query_state
            ));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Canonical form: the base machine canonicalized, special states renamed
/// along with it.
pub fn canonicalize_oracle(odef: &OracleMachineDef) -> OracleMachineDef {
    let states = odef.base.canonical_states();
    let rename = |name: &str| {
        canonical_state_name(states.iter().position(|s| *s == name).unwrap() + 1)
    };
    OracleMachineDef {
        query_state: rename(&odef.query_state),
        yes_state: rename(&odef.yes_state),
        no_state: rename(&odef.no_state),
        base: canonicalize(&odef.base),
    }
}

/// How queries get answered during a run.
#[derive(Debug, Clone)]
pub enum OracleResolver {
    /// Fixed answers per query word; unlisted words stay unresolved. Test
    /// fixtures use this.
    FixedTable(BTreeMap<String, bool>),
    /// Budgeted one-sided approximation of the level-1 set: a query word is
    /// decoded as a machine code and dovetailed against the family for
    /// `sub_budget` steps. Finding a common element certifies the answer
    /// "no"; anything else stays unresolved.
    ApproxS1 {
        family: LanguageFamily,
        sub_budget: u64,
    },
}

/// Answer recorded for one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryAnswer {
    Yes,
    No,
    /// The resolver could not answer within its budget; the run aborted.
    Unresolved,
    /// The query word does not decode as a machine code; the run aborted.
    Malformed,
}

impl QueryAnswer {
    pub fn as_str(&self) -> &'static str {
        match self {
            QueryAnswer::Yes => "yes",
            QueryAnswer::No => "no",
            QueryAnswer::Unresolved => "unresolved",
            QueryAnswer::Malformed => "malformed",
        }
    }
}

impl fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One query event: the step at which the machine entered the query state,
/// the word it asked about, and the answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRecord {
    pub step: u64,
    pub word: String,
    pub answer: QueryAnswer,
}

/// Query event enriched with the witness backing a negative answer.
#[derive(Debug, Clone)]
pub(crate) struct QueryEvent {
    pub(crate) record: QueryRecord,
    pub(crate) witness: Option<Witness>,
}

/// Shared resolver with a per-search memo: the same query word is only ever
/// searched once, later hits are free.
struct ResolverState {
    resolver: OracleResolver,
    memo: RefCell<HashMap<String, (QueryAnswer, Option<Witness>)>>,
}

impl ResolverState {
    fn new(resolver: OracleResolver) -> ResolverState {
        ResolverState {
            resolver,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// `(answer, witness, fresh search cost)`.
    fn resolve(&self, word: &str) -> (QueryAnswer, Option<Witness>, u64) {
        if let Some((answer, witness)) = self.memo.borrow().get(word) {
            return (*answer, witness.clone(), 0);
        }
        let (answer, witness, cost) = match &self.resolver {
            OracleResolver::FixedTable(table) => {
                let answer = match table.get(word) {
                    Some(true) => QueryAnswer::Yes,
                    Some(false) => QueryAnswer::No,
                    None => QueryAnswer::Unresolved,
                };
                (answer, None, 0)
            }
            OracleResolver::ApproxS1 { family, sub_budget } => match decode_machine(word) {
                Err(_) => (QueryAnswer::Malformed, None, 0),
                Ok(def) => {
                    let out = find_common_element(&Acceptor::table(def), family, *sub_budget);
                    match out.verdict {
                        // A common element refutes disjointness: the queried
                        // machine is not in the oracle set.
                        Verdict3::Yes => (QueryAnswer::No, out.witness, out.steps_spent),
                        _ => (QueryAnswer::Unresolved, None, out.steps_spent),
                    }
                }
            },
        };
        self.memo
            .borrow_mut()
            .insert(word.to_string(), (answer, witness.clone()));
        (answer, witness, cost)
    }
}

/// Resumable oracle-machine run.
struct OracleDriver {
    runner: Runner,
    query_state: String,
    yes_state: String,
    no_state: String,
    resolver: Rc<ResolverState>,
    events: Vec<QueryEvent>,
    aborted: bool,
    log: Option<Vec<Configuration>>,
}

impl OracleDriver {
    fn new(
        odef: &OracleMachineDef,
        input: &str,
        resolver: Rc<ResolverState>,
        log: bool,
    ) -> Result<OracleDriver, SimError> {
        debug_assert!(odef.is_valid(), "oracle driver requires a valid oracle machine");
        let runner = Runner::new(&odef.base, input)?;
        let log = log.then(|| vec![runner.to_configuration()]);
        Ok(OracleDriver {
            runner,
            query_state: odef.query_state.clone(),
            yes_state: odef.yes_state.clone(),
            no_state: odef.no_state.clone(),
            resolver,
            events: Vec::new(),
            aborted: false,
            log,
        })
    }

    fn push_log(&mut self) {
        if let Some(log) = &mut self.log {
            if self.runner.steps() + 1 > log.len() as u64 {
                log.push(self.runner.to_configuration());
            }
        }
    }

    /// Advances the machine to at most `cap` machine steps, resolving
    /// queries as they come. Returns the freshly charged work: new machine
    /// steps plus any fresh resolver search cost (the latter can push one
    /// call's charge past the caller's headroom; searches are atomic).
    fn advance(&mut self, cap: u64) -> u64 {
        if self.aborted {
            return 0;
        }
        let steps_before = self.runner.steps();
        let mut resolver_cost = 0u64;
        loop {
            let chunk_cap = if self.log.is_some() {
                cap.min(self.runner.steps() + 1)
            } else {
                cap
            };
            let status = self.runner.advance_or_pause(chunk_cap, &self.query_state);
            self.push_log();
            match status {
                Some(RunStatus::Halted { .. }) => break,
                Some(RunStatus::Running) => {
                    if self.runner.steps() >= cap {
                        break;
                    }
                }
                None => {
                    // Paused in the query state. The resolution is the next
                    // move, so it needs budget.
                    if self.runner.steps() >= cap {
                        break;
                    }
                    let word = self.runner.word_at_head();
                    let (answer, witness, cost) = self.resolver.resolve(&word);
                    resolver_cost += cost;
                    self.events.push(QueryEvent {
                        record: QueryRecord {
                            step: self.runner.steps(),
                            word,
                            answer,
                        },
                        witness,
                    });
                    match answer {
                        QueryAnswer::Yes => self.runner.resolve_to_state(&self.yes_state),
                        QueryAnswer::No => self.runner.resolve_to_state(&self.no_state),
                        QueryAnswer::Unresolved | QueryAnswer::Malformed => {
                            self.aborted = true;
                            break;
                        }
                    }
                    self.push_log();
                }
            }
        }
        (self.runner.steps() - steps_before) + resolver_cost
    }

    /// A run aborted by an unanswerable query never resolves.
    fn resolution(&self) -> Option<(bool, u64)> {
        if self.aborted {
            None
        } else {
            self.runner.halted()
        }
    }

    fn trace(&self, budget: u64) -> RunTrace {
        self.runner.trace(budget, self.log.clone())
    }

    fn records(&self) -> Vec<QueryRecord> {
        self.events.iter().map(|e| e.record.clone()).collect()
    }
}

/// Runs an oracle machine for at most `budget` steps. Query resolution
/// steps count like machine steps; a query the resolver cannot answer
/// terminates the run with a budget-exhausted outcome and is marked in the
/// query log.
pub fn run_oracle_machine(
    odef: &OracleMachineDef,
    resolver: &OracleResolver,
    input: &str,
    budget: u64,
) -> Result<(RunTrace, Vec<QueryRecord>), SimError> {
    let state = Rc::new(ResolverState::new(resolver.clone()));
    let mut driver = OracleDriver::new(odef, input, state, false)?;
    driver.advance(budget);
    Ok((driver.trace(budget), driver.records()))
}

/// Internal logged run used by the transcript recorder: full configuration
/// log plus witness-enriched query events.
pub(crate) struct LoggedOracleRun {
    pub(crate) trace: RunTrace,
    pub(crate) events: Vec<QueryEvent>,
}

pub(crate) fn run_oracle_machine_logged(
    odef: &OracleMachineDef,
    resolver: &OracleResolver,
    input: &str,
    budget: u64,
) -> Result<LoggedOracleRun, SimError> {
    let state = Rc::new(ResolverState::new(resolver.clone()));
    let mut driver = OracleDriver::new(odef, input, state, true)?;
    driver.advance(budget);
    Ok(LoggedOracleRun {
        trace: driver.trace(budget),
        events: driver.events.clone(),
    })
}

/// Bounded, one-sided membership in the level-1 set ("is the coded
/// machine's language disjoint from the family?"): `No` plus a replayable
/// witness when a common element is found within `budget` total steps,
/// `Unknown` otherwise. `Yes` is never returned; disjointness is not
/// semi-decidable from finite runs.
pub fn approx_s1_membership(
    enc: &str,
    family1: &LanguageFamily,
    budget: u64,
) -> Result<(Verdict3, Option<Witness>), MalformedEncoding> {
    assert_eq!(
        family1.level(),
        FamilyLevel::One,
        "level-1 membership takes a level-1 family"
    );
    let def = decode_machine(enc)?;
    let out = find_common_element(&Acceptor::table(def), family1, budget);
    Ok(match out.verdict {
        Verdict3::Yes => (Verdict3::No, out.witness),
        _ => (Verdict3::Unknown(out.steps_spent), None),
    })
}

/// A query some probe run could not get answered, with the probe input it
/// happened on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedQuery {
    pub input: String,
    pub record: QueryRecord,
}

/// Result of the level-2 approximation.
#[derive(Debug, Clone)]
pub struct S2Outcome {
    pub verdict: Verdict3,
    pub witness: Option<Witness>,
    /// Probe runs aborted by unanswerable queries, as diagnostics; such
    /// branches count as unknown, never as acceptance.
    pub unresolved_queries: Vec<UnresolvedQuery>,
    pub steps_spent: u64,
}

struct OracleTarget {
    odef: OracleMachineDef,
    resolver: Rc<ResolverState>,
    diagnostics: Rc<RefCell<Vec<UnresolvedQuery>>>,
}

struct OracleProbe {
    driver: OracleDriver,
    input: String,
    diagnostics: Rc<RefCell<Vec<UnresolvedQuery>>>,
    reported_abort: bool,
}

impl ResumableProbe for OracleProbe {
    fn advance(&mut self, cap: u64) -> u64 {
        let fresh = self.driver.advance(cap);
        if self.driver.aborted && !self.reported_abort {
            self.reported_abort = true;
            if let Some(event) = self.driver.events.last() {
                self.diagnostics.borrow_mut().push(UnresolvedQuery {
                    input: self.input.clone(),
                    record: event.record.clone(),
                });
            }
        }
        fresh
    }

    fn resolution(&self) -> Option<(bool, u64)> {
        self.driver.resolution()
    }

    fn steps_done(&self) -> u64 {
        self.driver.runner.steps()
    }
}

impl ProbeSource for OracleTarget {
    fn alphabet(&self) -> &[char] {
        &self.odef.base.input_alphabet
    }

    fn start(&self, input: &str) -> Box<dyn ResumableProbe> {
        match OracleDriver::new(&self.odef, input, self.resolver.clone(), false) {
            Ok(driver) => Box::new(OracleProbe {
                driver,
                input: input.to_string(),
                diagnostics: self.diagnostics.clone(),
                reported_abort: false,
            }),
            Err(_) => Box::new(crate::acceptor::RejectedProbe),
        }
    }
}

/// Bounded, one-sided membership in the level-2 set ("is the language the
/// oracle machine accepts, with queries resolved against `family1`,
/// disjoint from `family2`?"): dovetails the oracle machine against
/// `family2`, resolving queries with the budgeted level-1 approximator.
/// `No` plus a witness when a common element is found; `Unknown` otherwise;
/// never `Yes`.
pub fn approx_s2_membership(
    odef: &OracleMachineDef,
    family1: &LanguageFamily,
    family2: &LanguageFamily,
    budget: u64,
    sub_budget: u64,
) -> S2Outcome {
    assert_eq!(family1.level(), FamilyLevel::One);
    assert_eq!(family2.level(), FamilyLevel::Two);
    debug_assert!(odef.is_valid());

    let resolver = Rc::new(ResolverState::new(OracleResolver::ApproxS1 {
        family: family1.clone(),
        sub_budget,
    }));
    let diagnostics = Rc::new(RefCell::new(Vec::new()));
    let target = OracleTarget {
        odef: odef.clone(),
        resolver,
        diagnostics: diagnostics.clone(),
    };
    let out = dovetail_search(&target, family2, budget);
    let verdict = match out.verdict {
        Verdict3::Yes => Verdict3::No,
        other => other,
    };
    S2Outcome {
        verdict,
        witness: out.witness,
        unresolved_queries: diagnostics.take(),
        steps_spent: out.steps_spent,
    }
}

/// Builds the one-query oracle machine for a fixed machine code: it skips
/// its (unary) input, writes the code one cell past it, returns to the start
/// of the code and asks the oracle about it. The no state is the only final
/// state, so the machine accepts its input exactly when the answer is "no";
/// a "yes" answer halts non-accepting.
pub fn single_query_machine(enc: &Encoding) -> OracleMachineDef {
    let bits: Vec<char> = enc.as_str().chars().collect();
    assert!(!bits.is_empty(), "machine codes are never empty");

    let writer = |i: usize| format!("w{i}");
    let mut states = vec!["skip".to_string()];
    states.extend((0..bits.len()).map(writer));
    states.extend(["ret", "ask", "yes", "no"].map(String::from));

    let mut rules = vec![
        Rule { state: "skip".into(), read: '1', next: "skip".into(), write: '1', dir: Dir::R },
        Rule { state: "skip".into(), read: 'B', next: writer(0), write: 'B', dir: Dir::R },
    ];
    for (i, &bit) in bits.iter().enumerate() {
        let (next, dir) = if i + 1 < bits.len() {
            (writer(i + 1), Dir::R)
        } else {
            ("ret".to_string(), Dir::L)
        };
        rules.push(Rule {
            state: writer(i),
            read: 'B',
            next,
            write: bit,
            dir,
        });
    }
    rules.push(Rule { state: "ret".into(), read: '0', next: "ret".into(), write: '0', dir: Dir::L });
    rules.push(Rule { state: "ret".into(), read: '1', next: "ret".into(), write: '1', dir: Dir::L });
    rules.push(Rule { state: "ret".into(), read: 'B', next: "ask".into(), write: 'B', dir: Dir::R });

    OracleMachineDef {
        base: MachineDef {
            name: "single_query".into(),
            states,
            input_alphabet: vec!['1'],
            tape_alphabet: vec!['1', '0', 'B'],
            blank: 'B',
            start_state: "skip".into(),
            final_states: vec!["no".into()],
            pan_states: vec![],
            rules,
        },
        query_state: "ask".into(),
        yes_state: "yes".into(),
        no_state: "no".into(),
    }
}
