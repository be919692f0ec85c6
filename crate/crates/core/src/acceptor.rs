//! A unifying handle over transition-table machines and native bounded
//! predicates, so that machine transformations whose outputs are
//! "simulations within simulations" can still be composed, probed and
//! searched like ordinary machines.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::encode::{encode_machine, Encoding};
use crate::machine::MachineDef;
use crate::sim::{accepts_within, run_machine, Outcome, Runner, SimError, Verdict3};

/// The outcome of one bounded membership probe.
///
/// `steps_executed` is the simulation work actually performed (the halt step,
/// or the full budget when the probe stayed undecided). For a definitive
/// verdict, `decided_at` is a budget at which replaying the probe reproduces
/// it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub verdict: Verdict3,
    pub steps_executed: u64,
    pub decided_at: Option<u64>,
}

impl Probe {
    pub(crate) fn from_outcome(outcome: Outcome) -> Probe {
        match outcome {
            Outcome::AcceptedAt(s) => Probe {
                verdict: Verdict3::Yes,
                steps_executed: s,
                decided_at: Some(s),
            },
            Outcome::HaltedNonAccepting(s) => Probe {
                verdict: Verdict3::No,
                steps_executed: s,
                decided_at: Some(s),
            },
            Outcome::BudgetExhausted(b) => Probe {
                verdict: Verdict3::Unknown(b),
                steps_executed: b,
                decided_at: None,
            },
        }
    }
}

type NativeEval = Arc<dyn Fn(&str, u64) -> Probe + Send + Sync>;

/// A named bounded predicate with a declared step-cost model. The evaluation
/// function must be pure and monotone: a definitive verdict at budget `n`
/// must be reproduced at every budget `>= n`.
#[derive(Clone)]
pub struct NativePredicate {
    name: String,
    params: BTreeMap<String, String>,
    alphabet: Vec<char>,
    eval: NativeEval,
}

impl NativePredicate {
    pub fn new(
        name: impl Into<String>,
        params: BTreeMap<String, String>,
        alphabet: Vec<char>,
        eval: impl Fn(&str, u64) -> Probe + Send + Sync + 'static,
    ) -> NativePredicate {
        NativePredicate {
            name: name.into(),
            params,
            alphabet,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, String> {
        &self.params
    }

    pub fn probe(&self, input: &str, budget: u64) -> Probe {
        (self.eval)(input, budget)
    }
}

impl fmt::Debug for NativePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NativePredicate")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("alphabet", &self.alphabet)
            .finish_non_exhaustive()
    }
}

/// Something that answers bounded membership queries: either a genuine
/// transition table or a native predicate.
#[derive(Debug, Clone)]
pub enum Acceptor {
    TableMachine(MachineDef),
    NativePredicate(NativePredicate),
}

impl Acceptor {
    pub fn table(def: MachineDef) -> Acceptor {
        Acceptor::TableMachine(def)
    }

    pub fn name(&self) -> &str {
        match self {
            Acceptor::TableMachine(def) => &def.name,
            Acceptor::NativePredicate(p) => p.name(),
        }
    }

    /// The alphabet its language lives over; canonical string enumeration for
    /// this acceptor runs over these symbols.
    pub fn alphabet(&self) -> &[char] {
        match self {
            Acceptor::TableMachine(def) => &def.input_alphabet,
            Acceptor::NativePredicate(p) => &p.alphabet,
        }
    }

    /// The machine code, for table machines only.
    pub fn encoding(&self) -> Option<Encoding> {
        match self {
            Acceptor::TableMachine(def) => Some(encode_machine(def)),
            Acceptor::NativePredicate(_) => None,
        }
    }

    pub fn as_table(&self) -> Option<&MachineDef> {
        match self {
            Acceptor::TableMachine(def) => Some(def),
            Acceptor::NativePredicate(_) => None,
        }
    }

    /// Bounded membership with `Verdict3` semantics. Probing a string outside
    /// the declared alphabet is an error, mirroring `run_machine`.
    pub fn accepts_within(&self, w: &str, budget: u64) -> Result<Verdict3, SimError> {
        match self {
            Acceptor::TableMachine(def) => accepts_within(def, w, budget),
            Acceptor::NativePredicate(p) => Ok(p.probe(w, budget).verdict),
        }
    }

    pub fn probe(&self, w: &str, budget: u64) -> Result<Probe, SimError> {
        match self {
            Acceptor::TableMachine(def) => {
                Ok(Probe::from_outcome(run_machine(def, w, budget)?.outcome))
            }
            Acceptor::NativePredicate(p) => Ok(p.probe(w, budget)),
        }
    }

    /// As [`Acceptor::probe`], but total over probe strings: a string a
    /// table machine cannot even read is a definitive `No` (it cannot belong
    /// to a language over that alphabet). Native predicates answer every
    /// probe themselves.
    pub fn membership_probe(&self, w: &str, budget: u64) -> Probe {
        match self {
            Acceptor::TableMachine(def) => {
                if w.chars().any(|c| !def.input_alphabet.contains(&c)) {
                    return Probe {
                        verdict: Verdict3::No,
                        steps_executed: 0,
                        decided_at: Some(0),
                    };
                }
                self.probe(w, budget).expect("alphabet checked before probing")
            }
            Acceptor::NativePredicate(p) => p.probe(w, budget),
        }
    }
}

/// Which level of the fixed family hierarchy a family plays: the base level
/// (queried about plain machines) or the second level (queried about
/// oracle machines over the first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyLevel {
    One,
    Two,
}

/// A fixed, finite, non-empty family of recursively enumerable languages,
/// given by acceptors. No member may denote the empty language; that is
/// asserted for the shipped zoo families by exhibiting an accepted string
/// for each member, not enforced here (it is not decidable in general).
#[derive(Debug, Clone)]
pub struct LanguageFamily {
    members: Vec<Acceptor>,
    level: FamilyLevel,
}

impl LanguageFamily {
    /// Panics if `members` is empty.
    pub fn new(members: Vec<Acceptor>, level: FamilyLevel) -> LanguageFamily {
        assert!(!members.is_empty(), "a language family must be non-empty");
        LanguageFamily { members, level }
    }

    pub fn members(&self) -> &[Acceptor] {
        &self.members
    }

    pub fn level(&self) -> FamilyLevel {
        self.level
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Resumable bounded run of an acceptor (or of an oracle-machine target) on
/// one fixed input. `advance(cap)` pushes the run on to `cap` total steps
/// and reports the freshly executed work, so revisiting the same pair with a
/// larger bound never re-simulates its prefix.
pub(crate) trait ResumableProbe {
    /// Advance to `cap` total steps. Returns the fresh simulation cost.
    fn advance(&mut self, cap: u64) -> u64;
    /// `Some((accepted, decided_at))` once the run is definitively resolved.
    fn resolution(&self) -> Option<(bool, u64)>;
    /// Total steps already executed (and charged) for this run.
    fn steps_done(&self) -> u64;
}

/// Sources of resumable probe runs; implemented by acceptors and by the
/// oracle-machine search target.
pub(crate) trait ProbeSource {
    fn alphabet(&self) -> &[char];
    fn start(&self, input: &str) -> Box<dyn ResumableProbe>;
}

struct TableProbe(Runner);

impl ResumableProbe for TableProbe {
    fn advance(&mut self, cap: u64) -> u64 {
        let before = self.0.steps();
        self.0.advance(cap);
        self.0.steps() - before
    }

    fn resolution(&self) -> Option<(bool, u64)> {
        self.0.halted()
    }

    fn steps_done(&self) -> u64 {
        self.0.steps()
    }
}

/// A probe for a string outside the acceptor's alphabet: definitively not a
/// member, at zero cost.
pub(crate) struct RejectedProbe;

impl ResumableProbe for RejectedProbe {
    fn advance(&mut self, _cap: u64) -> u64 {
        0
    }

    fn resolution(&self) -> Option<(bool, u64)> {
        Some((false, 0))
    }

    fn steps_done(&self) -> u64 {
        0
    }
}

struct NativeProbe {
    predicate: NativePredicate,
    input: String,
    charged: u64,
    resolution: Option<(bool, u64)>,
}

impl ResumableProbe for NativeProbe {
    fn advance(&mut self, cap: u64) -> u64 {
        if self.resolution.is_some() {
            return 0;
        }
        let probe = self.predicate.probe(&self.input, cap);
        let fresh = probe.steps_executed.saturating_sub(self.charged);
        self.charged = self.charged.max(probe.steps_executed);
        self.resolution = match probe.verdict {
            Verdict3::Yes => Some((true, probe.decided_at.unwrap_or(cap))),
            Verdict3::No => Some((false, probe.decided_at.unwrap_or(cap))),
            Verdict3::Unknown(_) => None,
        };
        fresh
    }

    fn resolution(&self) -> Option<(bool, u64)> {
        self.resolution
    }

    fn steps_done(&self) -> u64 {
        self.charged
    }
}

impl ProbeSource for Acceptor {
    fn alphabet(&self) -> &[char] {
        Acceptor::alphabet(self)
    }

    fn start(&self, input: &str) -> Box<dyn ResumableProbe> {
        match self {
            Acceptor::TableMachine(def) => {
                if input.chars().any(|c| !def.input_alphabet.contains(&c)) {
                    return Box::new(RejectedProbe);
                }
                Box::new(TableProbe(
                    Runner::new(def, input).expect("alphabet checked before starting"),
                ))
            }
            Acceptor::NativePredicate(p) => Box::new(NativeProbe {
                predicate: p.clone(),
                input: input.to_string(),
                charged: 0,
                resolution: None,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{Dir, Rule};

    fn mini() -> MachineDef {
        MachineDef {
            name: "mini".into(),
            states: vec!["s".into(), "f".into()],
            input_alphabet: vec!['1'],
            tape_alphabet: vec!['1', 'B'],
            blank: 'B',
            start_state: "s".into(),
            final_states: vec!["f".into()],
            pan_states: vec![],
            rules: vec![Rule {
                state: "s".into(),
                read: '1',
                next: "f".into(),
                write: '1',
                dir: Dir::R,
            }],
        }
    }

    #[test]
    fn table_probe_reports_halt_step() {
        let acc = Acceptor::table(mini());
        let p = acc.probe("1", 100).unwrap();
        assert_eq!(p.verdict, Verdict3::Yes);
        assert_eq!(p.decided_at, Some(1));
    }

    #[test]
    fn membership_probe_rejects_out_of_alphabet() {
        let acc = Acceptor::table(mini());
        let p = acc.membership_probe("2", 100);
        assert_eq!(p.verdict, Verdict3::No);
        assert!(acc.probe("2", 100).is_err());
    }

    #[test]
    fn resumable_probe_charges_fresh_work_only() {
        let acc = Acceptor::table(mini());
        let mut run = acc.start("1");
        assert_eq!(run.advance(0), 0);
        assert_eq!(run.resolution(), None);
        assert_eq!(run.advance(5), 1);
        assert_eq!(run.resolution(), Some((true, 1)));
        assert_eq!(run.advance(10), 0);
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<MachineDef>();
        assert_send_sync::<crate::sim::Configuration>();
        assert_send_sync::<crate::sim::RunTrace>();
        assert_send_sync::<Acceptor>();
        assert_send_sync::<LanguageFamily>();
        assert_send_sync::<crate::encode::Encoding>();
    }

    #[test]
    fn native_predicate_probe() {
        let native = NativePredicate::new(
            "evens",
            BTreeMap::new(),
            vec!['1'],
            |w: &str, _n: u64| Probe {
                verdict: if w.len().is_multiple_of(2) { Verdict3::Yes } else { Verdict3::No },
                steps_executed: 1,
                decided_at: Some(0),
            },
        );
        let acc = Acceptor::NativePredicate(native);
        assert_eq!(acc.accepts_within("11", 1).unwrap(), Verdict3::Yes);
        assert_eq!(acc.accepts_within("1", 1).unwrap(), Verdict3::No);
    }
}
