//! A computability workbench around machines with designated *pan states*:
//! a validated machine model, bounded deterministic simulation, a bit-exact
//! binary code for machine descriptions, oracle-machine execution with
//! budgeted query resolution, the constructive machine transformations that
//! connect pan-event detection to acceptance, and dovetailed semi-decision
//! searches over fixed language families.
//!
//! Everything is bounded and replayable: semi-decidable questions get
//! one-sided `Yes`/`No`/`Unknown` verdicts, and every definitive answer
//! carries evidence (a step count or a witness string) that re-runs cleanly.

pub mod acceptor;
pub mod dovetail;
pub mod encode;
pub mod machine;
pub mod oracle;
pub mod parse;
pub mod reductions;
pub mod sim;
pub mod transcript;
pub mod zoo;

pub use acceptor::{Acceptor, FamilyLevel, LanguageFamily, NativePredicate, Probe};
pub use dovetail::{
    find_common_element, index_of_string, string_by_index, SearchOutcome, Triple, TripleSequence,
    Witness,
};
pub use encode::{decode_machine, encode_machine, Encoding, MalformedEncoding};
pub use machine::{canonicalize, validate_machine, Dir, MachineDef, Rule, Violation};
pub use oracle::{
    approx_s1_membership, approx_s2_membership, canonicalize_oracle, run_oracle_machine,
    single_query_machine, OracleMachineDef, OracleResolver, QueryAnswer, QueryRecord, S2Outcome,
    UnresolvedQuery,
};
pub use parse::{parse_machine, to_text, ParseError};
pub use reductions::{
    alternator, build_behavioral_instance, const_wrapper, defuse, graft, probe_non_universality,
    NonUniversalityReport, ReductionError, ReductionOutput,
};
pub use sim::{
    accepts_within, initial_configuration, run_machine, run_machine_logged, step_machine,
    Configuration, Outcome, RunTrace, SimError, StepResult, Verdict3, VerdictKind,
};
pub use transcript::{
    record_transcript, validate_transcript, EvidenceBlock, InvalidReason, RecordError, Transcript,
    TranscriptVerdict,
};
pub use zoo::{zoo_get, zoo_list, zoo_verify, ZooCheck, ZooEntry, ZooError, ZooReport};
