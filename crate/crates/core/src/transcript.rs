//! Serialized oracle-machine computations with embedded evidence, and their
//! validator.
//!
//! A transcript lists every configuration of a run. Consecutive
//! configurations must be joined either by the transition function or by a
//! query resolution step. Every query answered "no" must carry an evidence
//! block: the queried machine's code, a witness string, and step-exact
//! accepting runs of both the queried machine and the named family member on
//! that witness. A "yes" answer carries no evidence; there is no finite
//! certificate for disjointness, and validating it is explicitly not
//! attempted.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::acceptor::LanguageFamily;
use crate::encode::{decode_machine, encode_machine, Encoding};
use crate::machine::{canonicalize, MachineDef};
use crate::oracle::{
    canonicalize_oracle, run_oracle_machine_logged, OracleMachineDef, OracleResolver, QueryAnswer,
};
use crate::sim::{
    initial_configuration, run_machine_logged, step_machine, Configuration, SimError, StepResult,
};

/// Evidence backing one negative oracle answer: a particular string accepted
/// both by the queried machine and by a family member, shown by full
/// step-exact runs rather than bare step counts, so validation needs no
/// trust in re-simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceBlock {
    pub queried_encoding: Encoding,
    pub witness: String,
    pub queried_run: Vec<Configuration>,
    /// 0-based index into the family the transcript is validated against.
    pub family_index: usize,
    pub family_run: Vec<Configuration>,
}

/// A serialized oracle-machine computation. `evidence` is keyed by the index
/// of the query-state configuration whose resolution it justifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub machine: OracleMachineDef,
    pub input: String,
    pub configs: Vec<Configuration>,
    pub evidence: BTreeMap<usize, EvidenceBlock>,
    /// Whether the transcript claims the run accepts.
    pub claim: bool,
}

/// Why a transcript failed validation. The index is the position of the
/// offending configuration (for step problems) or of the query step the
/// evidence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// Consecutive configurations are not joined by the transition function
    /// or a well-formed resolution step (also covers a bad initial
    /// configuration).
    StepMismatch(usize),
    /// A query answered "no" has no evidence block.
    MissingEvidence(usize),
    /// An evidence block exists but does not replay.
    BogusEvidence(usize),
    /// An evidence block is attached where none is allowed.
    SpuriousEvidence(usize),
    /// The claim disagrees with the final configuration.
    ClaimMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranscriptVerdict {
    Valid,
    Invalid(InvalidReason),
}

impl TranscriptVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TranscriptVerdict::Valid)
    }
}

fn is_accepting_config(m: &OracleMachineDef, c: &Configuration) -> bool {
    if c.state == m.query_state {
        return false; // a pending query is not a halt
    }
    let read = c.symbol_at(c.head, m.base.blank);
    m.base.rule_for(&c.state, read).is_none() && m.base.is_final(&c.state)
}

fn replay_accepting_run(def: &MachineDef, input: &str, run: &[Configuration]) -> bool {
    let Ok(init) = initial_configuration(def, input) else {
        return false;
    };
    if run.first() != Some(&init) {
        return false;
    }
    for pair in run.windows(2) {
        match step_machine(def, &pair[0]) {
            StepResult::Next(next) if next == pair[1] => {}
            _ => return false,
        }
    }
    let last = run.last().unwrap();
    let read = last.symbol_at(last.head, def.blank);
    def.rule_for(&last.state, read).is_none() && def.is_final(&last.state)
}

fn evidence_replays(
    m: &OracleMachineDef,
    q_config: &Configuration,
    block: &EvidenceBlock,
    family1: &LanguageFamily,
) -> bool {
    // The evidence must concern the machine actually queried at this step.
    let word = q_config.word_at(q_config.head, m.base.blank);
    if word != block.queried_encoding.as_str() {
        return false;
    }
    let Ok(queried) = decode_machine(block.queried_encoding.as_str()) else {
        return false;
    };
    if !replay_accepting_run(&queried, &block.witness, &block.queried_run) {
        return false;
    }
    let Some(member) = family1.members().get(block.family_index) else {
        return false;
    };
    let Some(member_def) = member.as_table() else {
        return false;
    };
    replay_accepting_run(member_def, &block.witness, &block.family_run)
}

/// Validates a transcript against the family its negative answers cite.
/// Checks, in order along the run: the initial configuration, every
/// transition or resolution step, evidence presence and replay per query,
/// stray evidence, and finally the acceptance claim.
pub fn validate_transcript(t: &Transcript, family1: &LanguageFamily) -> TranscriptVerdict {
    use InvalidReason::*;
    use TranscriptVerdict::Invalid;

    let m = &t.machine;
    if t.configs.is_empty() {
        return Invalid(StepMismatch(0));
    }
    match initial_configuration(&m.base, &t.input) {
        Ok(init) if t.configs[0] == init => {}
        _ => return Invalid(StepMismatch(0)),
    }

    for i in 0..t.configs.len() - 1 {
        let cur = &t.configs[i];
        let nxt = &t.configs[i + 1];
        if cur.state == m.query_state {
            let resolution_ok = (nxt.state == m.yes_state || nxt.state == m.no_state)
                && nxt.tape == cur.tape
                && nxt.head == cur.head
                && nxt.step_count == cur.step_count + 1;
            if !resolution_ok {
                return Invalid(StepMismatch(i));
            }
            if nxt.state == m.no_state {
                match t.evidence.get(&i) {
                    None => return Invalid(MissingEvidence(i)),
                    Some(block) => {
                        if !evidence_replays(m, cur, block, family1) {
                            return Invalid(BogusEvidence(i));
                        }
                    }
                }
            } else if t.evidence.contains_key(&i) {
                return Invalid(SpuriousEvidence(i));
            }
        } else {
            match step_machine(&m.base, cur) {
                StepResult::Next(expected) if expected == *nxt => {}
                _ => return Invalid(StepMismatch(i)),
            }
            if t.evidence.contains_key(&i) {
                return Invalid(SpuriousEvidence(i));
            }
        }
    }

    let last_index = t.configs.len() - 1;
    if let Some((&i, _)) = t.evidence.iter().find(|(&i, _)| i >= last_index) {
        return Invalid(SpuriousEvidence(i));
    }

    let accepting = is_accepting_config(m, t.configs.last().unwrap());
    if accepting != t.claim {
        return Invalid(ClaimMismatch);
    }
    TranscriptVerdict::Valid
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("family member {0} is not a table machine; evidence embeds step-exact runs")]
    NativeFamilyMember(usize),
}

/// Runs the oracle machine on `input` with the budgeted level-1 resolver and
/// records the computation as a transcript in canonical form. Every negative
/// answer's witness is expanded into full accepting runs. Transcripts of
/// runs that abort on an unanswerable query simply end at the pending query
/// configuration with a non-accepting claim.
pub fn record_transcript(
    odef: &OracleMachineDef,
    family1: &LanguageFamily,
    sub_budget: u64,
    input: &str,
    budget: u64,
) -> Result<Transcript, RecordError> {
    let canon = canonicalize_oracle(odef);
    let resolver = OracleResolver::ApproxS1 {
        family: family1.clone(),
        sub_budget,
    };
    let run = run_oracle_machine_logged(&canon, &resolver, input, budget)?;
    let configs = run
        .trace
        .step_log
        .clone()
        .expect("logged runs carry their configuration log");

    let mut evidence = BTreeMap::new();
    for event in &run.events {
        if event.record.answer != QueryAnswer::No {
            continue;
        }
        let witness = event
            .witness
            .as_ref()
            .expect("negative answers from the budgeted resolver carry a witness");
        let queried =
            decode_machine(&event.record.word).expect("the resolver decoded this query word");
        let queried_run = run_machine_logged(&queried, &witness.string, witness.steps_target)?
            .step_log
            .unwrap();
        let member_def = family1.members()[witness.family_index]
            .as_table()
            .ok_or(RecordError::NativeFamilyMember(witness.family_index))?;
        let family_run = run_machine_logged(member_def, &witness.string, witness.steps_family)?
            .step_log
            .unwrap();
        evidence.insert(
            event.record.step as usize,
            EvidenceBlock {
                queried_encoding: Encoding::from_bits(&event.record.word)
                    .expect("query words that decoded are bit strings"),
                witness: witness.string.clone(),
                queried_run,
                family_index: witness.family_index,
                family_run,
            },
        );
    }

    Ok(Transcript {
        machine: canon,
        input: input.to_string(),
        configs,
        evidence,
        claim: run.trace.outcome.is_accepting(),
    })
}

impl Transcript {
    /// Serializes the transcript. Machines appear as their binary codes, so
    /// the transcript must be in canonical form (the recorder always
    /// produces one); panics otherwise.
    pub fn to_json(&self) -> Value {
        assert_eq!(
            self.machine.base,
            canonicalize(&self.machine.base),
            "transcripts serialize machines in canonical form"
        );
        let configs: Vec<Value> = self.configs.iter().map(Configuration::to_json).collect();
        let mut evidence = Map::new();
        for (i, block) in &self.evidence {
            evidence.insert(
                i.to_string(),
                json!({
                    "queried": block.queried_encoding.to_string(),
                    "witness": block.witness,
                    "family_index": block.family_index,
                    "queried_run": block
                        .queried_run
                        .iter()
                        .map(Configuration::to_json)
                        .collect::<Vec<_>>(),
                    "family_run": block
                        .family_run
                        .iter()
                        .map(Configuration::to_json)
                        .collect::<Vec<_>>(),
                }),
            );
        }
        json!({
            "machine": {
                "base": encode_machine(&self.machine.base).to_string(),
                "query_state": self.machine.query_state,
                "yes_state": self.machine.yes_state,
                "no_state": self.machine.no_state,
            },
            "input": self.input,
            "configs": configs,
            "evidence": evidence,
            "claim": self.claim,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_json(value: &Value) -> Result<Transcript, String> {
        let obj = value.as_object().ok_or("transcript must be an object")?;
        let machine = obj
            .get("machine")
            .and_then(Value::as_object)
            .ok_or("transcript `machine` must be an object")?;
        let base_bits = machine
            .get("base")
            .and_then(Value::as_str)
            .ok_or("machine `base` must be a bit string")?;
        let base = decode_machine(base_bits).map_err(|e| e.to_string())?;
        let special = |key: &str| -> Result<String, String> {
            machine
                .get(key)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| format!("machine `{key}` must be a string"))
        };
        let machine = OracleMachineDef {
            base,
            query_state: special("query_state")?,
            yes_state: special("yes_state")?,
            no_state: special("no_state")?,
        };

        let input = obj
            .get("input")
            .and_then(Value::as_str)
            .ok_or("transcript `input` must be a string")?
            .to_string();
        let configs = obj
            .get("configs")
            .and_then(Value::as_array)
            .ok_or("transcript `configs` must be an array")?
            .iter()
            .map(|v| Configuration::from_json(v, 'B'))
            .collect::<Result<Vec<_>, _>>()?;

        let mut evidence = BTreeMap::new();
        let blocks = obj
            .get("evidence")
            .and_then(Value::as_object)
            .ok_or("transcript `evidence` must be an object")?;
        for (key, v) in blocks {
            let index: usize = key.parse().map_err(|_| "evidence key must be an index")?;
            let block = v.as_object().ok_or("evidence block must be an object")?;
            let runs = |key: &str| -> Result<Vec<Configuration>, String> {
                block
                    .get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| format!("evidence `{key}` must be an array"))?
                    .iter()
                    .map(|v| Configuration::from_json(v, 'B'))
                    .collect()
            };
            evidence.insert(
                index,
                EvidenceBlock {
                    queried_encoding: Encoding::from_bits(
                        block
                            .get("queried")
                            .and_then(Value::as_str)
                            .ok_or("evidence `queried` must be a bit string")?,
                    )
                    .map_err(|e| e.to_string())?,
                    witness: block
                        .get("witness")
                        .and_then(Value::as_str)
                        .ok_or("evidence `witness` must be a string")?
                        .to_string(),
                    queried_run: runs("queried_run")?,
                    family_index: block
                        .get("family_index")
                        .and_then(Value::as_u64)
                        .ok_or("evidence `family_index` must be an index")?
                        as usize,
                    family_run: runs("family_run")?,
                },
            );
        }

        let claim = obj
            .get("claim")
            .and_then(Value::as_bool)
            .ok_or("transcript `claim` must be a boolean")?;
        Ok(Transcript {
            machine,
            input,
            configs,
            evidence,
            claim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptor::FamilyLevel;
    use crate::oracle::single_query_machine;
    use crate::zoo::zoo_get;

    fn family1() -> LanguageFamily {
        LanguageFamily::new(
            vec![
                zoo_get("MULT2").unwrap().acceptor.clone(),
                zoo_get("MULT3").unwrap().acceptor.clone(),
            ],
            FamilyLevel::One,
        )
    }

    fn oq1_transcript() -> Transcript {
        let code = encode_machine(zoo_get("MULT6").unwrap().machine());
        let odef = single_query_machine(&code);
        record_transcript(&odef, &family1(), 10_000, "", 100_000).unwrap()
    }

    #[test]
    fn recorded_accepting_run_validates() {
        let t = oq1_transcript();
        assert!(t.claim);
        assert_eq!(t.evidence.len(), 1);
        assert_eq!(validate_transcript(&t, &family1()), TranscriptVerdict::Valid);
    }

    #[test]
    fn perturbed_head_is_step_mismatch() {
        let mut t = oq1_transcript();
        let mid = t.configs.len() / 2;
        t.configs[mid].head += 1;
        assert!(matches!(
            validate_transcript(&t, &family1()),
            TranscriptVerdict::Invalid(InvalidReason::StepMismatch(_))
        ));
    }

    #[test]
    fn deleted_evidence_is_missing_evidence() {
        let mut t = oq1_transcript();
        t.evidence.clear();
        assert!(matches!(
            validate_transcript(&t, &family1()),
            TranscriptVerdict::Invalid(InvalidReason::MissingEvidence(_))
        ));
    }

    #[test]
    fn yes_resolution_must_carry_no_evidence() {
        // Hand-build a run whose single query resolves yes: valid bare,
        // spurious once evidence is attached to the yes step.
        let code = encode_machine(zoo_get("MULT6").unwrap().machine());
        let odef = canonicalize_oracle(&single_query_machine(&code));
        let resolver =
            OracleResolver::FixedTable([(code.to_string(), true)].into_iter().collect());
        let run = run_oracle_machine_logged(&odef, &resolver, "", 100_000).unwrap();
        let configs = run.trace.step_log.unwrap();
        let query_index = configs
            .iter()
            .position(|c| c.state == odef.query_state)
            .unwrap();
        let mut t = Transcript {
            machine: odef,
            input: String::new(),
            configs,
            evidence: BTreeMap::new(),
            claim: false,
        };
        assert_eq!(validate_transcript(&t, &family1()), TranscriptVerdict::Valid);

        let donor = oq1_transcript();
        let block = donor.evidence.values().next().unwrap().clone();
        t.evidence.insert(query_index, block);
        assert_eq!(
            validate_transcript(&t, &family1()),
            TranscriptVerdict::Invalid(InvalidReason::SpuriousEvidence(query_index))
        );
    }

    #[test]
    fn claim_flip_is_claim_mismatch() {
        let mut t = oq1_transcript();
        t.claim = !t.claim;
        assert_eq!(
            validate_transcript(&t, &family1()),
            TranscriptVerdict::Invalid(InvalidReason::ClaimMismatch)
        );
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let t = oq1_transcript();
        let doc = t.to_json();
        let back = Transcript::from_json(&doc).unwrap();
        assert_eq!(back, t);
        let text = serde_json::to_string(&doc).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string(&Transcript::from_json(&reparsed).unwrap().to_json()).unwrap(),
            text
        );
        assert_eq!(
            validate_transcript(&back, &family1()),
            TranscriptVerdict::Valid
        );
    }
}
