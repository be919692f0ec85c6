//! `pan` — command-line front end for the machine workbench.
//!
//! Exit codes: 0 for a definitive verdict or a successful operation, 2 for
//! an unknown (budget-limited) verdict, 1 for any error. In `--format json`
//! mode every command writes exactly one JSON document to stdout.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pan_core::{
    alternator, approx_s1_membership, approx_s2_membership, build_behavioral_instance,
    const_wrapper, decode_machine, defuse, encode_machine, find_common_element, graft,
    parse_machine, probe_non_universality, run_machine, run_machine_logged, to_text,
    validate_machine, validate_transcript, zoo_get, zoo_list, zoo_verify, Acceptor, FamilyLevel,
    InvalidReason, LanguageFamily, MachineDef, NonUniversalityReport, OracleMachineDef, Outcome,
    ReductionOutput, SearchOutcome, Transcript, TranscriptVerdict, Verdict3, Witness,
};

const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Parser)]
#[command(name = "pan", version, about = "Machine workbench: simulate, encode, transform, search")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct MachineArg {
    /// Machine description file (text format).
    #[arg(long)]
    machine: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a machine description and summarize it.
    Parse(MachineArg),
    /// Check a machine description against every model invariant.
    Validate(MachineArg),
    /// Run a machine on an input under a step budget.
    Run {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include the full configuration log.
        #[arg(long)]
        log: bool,
    },
    /// Emit the binary code of a machine (reads stdin when --machine is absent).
    Encode {
        #[arg(long)]
        machine: Option<PathBuf>,
    },
    /// Decode a binary code back into a machine description (reads stdin when --bits is absent).
    Decode {
        #[arg(long)]
        bits: Option<String>,
    },
    /// Source-to-source machine transformations.
    #[command(subcommand)]
    Transform(Transform),
    /// Dovetailed searches.
    #[command(subcommand)]
    Search(Search),
    /// Bounded one-sided membership probes.
    #[command(subcommand)]
    Probe(Probe),
    /// Computation transcripts.
    #[command(subcommand)]
    Transcript(TranscriptCmd),
    /// The machine catalog.
    #[command(subcommand)]
    Zoo(ZooCmd),
}

#[derive(Subcommand)]
enum Transform {
    /// Replace every pan state by a harmless dummy.
    Defuse(MachineArg),
    /// Hook a pan state onto every acceptance point.
    Graft(MachineArg),
    /// defuse + graft: pan event within budget+2 iff acceptance within budget.
    Behavioral {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Constant-input wrapper: ignores its probe, simulates the machine on a fixed input.
    ConstWrap {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, default_value = "")]
        input: String,
    },
    /// Alternate a machine with a generator stub on a fixed generator input.
    Alternate {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long)]
        gen_machine: PathBuf,
        #[arg(long, default_value = "")]
        gen_input: String,
    },
}

#[derive(Subcommand)]
enum Search {
    /// Look for a string accepted by the target and by some family member.
    Common {
        #[arg(long)]
        target: PathBuf,
        /// Comma-separated machine files.
        #[arg(long, value_delimiter = ',')]
        family: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum Probe {
    /// Is the coded machine's language disjoint from the family? (one-sided)
    S1 {
        /// Machine file to encode and probe.
        #[arg(long, conflicts_with = "bits")]
        machine: Option<PathBuf>,
        /// Binary code to probe directly.
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, value_delimiter = ',')]
        family: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Is the oracle machine's language disjoint from the second family? (one-sided)
    S2 {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long)]
        query_state: String,
        #[arg(long)]
        yes_state: String,
        #[arg(long)]
        no_state: String,
        #[arg(long, value_delimiter = ',')]
        family1: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        family2: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 10_000)]
        sub_budget: u64,
    },
    /// Look for a string the machine halting-rejects (so its language is not everything).
    NonUniversal {
        #[command(flatten)]
        machine: MachineArg,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Per-string step budget.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum TranscriptCmd {
    /// Validate a recorded computation transcript against a family.
    Validate {
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long, value_delimiter = ',')]
        family: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ZooCmd {
    /// List the catalog.
    List,
    /// Show one entry's source and code.
    Show { name: String },
    /// Cross-check an entry against its native reference predicate.
    Verify {
        name: String,
        #[arg(long, default_value_t = 24)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn read_stdin() -> Result<String, Failure> {
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn load_machine(path: &Path) -> Result<MachineDef, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_machine(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_family(paths: &[PathBuf], level: FamilyLevel) -> Result<LanguageFamily, Failure> {
    if paths.is_empty() {
        return Err(Failure("the family needs at least one machine file".into()));
    }
    let members = paths
        .iter()
        .map(|p| load_machine(p).map(Acceptor::table))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LanguageFamily::new(members, level))
}

fn verdict_exit(verdict: Verdict3) -> u8 {
    match verdict {
        Verdict3::Yes | Verdict3::No => 0,
        Verdict3::Unknown(_) => 2,
    }
}

fn witness_json(witness: &Option<Witness>) -> Value {
    match witness {
        None => Value::Null,
        Some(w) => json!({
            "string": w.string,
            "family_index": w.family_index,
            "steps_target": w.steps_target,
            "steps_family": w.steps_family,
        }),
    }
}

fn emit(format: Format, doc: Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{doc}"),
        Format::Text => println!("{}", text()),
    }
}

fn machine_summary_json(def: &MachineDef) -> Value {
    json!({
        "machine": def.name,
        "states": def.states.len(),
        "rules": def.rules.len(),
        "input_alphabet": def.input_alphabet.iter().map(char::to_string).collect::<Vec<_>>(),
        "tape_alphabet": def.tape_alphabet.iter().map(char::to_string).collect::<Vec<_>>(),
        "start": def.start_state,
        "final": def.final_states,
        "pan": def.pan_states,
    })
}

fn cmd_parse(format: Format, arg: &MachineArg) -> CmdResult {
    let def = load_machine(&arg.machine)?;
    emit(format, machine_summary_json(&def), || {
        format!(
            "machine {}: {} states, {} rules, input {{{}}}, start {}, final {{{}}}, pan {{{}}}",
            def.name,
            def.states.len(),
            def.rules.len(),
            def.input_alphabet.iter().collect::<String>(),
            def.start_state,
            def.final_states.join(" "),
            def.pan_states.join(" "),
        )
    });
    Ok(0)
}

fn cmd_validate(format: Format, arg: &MachineArg) -> CmdResult {
    let def = load_machine(&arg.machine)?;
    let violations = validate_machine(&def);
    let ok = violations.is_empty();
    emit(
        format,
        json!({
            "machine": def.name,
            "valid": ok,
            "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
        || {
            if ok {
                format!("machine {} is valid", def.name)
            } else {
                let mut lines = vec![format!("machine {} is invalid:", def.name)];
                lines.extend(violations.iter().map(|v| format!("  {v}")));
                lines.join("\n")
            }
        },
    );
    Ok(if ok { 0 } else { 1 })
}

fn cmd_run(format: Format, arg: &MachineArg, input: &str, budget: u64, log: bool) -> CmdResult {
    let def = load_machine(&arg.machine)?;
    let trace = if log {
        run_machine_logged(&def, input, budget)?
    } else {
        run_machine(&def, input, budget)?
    };
    let exit = match trace.outcome {
        Outcome::BudgetExhausted(_) => 2,
        _ => 0,
    };
    emit(format, trace.to_json(), || {
        let mut lines = vec![match trace.outcome {
            Outcome::AcceptedAt(s) => format!("accepted at step {s}"),
            Outcome::HaltedNonAccepting(s) => format!("halted non-accepting at step {s}"),
            Outcome::BudgetExhausted(b) => format!("budget of {b} steps exhausted"),
        }];
        if trace.pan_events.is_empty() {
            lines.push("pan events: none".into());
        } else {
            for (step, state) in &trace.pan_events {
                lines.push(format!("pan event at step {step} in state {state}"));
            }
        }
        if let Some(logged) = &trace.step_log {
            for c in logged {
                lines.push(format!(
                    "step {}: state {} head {} tape {}",
                    c.step_count,
                    c.state,
                    c.head,
                    c.tape
                        .iter()
                        .map(|(p, s)| format!("{p}:{s}"))
                        .collect::<Vec<_>>()
                        .join(","),
                ));
            }
        }
        lines.join("\n")
    });
    Ok(exit)
}

fn cmd_encode(format: Format, machine: &Option<PathBuf>) -> CmdResult {
    let def = match machine {
        Some(path) => load_machine(path)?,
        None => parse_machine(&read_stdin()?).map_err(|e| Failure(e.to_string()))?,
    };
    let bits = encode_machine(&def);
    emit(format, json!({ "bits": bits.to_string() }), || bits.to_string());
    Ok(0)
}

fn cmd_decode(format: Format, bits: &Option<String>) -> CmdResult {
    let raw = match bits {
        Some(b) => b.clone(),
        None => read_stdin()?,
    };
    let def = decode_machine(raw.trim())?;
    let text = to_text(&def);
    emit(format, json!({ "machine": text }), || text.trim_end().to_string());
    Ok(0)
}

fn table_transform_json(kind: &str, out: &ReductionOutput, input: Option<&str>) -> Value {
    let mut doc = json!({
        "transform": kind,
        "machine": to_text(&out.produced),
        "state_map": out.state_map.clone().into_iter().collect::<BTreeMap<_, _>>(),
        "notes": out.notes,
    });
    if let Some(w) = input {
        doc["input"] = json!(w);
    }
    doc
}

fn emit_table_transform(format: Format, kind: &str, out: &ReductionOutput, input: Option<&str>) {
    emit(format, table_transform_json(kind, out, input), || {
        let mut s = to_text(&out.produced).trim_end().to_string();
        for note in &out.notes {
            s.push_str(&format!("\n# {note}"));
        }
        s
    });
}

fn native_acceptor_json(acc: &Acceptor) -> Value {
    match acc {
        Acceptor::NativePredicate(p) => json!({
            "transform": p.name(),
            "acceptor": {
                "kind": p.name(),
                "params": p.params(),
            },
        }),
        Acceptor::TableMachine(_) => unreachable!("native transforms produce native acceptors"),
    }
}

fn cmd_transform(format: Format, t: &Transform) -> CmdResult {
    match t {
        Transform::Defuse(arg) => {
            let out = defuse(&load_machine(&arg.machine)?);
            emit_table_transform(format, "defuse", &out, None);
        }
        Transform::Graft(arg) => {
            let out = graft(&load_machine(&arg.machine)?)?;
            emit_table_transform(format, "graft", &out, None);
        }
        Transform::Behavioral { machine, input } => {
            let def = load_machine(&machine.machine)?;
            let (produced, w) = build_behavioral_instance(&def, input)?;
            let out = ReductionOutput {
                produced,
                state_map: BTreeMap::new(),
                notes: vec!["composition of defuse and graft; run with budget + 2".into()],
            };
            emit_table_transform(format, "behavioral", &out, Some(&w));
        }
        Transform::ConstWrap { machine, input } => {
            let def = load_machine(&machine.machine)?;
            if input.chars().any(|c| !def.input_alphabet.contains(&c)) {
                return Err(Failure(format!(
                    "input `{input}` is not over the machine's input alphabet"
                )));
            }
            let acc = const_wrapper(&def, input);
            emit(format, native_acceptor_json(&acc), || {
                format!(
                    "native acceptor const_wrapper(machine={}, input={input})",
                    def.name
                )
            });
        }
        Transform::Alternate {
            machine,
            gen_machine,
            gen_input,
        } => {
            let def = load_machine(&machine.machine)?;
            let gen_def = load_machine(gen_machine)?;
            if gen_input.chars().any(|c| !gen_def.input_alphabet.contains(&c)) {
                return Err(Failure(format!(
                    "generator input `{gen_input}` is not over the generator's input alphabet"
                )));
            }
            let acc = alternator(&def, &gen_def, gen_input);
            emit(format, native_acceptor_json(&acc), || {
                format!(
                    "native acceptor alternator(machine={}, generator={}, gen_input={gen_input})",
                    def.name, gen_def.name
                )
            });
        }
    }
    Ok(0)
}

fn search_json(out: &SearchOutcome) -> Value {
    json!({
        "verdict": out.verdict.as_str(),
        "witness": witness_json(&out.witness),
        "steps_spent": out.steps_spent,
    })
}

fn search_text(out: &SearchOutcome) -> String {
    match &out.witness {
        Some(w) => format!(
            "yes: `{}` accepted by the target within {} steps and by family member {} within {} steps ({} steps spent)",
            w.string, w.steps_target, w.family_index, w.steps_family, out.steps_spent
        ),
        None => format!("unknown after {} steps", out.steps_spent),
    }
}

fn cmd_search(format: Format, s: &Search) -> CmdResult {
    match s {
        Search::Common {
            target,
            family,
            budget,
        } => {
            let target = Acceptor::table(load_machine(target)?);
            let family = load_family(family, FamilyLevel::One)?;
            let out = find_common_element(&target, &family, *budget);
            emit(format, search_json(&out), || search_text(&out));
            Ok(verdict_exit(out.verdict))
        }
    }
}

fn cmd_probe(format: Format, p: &Probe) -> CmdResult {
    match p {
        Probe::S1 {
            machine,
            bits,
            family,
            budget,
        } => {
            let code = match (machine, bits) {
                (Some(path), None) => encode_machine(&load_machine(path)?).to_string(),
                (None, Some(b)) => b.trim().to_string(),
                _ => return Err(Failure("give exactly one of --machine or --bits".into())),
            };
            let family = load_family(family, FamilyLevel::One)?;
            let (verdict, witness) = approx_s1_membership(&code, &family, *budget)?;
            emit(
                format,
                json!({
                    "verdict": verdict.as_str(),
                    "witness": witness_json(&witness),
                }),
                || match &witness {
                    Some(w) => format!(
                        "no: not disjoint; `{}` is accepted by the coded machine and family member {}",
                        w.string, w.family_index
                    ),
                    None => "unknown: no common element found within budget".into(),
                },
            );
            Ok(verdict_exit(verdict))
        }
        Probe::S2 {
            machine,
            query_state,
            yes_state,
            no_state,
            family1,
            family2,
            budget,
            sub_budget,
        } => {
            let mut base = load_machine(&machine.machine)?;
            // The text format declares states by mention, so a special state
            // with no rules (a bare halt point) cannot appear in the file;
            // declare such states here.
            for special in [query_state, yes_state, no_state] {
                if !base.states.contains(special) {
                    base.states.push(special.clone());
                }
            }
            let odef = OracleMachineDef {
                base,
                query_state: query_state.clone(),
                yes_state: yes_state.clone(),
                no_state: no_state.clone(),
            };
            let violations = odef.violations();
            if !violations.is_empty() {
                return Err(Failure(format!(
                    "invalid oracle machine: {}",
                    violations.join("; ")
                )));
            }
            let family1 = load_family(family1, FamilyLevel::One)?;
            let family2 = load_family(family2, FamilyLevel::Two)?;
            let out = approx_s2_membership(&odef, &family1, &family2, *budget, *sub_budget);
            emit(
                format,
                json!({
                    "verdict": out.verdict.as_str(),
                    "witness": witness_json(&out.witness),
                    "steps_spent": out.steps_spent,
                    "unresolved_queries": out
                        .unresolved_queries
                        .iter()
                        .map(|u| json!({
                            "input": u.input,
                            "step": u.record.step,
                            "word": u.record.word,
                            "answer": u.record.answer.as_str(),
                        }))
                        .collect::<Vec<_>>(),
                }),
                || match &out.witness {
                    Some(w) => format!(
                        "no: not disjoint; `{}` accepted by the oracle machine and family member {}",
                        w.string, w.family_index
                    ),
                    None => format!(
                        "unknown after {} steps ({} unresolved queries)",
                        out.steps_spent,
                        out.unresolved_queries.len()
                    ),
                },
            );
            Ok(verdict_exit(out.verdict))
        }
        Probe::NonUniversal {
            machine,
            max_len,
            budget,
        } => {
            let def = load_machine(&machine.machine)?;
            let report: NonUniversalityReport = probe_non_universality(&def, *max_len, *budget);
            emit(
                format,
                json!({
                    "verdict": report.verdict.as_str(),
                    "counterexample": report.counterexample,
                    "timed_out": report.timed_out,
                    "steps_spent": report.steps_spent,
                }),
                || match &report.counterexample {
                    Some(w) => {
                        format!("yes: `{w}` is halting-rejected, the language is not everything")
                    }
                    None => format!(
                        "unknown: no rejection found up to length {max_len} ({} strings timed out)",
                        report.timed_out.len()
                    ),
                },
            );
            Ok(verdict_exit(report.verdict))
        }
    }
}

fn cmd_transcript(format: Format, t: &TranscriptCmd) -> CmdResult {
    match t {
        TranscriptCmd::Validate { transcript, family } => {
            let raw = std::fs::read_to_string(transcript)
                .map_err(|e| Failure(format!("{}: {e}", transcript.display())))?;
            let doc: Value = serde_json::from_str(&raw)
                .map_err(|e| Failure(format!("{}: {e}", transcript.display())))?;
            let parsed = Transcript::from_json(&doc)?;
            let family = load_family(family, FamilyLevel::One)?;
            let verdict = validate_transcript(&parsed, &family);
            let (reason, index) = match verdict {
                TranscriptVerdict::Valid => (None, None),
                TranscriptVerdict::Invalid(r) => match r {
                    InvalidReason::StepMismatch(i) => (Some("step_mismatch"), Some(i)),
                    InvalidReason::MissingEvidence(i) => (Some("missing_evidence"), Some(i)),
                    InvalidReason::BogusEvidence(i) => (Some("bogus_evidence"), Some(i)),
                    InvalidReason::SpuriousEvidence(i) => (Some("spurious_evidence"), Some(i)),
                    InvalidReason::ClaimMismatch => (Some("claim_mismatch"), None),
                },
            };
            emit(
                format,
                json!({
                    "valid": verdict.is_valid(),
                    "reason": reason,
                    "index": index,
                }),
                || match (verdict.is_valid(), reason, index) {
                    (true, ..) => "valid".to_string(),
                    (false, Some(r), Some(i)) => format!("invalid: {r} at index {i}"),
                    (false, Some(r), None) => format!("invalid: {r}"),
                    _ => unreachable!(),
                },
            );
            Ok(0)
        }
    }
}

fn cmd_zoo(format: Format, z: &ZooCmd) -> CmdResult {
    match z {
        ZooCmd::List => {
            emit(
                format,
                json!({
                    "entries": zoo_list()
                        .iter()
                        .map(|e| json!({
                            "name": e.name,
                            "language": e.intended_language,
                            "states": e.machine().states.len(),
                        }))
                        .collect::<Vec<_>>(),
                }),
                || {
                    zoo_list()
                        .iter()
                        .map(|e| format!("{:<12} {}", e.name, e.intended_language))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(0)
        }
        ZooCmd::Show { name } => {
            let entry = zoo_get(name)?;
            emit(
                format,
                json!({
                    "name": entry.name,
                    "language": entry.intended_language,
                    "machine": entry.source(),
                    "bits": encode_machine(entry.machine()).to_string(),
                }),
                || entry.source().trim_end().to_string(),
            );
            Ok(0)
        }
        ZooCmd::Verify { name, max_n, budget } => {
            let report = zoo_verify(name, *max_n, *budget)?;
            emit(
                format,
                json!({
                    "name": report.name,
                    "checked": report.checked,
                    "disagreements": report.disagreements,
                    "unknowns": report.unknowns,
                    "expected_unknowns": report.expected_unknowns,
                    "rows": report
                        .rows
                        .iter()
                        .map(|r| json!({
                            "input": r.input,
                            "verdict": r.verdict.as_str(),
                            "native": r.native,
                        }))
                        .collect::<Vec<_>>(),
                }),
                || {
                    format!(
                        "{}: {} inputs checked, {} disagreements, {} unknowns{}",
                        report.name,
                        report.checked,
                        report.disagreements,
                        report.unknowns,
                        if report.expected_unknowns && report.unknowns > 0 {
                            " (unknowns expected for this entry)"
                        } else {
                            ""
                        }
                    )
                },
            );
            if report.disagreements > 0 {
                Ok(1)
            } else if report.unknowns > 0 {
                Ok(2)
            } else {
                Ok(0)
            }
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Parse(arg) => cmd_parse(cli.format, arg),
        Command::Validate(arg) => cmd_validate(cli.format, arg),
        Command::Run {
            machine,
            input,
            budget,
            log,
        } => cmd_run(cli.format, machine, input, *budget, *log),
        Command::Encode { machine } => cmd_encode(cli.format, machine),
        Command::Decode { bits } => cmd_decode(cli.format, bits),
        Command::Transform(t) => cmd_transform(cli.format, t),
        Command::Search(s) => cmd_search(cli.format, s),
        Command::Probe(p) => cmd_probe(cli.format, p),
        Command::Transcript(t) => cmd_transcript(cli.format, t),
        Command::Zoo(z) => cmd_zoo(cli.format, z),
    }
}

fn main() -> ExitCode {
    // clap exits 2 on usage errors by default, which would collide with the
    // "2 means unknown verdict" contract; route usage errors to exit 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let requested = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            e.print().expect("writing a clap diagnostic");
            return ExitCode::from(if requested { 0 } else { 1 });
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
