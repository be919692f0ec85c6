//! Fair enumeration primitives and the dovetailed search for a string
//! accepted both by a target acceptor and by some member of a fixed finite
//! family.
//!
//! Non-disjointness is semi-decidable: the search answers `Yes` with a
//! replayable witness or `Unknown`, never `No`.

use std::collections::HashMap;

use crate::acceptor::{Acceptor, LanguageFamily, ProbeSource, ResumableProbe};
use crate::sim::Verdict3;

/// One work item of the dovetailed schedule: run machine `machine_index`
/// (1-based; `k + 1` is the search target) on the string with canonical index
/// `string_index` for at most `step_bound` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub machine_index: u64,
    pub string_index: u64,
    pub step_bound: u64,
}

/// Enumerates every triple with `1 <= machine_index <= k + 1`,
/// `string_index >= 1`, `step_bound >= 1` exactly once, ordered by component
/// sum ascending, ties broken lexicographically.
#[derive(Debug, Clone)]
pub struct TripleSequence {
    k: u64,
    sum: u64,
    machine: u64,
    string: u64,
}

impl TripleSequence {
    /// `k` is the number of family machines; the target gets index `k + 1`.
    pub fn new(k: u64) -> TripleSequence {
        assert!(k >= 1, "need at least one family machine");
        TripleSequence {
            k,
            sum: 3,
            machine: 1,
            string: 1,
        }
    }
}

impl Iterator for TripleSequence {
    type Item = Triple;

    fn next(&mut self) -> Option<Triple> {
        // (sum, machine, string) always points at the next triple to emit,
        // with machine <= min(k + 1, sum - 2) and string <= sum - machine - 1.
        let item = Triple {
            machine_index: self.machine,
            string_index: self.string,
            step_bound: self.sum - self.machine - self.string,
        };
        self.string += 1;
        if self.string > self.sum - self.machine - 1 {
            self.string = 1;
            self.machine += 1;
            if self.machine > self.k + 1 || self.machine > self.sum - 2 {
                self.machine = 1;
                self.sum += 1;
            }
        }
        Some(item)
    }
}

/// The string with 1-based index `j` in length-lexicographic order over
/// `alphabet` (symbol order as given). Index 1 is the empty string.
///
/// Panics if the alphabet is empty or `j == 0`.
pub fn string_by_index(alphabet: &[char], j: u64) -> String {
    assert!(!alphabet.is_empty(), "string enumeration needs a non-empty alphabet");
    assert!(j >= 1, "string indices are 1-based");
    let k = alphabet.len() as u128;
    if k == 1 {
        return alphabet[0].to_string().repeat((j - 1) as usize);
    }
    // Strings of length <= L number (k^(L+1) - 1)/(k - 1); find the bucket.
    let mut len = 0u32;
    let mut covered: u128 = 1; // number of strings of length <= len
    let mut block: u128 = 1; // k^len
    while (j as u128) > covered {
        len += 1;
        block *= k;
        covered += block;
    }
    let mut offset = (j as u128) - (covered - block) - 1;
    let mut chars = vec![alphabet[0]; len as usize];
    for slot in chars.iter_mut().rev() {
        *slot = alphabet[(offset % k) as usize];
        offset /= k;
    }
    chars.into_iter().collect()
}

/// Inverse of [`string_by_index`]: the 1-based length-lex index of `w`.
/// Returns `None` if `w` uses a symbol outside the alphabet or the index
/// overflows `u64`.
pub fn index_of_string(alphabet: &[char], w: &str) -> Option<u64> {
    let k = alphabet.len() as u128;
    let len = w.chars().count() as u32;
    // 1 + number of strings strictly shorter than len.
    let mut first: u128 = 1;
    let mut block: u128 = 1;
    for _ in 0..len {
        first += block;
        block = block.checked_mul(k)?;
    }
    let mut offset: u128 = 0;
    for c in w.chars() {
        let digit = alphabet.iter().position(|&a| a == c)? as u128;
        offset = offset.checked_mul(k)?.checked_add(digit)?;
    }
    u64::try_from(first + offset).ok()
}

/// A replayable non-disjointness witness: `string` is accepted by the search
/// target within `steps_target` steps and by family member `family_index`
/// (0-based) within `steps_family` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub string: String,
    pub family_index: usize,
    pub steps_target: u64,
    pub steps_family: u64,
}

/// Result of a dovetailed search. `steps_spent` counts every simulation step
/// executed across all scheduled runs; each visited work item costs at least
/// one step, so a budget of `n` visits at most `n` items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict3,
    pub witness: Option<Witness>,
    pub steps_spent: u64,
}

/// Dovetails the target against every family member, looking for a common
/// accepted string. Returns `Yes` plus the witness first completed in
/// canonical triple order, or `Unknown` when the budget runs out; never
/// `No` (disjointness is not semi-decidable from this side). The witness is
/// re-verified by a direct re-run before returning.
pub fn find_common_element(
    target: &Acceptor,
    family: &LanguageFamily,
    budget: u64,
) -> SearchOutcome {
    dovetail_search(target, family, budget)
}

pub(crate) fn dovetail_search(
    target: &dyn ProbeSource,
    family: &LanguageFamily,
    budget: u64,
) -> SearchOutcome {
    let k = family.len() as u64;
    let alphabet: Vec<char> = target.alphabet().to_vec();

    let mut spent: u64 = 0;
    let mut slots: HashMap<(u64, u64), Box<dyn ResumableProbe>> = HashMap::new();
    // string index -> acceptance step; first resolution in triple order wins
    let mut target_accepts: HashMap<u64, u64> = HashMap::new();
    // string index -> (0-based member index, acceptance step)
    let mut family_accepts: HashMap<u64, (usize, u64)> = HashMap::new();

    for triple in TripleSequence::new(k) {
        if spent >= budget {
            break;
        }
        if alphabet.is_empty() {
            // A language over the empty alphabet holds at most the empty
            // string, so only the string-index-1 work items are meaningful,
            // and once every one of them has resolved nothing further can
            // ever be learned.
            if triple.string_index > 1 {
                continue;
            }
            let exhausted = (1..=k + 1).all(|machine| {
                slots
                    .get(&(machine, 1))
                    .is_some_and(|run| run.resolution().is_some())
            });
            if exhausted {
                break;
            }
        }
        let word = if alphabet.is_empty() {
            String::new()
        } else {
            string_by_index(&alphabet, triple.string_index)
        };

        let is_target = triple.machine_index == k + 1;
        let key = (triple.machine_index, triple.string_index);
        let run = slots.entry(key).or_insert_with(|| {
            if is_target {
                target.start(&word)
            } else {
                family.members()[(triple.machine_index - 1) as usize].start(&word)
            }
        });
        if run.resolution().is_some() {
            continue; // already definitive; no work, no charge
        }

        let headroom = budget - spent;
        let cap = triple.step_bound.min(run.steps_done().saturating_add(headroom));
        let fresh = if cap > run.steps_done() {
            run.advance(cap)
        } else {
            0
        };
        spent += fresh.max(1);

        let Some((accepted, at)) = run.resolution() else {
            continue;
        };
        if !accepted {
            continue;
        }
        if is_target {
            target_accepts.entry(triple.string_index).or_insert(at);
        } else {
            family_accepts
                .entry(triple.string_index)
                .or_insert(((triple.machine_index - 1) as usize, at));
        }

        let (Some(&steps_target), Some(&(member, steps_family))) = (
            target_accepts.get(&triple.string_index),
            family_accepts.get(&triple.string_index),
        ) else {
            continue;
        };
        let witness = Witness {
            string: word,
            family_index: member,
            steps_target,
            steps_family,
        };
        replay_witness(target, family, &witness);
        return SearchOutcome {
            verdict: Verdict3::Yes,
            witness: Some(witness),
            steps_spent: spent,
        };
    }

    SearchOutcome {
        verdict: Verdict3::Unknown(spent),
        witness: None,
        steps_spent: spent,
    }
}

/// Re-runs both sides of a witness at the recorded budgets; a witness that
/// does not replay indicates a scheduler bookkeeping bug.
fn replay_witness(target: &dyn ProbeSource, family: &LanguageFamily, w: &Witness) {
    let mut t = target.start(&w.string);
    t.advance(w.steps_target);
    assert_eq!(
        t.resolution(),
        Some((true, w.steps_target)),
        "witness `{}` does not replay on the target",
        w.string
    );
    let mut m = family.members()[w.family_index].start(&w.string);
    m.advance(w.steps_family);
    assert_eq!(
        m.resolution(),
        Some((true, w.steps_family)),
        "witness `{}` does not replay on family member {}",
        w.string,
        w.family_index
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lex_order_over_binary() {
        let ab = ['0', '1'];
        assert_eq!(string_by_index(&ab, 1), "");
        assert_eq!(string_by_index(&ab, 2), "0");
        assert_eq!(string_by_index(&ab, 3), "1");
        assert_eq!(string_by_index(&ab, 4), "00");
        assert_eq!(string_by_index(&ab, 8), "000");
    }

    #[test]
    fn unary_length_lex() {
        assert_eq!(string_by_index(&['1'], 3), "11");
        assert_eq!(string_by_index(&['1'], 1), "");
    }

    #[test]
    fn index_of_string_inverts() {
        let ab = ['0', '1'];
        for j in 1..=10_000 {
            let w = string_by_index(&ab, j);
            assert_eq!(index_of_string(&ab, &w), Some(j));
        }
        for j in 1..=500 {
            let w = string_by_index(&['1'], j);
            assert_eq!(index_of_string(&['1'], &w), Some(j));
        }
    }

    #[test]
    fn triple_sequence_prefix_for_k2() {
        let mut seq = TripleSequence::new(2);
        assert_eq!(
            seq.next().unwrap(),
            Triple { machine_index: 1, string_index: 1, step_bound: 1 }
        );
        // The sum-4 block, in lexicographic order.
        let block: Vec<Triple> = (&mut seq).take(3).collect();
        assert_eq!(
            block,
            vec![
                Triple { machine_index: 1, string_index: 1, step_bound: 2 },
                Triple { machine_index: 1, string_index: 2, step_bound: 1 },
                Triple { machine_index: 2, string_index: 1, step_bound: 1 },
            ]
        );
    }

    #[test]
    fn every_triple_appears_and_none_repeats() {
        let mut seen = std::collections::HashSet::new();
        let mut found_target = false;
        for t in TripleSequence::new(2).take(100_000) {
            assert!(seen.insert(t), "triple {t:?} repeated");
            assert!(t.machine_index >= 1 && t.machine_index <= 3);
            assert!(t.string_index >= 1 && t.step_bound >= 1);
            if t == (Triple { machine_index: 3, string_index: 5, step_bound: 7 }) {
                found_target = true;
            }
        }
        assert!(found_target, "(3, 5, 7) should appear within 100k emissions");
    }
}
