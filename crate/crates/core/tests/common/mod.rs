//! Shared test helpers: seeded generation of random valid machines.

use pan_core::{Dir, MachineDef, Rule};
use rand::prelude::*;

/// Builds a random valid machine with up to 8 states and up to 4 tape
/// symbols (blank included). Declaration orders are shuffled so canonical
/// renaming actually has work to do.
pub fn random_machine(rng: &mut impl Rng) -> MachineDef {
    let n_states = rng.gen_range(1..=8);
    let mut states: Vec<String> = (0..n_states).map(|i| format!("s{i}")).collect();
    states.shuffle(rng);

    let symbol_pool = ['1', '0', '2'];
    let n_syms = rng.gen_range(0..=3);
    let mut tape_alphabet: Vec<char> = symbol_pool[..n_syms].to_vec();
    tape_alphabet.push('B');
    tape_alphabet.shuffle(rng);
    let non_blank: Vec<char> = tape_alphabet.iter().copied().filter(|&c| c != 'B').collect();
    let n_input = rng.gen_range(0..=non_blank.len());
    let mut input_alphabet = non_blank.clone();
    input_alphabet.shuffle(rng);
    input_alphabet.truncate(n_input);

    let start_state = states.choose(rng).unwrap().clone();
    let final_states: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.3))
        .cloned()
        .collect();
    let pan_states: Vec<String> = states
        .iter()
        .filter(|s| !final_states.contains(s) && rng.gen_bool(0.2))
        .cloned()
        .collect();

    let mut rules = Vec::new();
    for state in &states {
        for &read in &tape_alphabet {
            if !rng.gen_bool(0.6) {
                continue;
            }
            let write = if pan_states.contains(state) {
                read
            } else {
                *tape_alphabet.choose(rng).unwrap()
            };
            rules.push(Rule {
                state: state.clone(),
                read,
                next: states.choose(rng).unwrap().clone(),
                write,
                dir: if rng.gen_bool(0.5) { Dir::L } else { Dir::R },
            });
        }
    }

    let def = MachineDef {
        name: format!("rand{}", rng.gen_range(0..1_000_000)),
        states,
        input_alphabet,
        tape_alphabet,
        blank: 'B',
        start_state,
        final_states,
        pan_states,
        rules,
    };
    assert!(def.is_valid(), "generator must produce valid machines");
    def
}

/// A random input over the machine's input alphabet, length <= `max_len`.
#[allow(dead_code)] // each test binary compiles its own copy of this module
pub fn random_input(rng: &mut impl Rng, def: &MachineDef, max_len: usize) -> String {
    if def.input_alphabet.is_empty() {
        return String::new();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| *def.input_alphabet.choose(rng).unwrap())
        .collect()
}
