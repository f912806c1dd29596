//! Exhaustive certification of the minimizer on every small automaton,
//! plus a single brute-force minimum.
//!
//! `cargo run --release --example oracle_minimality` is quick; debug builds take
//! a few seconds.

use std::time::Instant;

use partial_dfa::oracle::{brute_min_transitions, enumerate_dfas, verify_minimality};
use partial_dfa::{chain_star_witness, epsilon_lang, union_product, Alphabet};

fn main() -> partial_dfa::Result<()> {
    for (max, sigma) in [(2, "a"), (4, "a"), (2, "ab"), (3, "ab"), (5, "b"), (2, "abc")] {
        let alphabet = Alphabet::from_chars(sigma)?;
        let count = enumerate_dfas(max, alphabet.clone())?.count();
        let started = Instant::now();
        let report = verify_minimality(max, alphabet)?;
        println!(
            "<= {max} states over {{{sigma}}}: {count} automata, {} languages, {} counterexamples ({:.2?})",
            report.languages,
            report.counterexamples.len(),
            started.elapsed()
        );
    }

    let ab = Alphabet::from_chars("ab")?;
    let lang = union_product(&chain_star_witness(3, 'a', 'b', ab.clone())?, &epsilon_lang(ab))?.dfa;
    let best = brute_min_transitions(&lang, 4)?;
    println!(
        "\nfewest transitions for a*bb + ε: {} (per symbol {:?}, {} states)",
        best.min_total, best.min_per_symbol, best.min_states
    );
    Ok(())
}
