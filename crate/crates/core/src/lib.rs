//! Transition complexity of incomplete deterministic finite automata.
//!
//! The crate measures state complexity `sc(L)`, transition complexity
//! `tc(L)` and per-symbol transition complexity `tc_b(L)` through the
//! unique minimal incomplete DFA, builds the union, intersection and
//! complement constructions, generates the witness families that make the
//! known bounds tight, and certifies the minimizer against exhaustive
//! enumeration of small automata.
//!
//! ```
//! use partial_dfa::{complexity, union_product, union_symbol_witness, Alphabet};
//!
//! let bc = Alphabet::from_chars("bc").unwrap();
//! let c1 = union_symbol_witness(2, 1, 'b', 'c', bc.clone()).unwrap();
//! let c2 = union_symbol_witness(3, 2, 'b', 'c', bc).unwrap();
//! let union = union_product(&c1, &c2).unwrap();
//! assert_eq!(complexity(&union.dfa).tc_of('b'), 8);
//! ```
//!
//! Runnable walkthroughs live in the crate's `examples/` directory; the
//! `pdfa` binary exposes the same functionality on the command line.

pub mod automaton;
pub mod bounds;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod minimize;
pub mod oracle;
pub mod ops;
pub mod witness;

pub use automaton::{Alphabet, PartialDfa, RawDfa, StateId, TransitionCounts, ValidationReport};
pub use equivalence::{distinguishing_word, equivalent};
pub use error::{Error, Result};
pub use format::{parse_dfa, render_dfa, render_dot};
pub use minimize::{canonicalize, complete_with_sink, complexity, minimize, ComplexityReport};
pub use ops::{complement, intersection_product, predicted_union_symbol_count, union_product, Product};
pub use witness::{
    chain_star_witness, epsilon_lang, unary_cycle, unary_singleton, union_multi_witness,
    union_symbol_witness, union_total_witness, WitnessFamily, WitnessSpec,
};
