//! Witness languages that reach the transition-complexity bounds.
//!
//! Every generator takes the alphabet explicitly. Symbols of the alphabet
//! that a family does not use get no transitions at all.

use std::collections::BTreeMap;

use crate::automaton::{Alphabet, PartialDfa};
use crate::error::{invalid, Error, Result};

/// Parameters of one witness family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessFamily {
    /// c-cycle of length `n` with `b`-loops on the first `k` states.
    UnionSymbol { n: usize, k: usize, b: char, c: char },
    /// c-cycle of length `n`; for each `(d, k)` in `loops`, `d`-loops on the first `k` states.
    UnionMulti { n: usize, loops: BTreeMap<char, usize>, c: char },
    /// `loop_sym* (loop_sym* cycle_sym^n)*`.
    UnionTotal { n: usize, loop_sym: char, cycle_sym: char },
    /// `(symbol^n)*`.
    UnaryCycle { n: usize, symbol: char },
    /// `{ symbol^n }`.
    UnarySingleton { n: usize, symbol: char },
    /// `loop_sym* chain_sym^(m-1)`.
    ChainStar { m: usize, loop_sym: char, chain_sym: char },
    /// `{ ε }`.
    Epsilon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSpec {
    pub family: WitnessFamily,
    pub alphabet: Alphabet,
}

impl WitnessSpec {
    pub fn build(&self) -> Result<PartialDfa> {
        let a = self.alphabet.clone();
        match &self.family {
            &WitnessFamily::UnionSymbol { n, k, b, c } => union_symbol_witness(n, k, b, c, a),
            WitnessFamily::UnionMulti { n, loops, c } => union_multi_witness(*n, loops, *c, a),
            &WitnessFamily::UnionTotal { n, loop_sym, cycle_sym } => {
                union_total_witness(n, loop_sym, cycle_sym, a)
            }
            &WitnessFamily::UnaryCycle { n, symbol } => unary_cycle(n, symbol, a),
            &WitnessFamily::UnarySingleton { n, symbol } => unary_singleton(n, symbol, a),
            &WitnessFamily::ChainStar { m, loop_sym, chain_sym } => {
                chain_star_witness(m, loop_sym, chain_sym, a)
            }
            WitnessFamily::Epsilon => Ok(epsilon_lang(a)),
        }
    }
}

fn require_symbol(alphabet: &Alphabet, s: char) -> Result<()> {
    if alphabet.contains(s) {
        Ok(())
    } else {
        Err(Error::UnknownSymbol(s))
    }
}

fn require_distinct(x: char, y: char) -> Result<()> {
    if x == y {
        return Err(invalid(format!("symbols must differ, both are '{x}'")));
    }
    Ok(())
}

/// The cycle-with-loops automaton behind the per-symbol union bound.
pub fn union_symbol_witness(n: usize, k: usize, b: char, c: char, alphabet: Alphabet) -> Result<PartialDfa> {
    union_multi_witness(n, &BTreeMap::from([(b, k)]), c, alphabet)
}

pub fn union_multi_witness(
    n: usize,
    loops: &BTreeMap<char, usize>,
    c: char,
    alphabet: Alphabet,
) -> Result<PartialDfa> {
    require_symbol(&alphabet, c)?;
    if n == 0 {
        return Err(invalid("cycle length must be at least 1"));
    }
    for (&d, &k) in loops {
        require_symbol(&alphabet, d)?;
        require_distinct(d, c)?;
        // The construction needs at least one undefined d-transition.
        if k == 0 || k >= n {
            return Err(invalid(format!("loop count for '{d}' must satisfy 1 <= k < n, got k={k}, n={n}")));
        }
    }
    let mut tr: Vec<_> = (0..n).map(|j| (j, c, (j + 1) % n)).collect();
    for (&d, &k) in loops {
        tr.extend((0..k).map(|j| (j, d, j)));
    }
    PartialDfa::new(alphabet, n, 0, [0], tr)
}

/// c-cycle of length `n` with a single `loop_sym` self-loop on the start.
pub fn union_total_witness(n: usize, loop_sym: char, cycle_sym: char, alphabet: Alphabet) -> Result<PartialDfa> {
    require_symbol(&alphabet, loop_sym)?;
    require_symbol(&alphabet, cycle_sym)?;
    require_distinct(loop_sym, cycle_sym)?;
    if n < 2 {
        return Err(invalid(format!("cycle length must be at least 2, got {n}")));
    }
    let mut tr: Vec<_> = (0..n).map(|j| (j, cycle_sym, (j + 1) % n)).collect();
    tr.push((0, loop_sym, 0));
    PartialDfa::new(alphabet, n, 0, [0], tr)
}

pub fn unary_cycle(n: usize, symbol: char, alphabet: Alphabet) -> Result<PartialDfa> {
    require_symbol(&alphabet, symbol)?;
    if n == 0 {
        return Err(invalid("cycle length must be at least 1"));
    }
    PartialDfa::new(alphabet, n, 0, [0], (0..n).map(|j| (j, symbol, (j + 1) % n)))
}

/// Chain of `n + 1` states accepting exactly `symbol^n`.
pub fn unary_singleton(n: usize, symbol: char, alphabet: Alphabet) -> Result<PartialDfa> {
    require_symbol(&alphabet, symbol)?;
    if n == 0 {
        return Err(invalid("singleton length must be at least 1"));
    }
    PartialDfa::new(alphabet, n + 1, 0, [n], (0..n).map(|j| (j, symbol, j + 1)))
}

/// `m` states: `loop_sym` loop on the start, then a `chain_sym` chain.
pub fn chain_star_witness(m: usize, loop_sym: char, chain_sym: char, alphabet: Alphabet) -> Result<PartialDfa> {
    require_symbol(&alphabet, loop_sym)?;
    require_symbol(&alphabet, chain_sym)?;
    require_distinct(loop_sym, chain_sym)?;
    if m == 0 {
        return Err(invalid("chain parameter m must be at least 1"));
    }
    let mut tr = vec![(0, loop_sym, 0)];
    tr.extend((0..m - 1).map(|j| (j, chain_sym, j + 1)));
    PartialDfa::new(alphabet, m, 0, [m - 1], tr)
}

pub fn epsilon_lang(alphabet: Alphabet) -> PartialDfa {
    PartialDfa::new(alphabet, 1, 0, [0], []).expect("one state, no transitions")
}
