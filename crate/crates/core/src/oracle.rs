//! Brute-force enumeration of small partial DFAs.
//!
//! The enumerator yields every connected partial DFA whose states are
//! numbered in breadth-first discovery order, i.e. exactly one member of
//! each isomorphism class. A table is generated cell by cell (state 0 on
//! every symbol, then state 1, ...). A cell may stay undefined, point at an
//! already discovered state, or discover the next new state. When the scan
//! reaches the row of state `q`, that state must already be discovered.
//!
//! The order is `(state count, table, accepting set)` lexicographic, where
//! an undefined cell sorts before any target and the accepting set is read
//! as a bit string with state 0 most significant.

use std::collections::BTreeMap;
use std::thread;

use rand::Rng;

use crate::automaton::{Alphabet, PartialDfa};
use crate::equivalence::distinguishing_word;
use crate::error::{Error, Result};
use crate::format::render_dfa;
use crate::minimize::minimize;

/// Largest state count the enumerator accepts for each alphabet size.
pub const STATE_LIMITS: [usize; 3] = [6, 4, 3];

fn check_limits(max_states: usize, alphabet: &Alphabet) -> Result<()> {
    if max_states == 0 {
        return Err(Error::LimitExceeded("max_states must be at least 1".into()));
    }
    let k = alphabet.len();
    if k > STATE_LIMITS.len() {
        return Err(Error::LimitExceeded(format!(
            "alphabets of size {k} are too large; at most {} symbols",
            STATE_LIMITS.len()
        )));
    }
    if max_states > STATE_LIMITS[k - 1] {
        return Err(Error::LimitExceeded(format!(
            "at most {} states over a {k}-symbol alphabet, got {max_states}",
            STATE_LIMITS[k - 1]
        )));
    }
    Ok(())
}

/// Lexicographic generator of canonical transition tables for a fixed
/// state count. Cell values: 0 = undefined, `p + 1` = target `p`.
struct TableGen {
    n: usize,
    k: usize,
    cells: Vec<usize>,
    /// `disc[i]` = number of states discovered before cell `i`.
    disc: Vec<usize>,
    started: bool,
    done: bool,
}

impl TableGen {
    fn new(n: usize, k: usize) -> Self {
        let len = n * k;
        Self {
            n,
            k,
            cells: vec![0; len],
            disc: vec![1; len + 1],
            started: false,
            done: false,
        }
    }

    fn max_value(&self, pos: usize) -> usize {
        let d = self.disc[pos];
        if d < self.n {
            d + 1
        } else {
            d
        }
    }

    fn set(&mut self, pos: usize, v: usize) {
        self.cells[pos] = v;
        let d = self.disc[pos];
        self.disc[pos + 1] = d + usize::from(v == d + 1);
    }

    /// Row `pos / k` may only be filled once its state is discovered.
    fn row_ok(&self, pos: usize) -> bool {
        !pos.is_multiple_of(self.k) || pos / self.k < self.disc[pos]
    }

    /// Smallest valid completion of `cells[pos..]`.
    fn complete(&mut self, pos: usize) -> bool {
        let len = self.cells.len();
        if pos == len {
            return self.disc[len] == self.n;
        }
        if !self.row_ok(pos) {
            return false;
        }
        // Not enough cells left to discover the remaining states.
        if self.n - self.disc[pos] > len - pos {
            return false;
        }
        for v in 0..=self.max_value(pos) {
            self.set(pos, v);
            if self.complete(pos + 1) {
                return true;
            }
        }
        false
    }

    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            if self.complete(0) {
                return true;
            }
            self.done = true;
            return false;
        }
        let len = self.cells.len();
        for pos in (0..len).rev() {
            let max = self.max_value(pos);
            let mut v = self.cells[pos] + 1;
            while v <= max {
                self.set(pos, v);
                if self.complete(pos + 1) {
                    return true;
                }
                v += 1;
            }
        }
        self.done = true;
        false
    }

    fn table(&self) -> Vec<Option<usize>> {
        self.cells.iter().map(|&v| v.checked_sub(1)).collect()
    }
}

/// A deterministic position in the canonical enumeration, optionally
/// restricted to one shard. Shard `i` of `count` yields the automata whose
/// global position is congruent to `i` modulo `count`.
pub struct EnumerationCursor {
    max_states: usize,
    alphabet: Alphabet,
    shard: (usize, usize),
    /// Global position of the next automaton.
    position: u64,
    states: usize,
    tables: TableGen,
    table: Vec<Option<usize>>,
    mask: u64,
    has_table: bool,
}

impl EnumerationCursor {
    pub fn new(max_states: usize, alphabet: Alphabet) -> Result<Self> {
        Self::sharded(max_states, alphabet, 0, 1)
    }

    pub fn sharded(max_states: usize, alphabet: Alphabet, index: usize, count: usize) -> Result<Self> {
        check_limits(max_states, &alphabet)?;
        if count == 0 || index >= count {
            return Err(Error::InvalidParameter(format!("invalid shard {index} of {count}")));
        }
        let k = alphabet.len();
        Ok(Self {
            max_states,
            alphabet,
            shard: (index, count),
            position: 0,
            states: 1,
            tables: TableGen::new(1, k),
            table: Vec::new(),
            mask: 0,
            has_table: false,
        })
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn shard(&self) -> (usize, usize) {
        self.shard
    }

    fn build(&self) -> PartialDfa {
        let n = self.states;
        let accepting = (0..n).map(|q| (self.mask >> (n - 1 - q)) & 1 == 1).collect();
        PartialDfa::from_table(self.alphabet.clone(), 0, accepting, self.table.clone())
    }

    /// Next automaton of this shard with its global position.
    pub fn next_with_position(&mut self) -> Option<(u64, PartialDfa)> {
        loop {
            if !self.has_table || self.mask + 1 >= (1u64 << self.states) {
                // Move to the next table, possibly the next state count.
                loop {
                    if self.tables.advance() {
                        break;
                    }
                    if self.states == self.max_states {
                        return None;
                    }
                    self.states += 1;
                    self.tables = TableGen::new(self.states, self.alphabet.len());
                }
                self.table = self.tables.table();
                self.mask = 0;
                self.has_table = true;
            } else {
                self.mask += 1;
            }
            let pos = self.position;
            self.position += 1;
            if pos % self.shard.1 as u64 == self.shard.0 as u64 {
                return Some((pos, self.build()));
            }
        }
    }
}

impl Iterator for EnumerationCursor {
    type Item = PartialDfa;

    fn next(&mut self) -> Option<PartialDfa> {
        self.next_with_position().map(|(_, d)| d)
    }
}

/// All connected canonical partial DFAs with at most `max_states` states.
pub fn enumerate_dfas(max_states: usize, alphabet: Alphabet) -> Result<EnumerationCursor> {
    EnumerationCursor::new(max_states, alphabet)
}

/// Exhaustive minimum transition counts for one language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub min_total: usize,
    /// Per-symbol minima, in alphabet order. Each may be achieved by a
    /// different automaton.
    pub min_per_symbol: Vec<(char, usize)>,
    /// Fewest states over all equivalent automata searched.
    pub min_states: usize,
    /// First enumerated automaton achieving `min_total`.
    pub witness_dfa: PartialDfa,
}

impl OracleResult {
    pub fn min_of(&self, symbol: char) -> usize {
        self.min_per_symbol
            .iter()
            .find(|(s, _)| *s == symbol)
            .map_or(0, |&(_, n)| n)
    }
}

#[derive(Clone, Debug)]
struct Accumulator {
    min_total: usize,
    min_per_symbol: Vec<usize>,
    min_states: usize,
    witness: (u64, PartialDfa),
    first: (u64, PartialDfa),
}

impl Accumulator {
    fn new(pos: u64, dfa: PartialDfa) -> Self {
        let counts = dfa.transition_counts();
        Self {
            min_total: counts.total,
            min_per_symbol: counts.per_symbol.iter().map(|&(_, n)| n).collect(),
            min_states: dfa.state_count(),
            witness: (pos, dfa.clone()),
            first: (pos, dfa),
        }
    }

    fn merge(&mut self, other: Accumulator) {
        for (mine, theirs) in self.min_per_symbol.iter_mut().zip(&other.min_per_symbol) {
            *mine = (*mine).min(*theirs);
        }
        self.min_states = self.min_states.min(other.min_states);
        if (other.min_total, other.witness.0) < (self.min_total, self.witness.0) {
            self.min_total = other.min_total;
            self.witness = other.witness;
        }
        if other.first.0 < self.first.0 {
            self.first = other.first;
        }
    }

    fn into_result(self, alphabet: &Alphabet) -> OracleResult {
        OracleResult {
            min_total: self.min_total,
            min_per_symbol: alphabet.iter().zip(self.min_per_symbol).collect(),
            min_states: self.min_states,
            witness_dfa: self.witness.1,
        }
    }
}

fn shard_count() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get()).min(16)
}

/// Minimum number of transitions, in total and per symbol, over every
/// enumerated automaton with at most `max_states` states that recognizes
/// `L(target)`. `max_states == 0` means `sc(L) + 1`.
pub fn brute_min_transitions(target: &PartialDfa, max_states: usize) -> Result<OracleResult> {
    let minimal = minimize(target);
    let cap = if max_states == 0 {
        minimal.state_count() + 1
    } else {
        max_states
    };
    if minimal.state_count() > cap {
        return Err(Error::InvalidParameter(format!(
            "minimal automaton has {} states, more than the search cap {cap}",
            minimal.state_count()
        )));
    }
    let alphabet = target.alphabet().clone();
    check_limits(cap, &alphabet)?;
    let shards = shard_count();
    let partials: Vec<Option<Accumulator>> = thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|i| {
                let alphabet = alphabet.clone();
                let minimal = &minimal;
                s.spawn(move || {
                    let mut cursor = EnumerationCursor::sharded(cap, alphabet, i, shards).expect("checked");
                    let mut acc: Option<Accumulator> = None;
                    while let Some((pos, dfa)) = cursor.next_with_position() {
                        if distinguishing_word(&dfa, minimal).expect("same alphabet").is_none() {
                            let cur = Accumulator::new(pos, dfa);
                            match acc.as_mut() {
                                Some(a) => a.merge(cur),
                                None => acc = Some(cur),
                            }
                        }
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
    });
    let merged = partials
        .into_iter()
        .flatten()
        .reduce(|mut a, b| {
            a.merge(b);
            a
        })
        .expect("the minimal automaton itself is enumerated");
    Ok(merged.into_result(&alphabet))
}

/// Outcome of the exhaustive check that minimal automata minimize every
/// per-symbol transition count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityReport {
    pub max_states: usize,
    pub alphabet: Alphabet,
    pub automata: u64,
    pub languages: usize,
    pub counterexamples: Vec<String>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Signature of a minimizer under test.
pub type Minimizer = fn(&PartialDfa) -> PartialDfa;

/// Runs [`verify_minimality_with`] on the library's own minimizer.
pub fn verify_minimality(max_states: usize, alphabet: Alphabet) -> Result<MinimalityReport> {
    verify_minimality_with(max_states, alphabet, minimize)
}

/// Groups every enumerated automaton by language and checks, for each
/// language, that `minimizer` returns an equivalent automaton whose state
/// count and per-symbol and total transition counts equal the exhaustive
/// minima, and that its undefined transitions on each symbol number
/// `sc − tc_b`.
///
/// Grouping uses the library minimizer as the key and every member is
/// checked against its key by pair exploration, so a faulty `minimizer`
/// cannot hide behind the grouping.
pub fn verify_minimality_with(max_states: usize, alphabet: Alphabet, minimizer: Minimizer) -> Result<MinimalityReport> {
    check_limits(max_states, &alphabet)?;
    let shards = shard_count();
    type ShardOut = (u64, BTreeMap<PartialDfa, Accumulator>, Vec<(u64, String)>);
    let outputs: Vec<ShardOut> = thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|i| {
                let alphabet = alphabet.clone();
                s.spawn(move || {
                    let mut cursor = EnumerationCursor::sharded(max_states, alphabet, i, shards).expect("checked");
                    let mut groups: BTreeMap<PartialDfa, Accumulator> = BTreeMap::new();
                    let mut problems = Vec::new();
                    let mut seen = 0u64;
                    while let Some((pos, dfa)) = cursor.next_with_position() {
                        seen += 1;
                        let key = minimize(&dfa);
                        if let Some(w) = distinguishing_word(&dfa, &key).expect("same alphabet") {
                            problems.push((
                                pos,
                                format!(
                                    "minimize changed the language (word {:?}) of\n{}",
                                    w.iter().collect::<String>(),
                                    render_dfa(&dfa)
                                ),
                            ));
                            continue;
                        }
                        let cur = Accumulator::new(pos, dfa);
                        match groups.get_mut(&key) {
                            Some(acc) => acc.merge(cur),
                            None => {
                                groups.insert(key, cur);
                            }
                        }
                    }
                    (seen, groups, problems)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard panicked")).collect()
    });

    let mut automata = 0;
    let mut groups: BTreeMap<PartialDfa, Accumulator> = BTreeMap::new();
    let mut problems: Vec<(u64, String)> = Vec::new();
    for (seen, shard_groups, shard_problems) in outputs {
        automata += seen;
        problems.extend(shard_problems);
        for (key, acc) in shard_groups {
            match groups.get_mut(&key) {
                Some(existing) => existing.merge(acc),
                None => {
                    groups.insert(key, acc);
                }
            }
        }
    }
    problems.sort();
    let mut counterexamples: Vec<String> = problems.into_iter().map(|(_, p)| p).collect();

    for (key, acc) in &groups {
        let best = acc.clone().into_result(&alphabet);
        let candidate = minimizer(&acc.first.1);
        let render = || render_dfa(&acc.first.1);
        if let Some(w) = distinguishing_word(&candidate, key).expect("same alphabet") {
            counterexamples.push(format!(
                "minimizer output differs on word {:?} for\n{}",
                w.iter().collect::<String>(),
                render()
            ));
            continue;
        }
        let counts = candidate.transition_counts();
        if candidate.state_count() != best.min_states {
            counterexamples.push(format!(
                "minimizer output has {} states, exhaustive minimum is {} for\n{}",
                candidate.state_count(),
                best.min_states,
                render()
            ));
        }
        if counts.total != best.min_total {
            counterexamples.push(format!(
                "minimizer output has {} transitions, exhaustive minimum is {} for\n{}",
                counts.total,
                best.min_total,
                render()
            ));
        }
        for (col, (&(sym, measured), &(_, minimum))) in
            counts.per_symbol.iter().zip(&best.min_per_symbol).enumerate()
        {
            if measured != minimum {
                counterexamples.push(format!(
                    "minimizer output has {measured} '{sym}'-transitions, exhaustive minimum is {minimum} for\n{}",
                    render()
                ));
            }
            let undefined = candidate.state_count() - candidate.symbol_count(col);
            if best.min_states < minimum || undefined != best.min_states - minimum {
                counterexamples.push(format!(
                    "undefined '{sym}'-transitions {undefined} != sc - tc_{sym} = {} - {minimum} for\n{}",
                    best.min_states,
                    render()
                ));
            }
        }
    }

    Ok(MinimalityReport {
        max_states,
        alphabet,
        automata,
        languages: groups.len(),
        counterexamples,
    })
}

/// Draws a connected canonical partial DFA uniformly among those with at
/// most `max_states` states, keeping only automata satisfying `keep`.
///
/// A raw automaton (start 0, any table, any accepting set) is drawn
/// uniformly and rejected unless it is connected, already in canonical
/// numbering and satisfies `keep`. Each canonical automaton has exactly one
/// raw representation, so acceptance is uniform.
pub fn sample_connected_dfa_where<R, F>(rng: &mut R, max_states: usize, alphabet: &Alphabet, keep: F) -> PartialDfa
where
    R: Rng + ?Sized,
    F: Fn(&PartialDfa) -> bool,
{
    let k = alphabet.len() as i32;
    let weights: Vec<f64> = (1..=max_states)
        .map(|n| ((n + 1) as f64).powi(n as i32 * k) * 2f64.powi(n as i32))
        .collect();
    let total: f64 = weights.iter().sum();
    loop {
        let mut x = rng.random::<f64>() * total;
        let mut n = max_states;
        for (i, w) in weights.iter().enumerate() {
            if x < *w {
                n = i + 1;
                break;
            }
            x -= w;
        }
        let table: Vec<Option<usize>> = (0..n * alphabet.len())
            .map(|_| {
                let v = rng.random_range(0..=n);
                v.checked_sub(1)
            })
            .collect();
        let accepting: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let dfa = PartialDfa::from_table(alphabet.clone(), 0, accepting, table);
        if !dfa.is_connected() {
            continue;
        }
        if dfa.renumber_breadth_first(&vec![true; n]) != dfa {
            continue;
        }
        if keep(&dfa) {
            return dfa;
        }
    }
}

pub fn sample_connected_dfa<R: Rng + ?Sized>(rng: &mut R, max_states: usize, alphabet: &Alphabet) -> PartialDfa {
    sample_connected_dfa_where(rng, max_states, alphabet, |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimize::canonicalize;
    use crate::witness::{union_symbol_witness, unary_singleton};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::from_chars(s).unwrap()
    }

    /// Generate every raw automaton, keep the connected ones and collect
    /// their canonical forms. The frozen counts in the test below were
    /// produced independently by the same brute-force idea in Python.
    fn naive_canonical_set(max_states: usize, alphabet: &Alphabet) -> HashSet<PartialDfa> {
        let k = alphabet.len();
        let mut out = HashSet::new();
        for n in 1..=max_states {
            let cells = n * k;
            let raw_tables = (n + 1).pow(cells as u32);
            for code in 0..raw_tables {
                let mut c = code;
                let table: Vec<Option<usize>> = (0..cells)
                    .map(|_| {
                        let v = c % (n + 1);
                        c /= n + 1;
                        v.checked_sub(1)
                    })
                    .collect();
                for mask in 0..(1u32 << n) {
                    let accepting: Vec<bool> = (0..n).map(|q| mask >> q & 1 == 1).collect();
                    for start in 0..n {
                        let d = PartialDfa::from_table(alphabet.clone(), start, accepting.clone(), table.clone());
                        if let Ok(c) = canonicalize(&d) {
                            out.insert(c);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn one_state_unary_gives_four_automata() {
        let all: Vec<_> = enumerate_dfas(1, alpha("a")).unwrap().collect();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn enumeration_matches_naive_generate_and_canonicalize() {
        for (max, sigma, frozen) in [(2, "a", 16), (2, "ab", 188), (3, "a", 48)] {
            let alphabet = alpha(sigma);
            let listed: Vec<_> = enumerate_dfas(max, alphabet.clone()).unwrap().collect();
            let naive = naive_canonical_set(max, &alphabet);
            assert_eq!(listed.len(), naive.len(), "({max}, {sigma})");
            assert_eq!(listed.len(), frozen, "({max}, {sigma})");
            let listed_set: HashSet<_> = listed.iter().cloned().collect();
            assert_eq!(listed_set.len(), listed.len(), "duplicates for ({max}, {sigma})");
            assert_eq!(listed_set, naive);
            for d in &listed {
                assert_eq!(&canonicalize(d).unwrap(), d);
            }
        }
    }

    #[test]
    fn enumeration_is_ordered_and_shard_invariant() {
        let alphabet = alpha("ab");
        let all: Vec<_> = EnumerationCursor::new(2, alphabet.clone()).unwrap().collect();
        let key = |d: &PartialDfa| {
            let table: Vec<usize> = d.table().iter().map(|t| t.map_or(0, |p| p + 1)).collect();
            (d.state_count(), table, d.accepting_flags().to_vec())
        };
        assert!(all.windows(2).all(|w| key(&w[0]) < key(&w[1])));

        let mut merged: Vec<(u64, PartialDfa)> = Vec::new();
        for i in 0..4 {
            let mut cursor = EnumerationCursor::sharded(2, alphabet.clone(), i, 4).unwrap();
            while let Some(item) = cursor.next_with_position() {
                merged.push(item);
            }
        }
        merged.sort_by_key(|(p, _)| *p);
        let merged: Vec<_> = merged.into_iter().map(|(_, d)| d).collect();
        assert_eq!(merged, all);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(enumerate_dfas(0, alpha("a")), Err(Error::LimitExceeded(_))));
        assert!(matches!(enumerate_dfas(5, alpha("ab")), Err(Error::LimitExceeded(_))));
        assert!(matches!(enumerate_dfas(2, alpha("abcd")), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn brute_minimum_of_small_targets() {
        let eps = PartialDfa::new(alpha("ab"), 1, 0, [0], []).unwrap();
        assert_eq!(brute_min_transitions(&eps, 0).unwrap().min_total, 0);

        let bb = unary_singleton(2, 'b', alpha("b")).unwrap();
        let r = brute_min_transitions(&bb, 0).unwrap();
        assert_eq!(r.min_total, 2);
        assert_eq!(r.min_states, 3);

        let c = union_symbol_witness(3, 1, 'b', 'c', alpha("bc")).unwrap();
        let r = brute_min_transitions(&c, 3).unwrap();
        assert_eq!(r.min_per_symbol, vec![('b', 1), ('c', 3)]);
        assert_eq!(r.witness_dfa, c);

        assert!(brute_min_transitions(&c, 2).is_err());
    }

    #[test]
    fn minimality_small_cases_pass() {
        let r = verify_minimality(1, alpha("a")).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        // Four automata, but both non-accepting ones recognize the empty set.
        assert_eq!((r.automata, r.languages), (4, 3));
        let r = verify_minimality(2, alpha("ab")).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
    }

    fn merges_one_class_too_many(dfa: &PartialDfa) -> PartialDfa {
        let m = minimize(dfa);
        let n = m.state_count();
        if n < 2 {
            return m;
        }
        // Fold the last state into state 0.
        let last = n - 1;
        let k = m.alphabet().len();
        let table: Vec<_> = m.table()[..last * k]
            .iter()
            .map(|t| t.map(|p| if p == last { 0 } else { p }))
            .collect();
        let accepting = m.accepting_flags()[..last].to_vec();
        PartialDfa::from_table(m.alphabet().clone(), 0, accepting, table)
    }

    #[test]
    fn minimality_check_catches_a_faulty_minimizer() {
        let r = verify_minimality_with(2, alpha("ab"), merges_one_class_too_many).unwrap();
        assert!(!r.passed());
        assert!(r.counterexamples[0].contains("alphabet a b"));
    }

    #[test]
    fn sampler_is_deterministic_and_canonical() {
        let alphabet = alpha("abc");
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| sample_connected_dfa(&mut rng, 4, &alphabet)).collect::<Vec<_>>()
        };
        let a = draw(7);
        assert_eq!(a, draw(7));
        for d in &a {
            assert!(d.state_count() <= 4);
            assert_eq!(&canonicalize(d).unwrap(), d);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = sample_connected_dfa_where(&mut rng, 3, &alphabet, |d| !d.is_complete());
        assert!(!d.is_complete());
    }
}
