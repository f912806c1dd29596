//! Incomplete deterministic finite automata.
//!
//! A [`PartialDfa`] stores its transition function as a dense table with one
//! row per state and one column per alphabet symbol; a `None` entry is an
//! undefined transition. Reading a symbol whose transition is undefined
//! rejects the word immediately, so no dead state is ever needed.
//!
//! Values are immutable once built. Every constructor validates the
//! invariants, so a `PartialDfa` in hand is always well formed. Unvalidated
//! input lives in [`RawDfa`] until [`RawDfa::validate`] accepts it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a state inside a [`PartialDfa`].
pub type StateId = usize;

/// Ordered set of single-character symbols.
///
/// The order is significant: it fixes breadth-first exploration order,
/// canonical numbering and the order of transition lines in renderings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = char>,
    {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for &s in &symbols {
            if !seen.insert(s) {
                return Err(Error::DuplicateSymbol(s));
            }
        }
        Ok(Self { symbols })
    }

    /// Builds an alphabet from the characters of `s` (`"abc"` → `a b c`).
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.index_of(symbol).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = char> + '_ {
        self.symbols.iter().copied()
    }

    fn require(&self, symbol: char) -> Result<usize> {
        self.index_of(symbol).ok_or(Error::UnknownSymbol(symbol))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Outcome of checking an automaton description against the invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<String>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// An automaton description that has not been validated yet.
///
/// This is what parsers and hand-written fixtures produce. It can express
/// every invariant violation (out-of-range indices, foreign symbols,
/// conflicting transitions), which is what makes [`RawDfa::validate`] useful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDfa {
    pub alphabet: Vec<char>,
    pub state_count: usize,
    pub start: StateId,
    pub accepting: Vec<StateId>,
    pub transitions: Vec<(StateId, char, StateId)>,
}

impl RawDfa {
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.alphabet.is_empty() {
            violations.push("alphabet is empty".to_string());
        }
        let mut seen = BTreeSet::new();
        for &s in &self.alphabet {
            if !seen.insert(s) {
                violations.push(format!("duplicate alphabet symbol '{s}'"));
            }
        }
        if self.state_count == 0 {
            violations.push("automaton has no states".to_string());
        }
        if self.start >= self.state_count {
            violations.push(format!(
                "start state {} out of range 0..{}",
                self.start, self.state_count
            ));
        }
        for &q in &self.accepting {
            if q >= self.state_count {
                violations.push(format!(
                    "accepting state {q} out of range 0..{}",
                    self.state_count
                ));
            }
        }
        let mut defined = BTreeSet::new();
        for &(src, sym, dst) in &self.transitions {
            if src >= self.state_count {
                violations.push(format!(
                    "transition {src} {sym} {dst}: source out of range 0..{}",
                    self.state_count
                ));
            }
            if dst >= self.state_count {
                violations.push(format!(
                    "transition {src} {sym} {dst}: target out of range 0..{}",
                    self.state_count
                ));
            }
            if !self.alphabet.contains(&sym) {
                violations.push(format!(
                    "transition {src} {sym} {dst}: symbol '{sym}' not in alphabet"
                ));
            }
            if !defined.insert((src, sym)) {
                violations.push(format!(
                    "transition {src} {sym} {dst}: more than one target for ({src}, {sym})"
                ));
            }
        }
        ValidationReport::from_violations(violations)
    }

    pub fn into_dfa(self) -> Result<PartialDfa> {
        let report = self.validate();
        if !report.ok {
            return Err(Error::InvalidDfa(report.violations));
        }
        let alphabet = Alphabet {
            symbols: self.alphabet,
        };
        let k = alphabet.len();
        let mut table = vec![None; self.state_count * k];
        for (src, sym, dst) in self.transitions {
            let col = alphabet.index_of(sym).expect("validated");
            table[src * k + col] = Some(dst);
        }
        let mut accepting = vec![false; self.state_count];
        for q in self.accepting {
            accepting[q] = true;
        }
        Ok(PartialDfa {
            alphabet,
            start: self.start,
            accepting,
            table,
        })
    }
}

/// Number of defined transitions, in total and per symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionCounts {
    pub total: usize,
    /// One entry per alphabet symbol, in alphabet order.
    pub per_symbol: Vec<(char, usize)>,
}

impl TransitionCounts {
    /// Count for `symbol`, or 0 when the symbol is not in the alphabet.
    pub fn get(&self, symbol: char) -> usize {
        self.per_symbol
            .iter()
            .find(|(s, _)| *s == symbol)
            .map_or(0, |&(_, n)| n)
    }
}

/// An incomplete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialDfa {
    alphabet: Alphabet,
    start: StateId,
    accepting: Vec<bool>,
    /// Row-major: `table[state * |alphabet| + symbol_index]`.
    table: Vec<Option<StateId>>,
}

impl PartialDfa {
    /// Builds and validates an automaton from a transition list.
    pub fn new<A, T>(
        alphabet: Alphabet,
        state_count: usize,
        start: StateId,
        accepting: A,
        transitions: T,
    ) -> Result<Self>
    where
        A: IntoIterator<Item = StateId>,
        T: IntoIterator<Item = (StateId, char, StateId)>,
    {
        RawDfa {
            alphabet: alphabet.symbols,
            state_count,
            start,
            accepting: accepting.into_iter().collect(),
            transitions: transitions.into_iter().collect(),
        }
        .into_dfa()
    }

    /// Builds an automaton from a dense table. Callers inside the crate
    /// guarantee the invariants.
    pub(crate) fn from_table(
        alphabet: Alphabet,
        start: StateId,
        accepting: Vec<bool>,
        table: Vec<Option<StateId>>,
    ) -> Self {
        let n = accepting.len();
        debug_assert!(start < n);
        debug_assert_eq!(table.len(), n * alphabet.len());
        debug_assert!(table.iter().flatten().all(|&p| p < n));
        Self {
            alphabet,
            start,
            accepting,
            table,
        }
    }

    /// The canonical automaton for the empty language: one non-accepting
    /// start state and no transitions.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        let table = vec![None; alphabet.len()];
        Self::from_table(alphabet, 0, vec![false], table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub(crate) fn accepting_flags(&self) -> &[bool] {
        &self.accepting
    }

    pub(crate) fn table(&self) -> &[Option<StateId>] {
        &self.table
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(q, _)| q)
    }

    /// Successor of `q` on the symbol at alphabet position `col`.
    #[inline]
    pub fn step(&self, q: StateId, col: usize) -> Option<StateId> {
        self.table[q * self.alphabet.len() + col]
    }

    pub fn transition(&self, q: StateId, symbol: char) -> Result<Option<StateId>> {
        let col = self.alphabet.require(symbol)?;
        Ok(self.step(q, col))
    }

    /// All defined transitions ordered by source, then alphabet order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, char, StateId)> + '_ {
        let k = self.alphabet.len();
        self.table.iter().enumerate().filter_map(move |(i, t)| {
            t.map(|dst| (i / k, self.alphabet.symbol(i % k), dst))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn to_raw(&self) -> RawDfa {
        RawDfa {
            alphabet: self.alphabet.symbols.clone(),
            state_count: self.state_count(),
            start: self.start,
            accepting: self.accepting_states().collect(),
            transitions: self.transitions().collect(),
        }
    }

    /// Always `ok`: a constructed `PartialDfa` satisfies its invariants.
    pub fn validate(&self) -> ValidationReport {
        self.to_raw().validate()
    }

    /// Runs the automaton on `word`. A foreign symbol is an error; an
    /// undefined transition simply rejects.
    pub fn accepts<I>(&self, word: I) -> Result<bool>
    where
        I: IntoIterator<Item = char>,
    {
        let mut state = Some(self.start);
        for symbol in word {
            let col = self.alphabet.require(symbol)?;
            state = state.and_then(|q| self.step(q, col));
        }
        Ok(state.is_some_and(|q| self.accepting[q]))
    }

    /// Like [`accepts`](Self::accepts) but ignores whitespace, so
    /// `"c c c"` and `"ccc"` are the same word.
    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        self.accepts(word.chars().filter(|c| !c.is_whitespace()))
    }

    pub(crate) fn reachable_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(q) = queue.pop_front() {
            for col in 0..self.alphabet.len() {
                if let Some(p) = self.step(q, col) {
                    if !seen[p] {
                        seen[p] = true;
                        queue.push_back(p);
                    }
                }
            }
        }
        seen
    }

    pub(crate) fn coaccessible_mask(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut reverse = vec![Vec::new(); n];
        for (src, _, dst) in self.transitions() {
            reverse[dst].push(src);
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<StateId> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// States reachable from the start state.
    pub fn reachable(&self) -> BTreeSet<StateId> {
        mask_to_set(&self.reachable_mask())
    }

    /// States from which some accepting state can be reached.
    pub fn coaccessible(&self) -> BTreeSet<StateId> {
        mask_to_set(&self.coaccessible_mask())
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_mask().iter().all(|&r| r)
    }

    /// Restricts the automaton to useful states (reachable and
    /// coaccessible) and renumbers them in breadth-first order.
    pub fn trim(&self) -> PartialDfa {
        let reach = self.reachable_mask();
        let coacc = self.coaccessible_mask();
        if !coacc[self.start] {
            return Self::empty_language(self.alphabet.clone());
        }
        let keep: Vec<bool> = reach.iter().zip(&coacc).map(|(r, c)| *r && *c).collect();
        self.renumber_breadth_first(&keep)
    }

    /// Breadth-first renumbering over the states marked in `keep`;
    /// transitions into dropped states become undefined. Unreached states
    /// are discarded. `keep[start]` must hold.
    pub(crate) fn renumber_breadth_first(&self, keep: &[bool]) -> PartialDfa {
        debug_assert!(keep[self.start]);
        let k = self.alphabet.len();
        let mut new_id = vec![usize::MAX; self.state_count()];
        let mut order = vec![self.start];
        new_id[self.start] = 0;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for col in 0..k {
                if let Some(p) = self.step(q, col) {
                    if keep[p] && new_id[p] == usize::MAX {
                        new_id[p] = order.len();
                        order.push(p);
                    }
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for col in 0..k {
                table.push(
                    self.step(q, col)
                        .filter(|&p| keep[p])
                        .map(|p| new_id[p]),
                );
            }
        }
        let accepting = order.iter().map(|&q| self.accepting[q]).collect();
        PartialDfa::from_table(self.alphabet.clone(), 0, accepting, table)
    }

    /// Number of defined transitions on the symbol at alphabet position `col`.
    pub fn symbol_count(&self, col: usize) -> usize {
        let k = self.alphabet.len();
        (0..self.state_count())
            .filter(|&q| self.table[q * k + col].is_some())
            .count()
    }

    pub fn transition_counts(&self) -> TransitionCounts {
        let per_symbol: Vec<(char, usize)> = (0..self.alphabet.len())
            .map(|col| (self.alphabet.symbol(col), self.symbol_count(col)))
            .collect();
        TransitionCounts {
            total: self.table.iter().filter(|t| t.is_some()).count(),
            per_symbol,
        }
    }

    /// Checks `|Q| - 1 <= #transitions <= |Σ|·|Q|`, which holds for every
    /// connected automaton.
    pub fn check_size_bounds(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.state_count();
        let total = self.transition_counts().total;
        Ok(n - 1 <= total && total <= self.alphabet.len() * n)
    }
}

fn mask_to_set(mask: &[bool]) -> BTreeSet<StateId> {
    mask.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(q, _)| q)
        .collect()
}
