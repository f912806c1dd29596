//! Minimal incomplete DFAs and the complexity measures read off them.
//!
//! The minimal partial DFA of a language is its minimal complete DFA with
//! the dead state removed. [`minimize`] computes it by trimming, adding an
//! explicit sink, running Moore partition refinement and then dropping the
//! sink's class. The result is numbered breadth-first, so two automata for
//! the same language minimize to equal values.

use crate::automaton::{PartialDfa, StateId};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Descriptional complexity of one language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityReport {
    /// States of the minimal incomplete DFA.
    pub sc: usize,
    /// Transitions of the minimal incomplete DFA.
    pub tc: usize,
    /// Per-symbol transition counts, in alphabet order.
    pub tc_per_symbol: Vec<(char, usize)>,
    /// Classes of the right congruence (states of the minimal complete DFA).
    pub nerode_classes: usize,
}

impl ComplexityReport {
    pub fn tc_of(&self, symbol: char) -> usize {
        self.tc_per_symbol
            .iter()
            .find(|(s, _)| *s == symbol)
            .map_or(0, |&(_, n)| n)
    }
}

/// Adds a non-accepting sink that receives every undefined transition.
/// Complete input is returned unchanged with no sink.
pub fn complete_with_sink(dfa: &PartialDfa) -> (PartialDfa, Option<StateId>) {
    if dfa.is_complete() {
        return (dfa.clone(), None);
    }
    let sink = dfa.state_count();
    let k = dfa.alphabet().len();
    let mut table: Vec<Option<StateId>> = dfa
        .table()
        .iter()
        .map(|t| Some(t.unwrap_or(sink)))
        .collect();
    table.extend(std::iter::repeat_n(Some(sink), k));
    let mut accepting = dfa.accepting_flags().to_vec();
    accepting.push(false);
    (
        PartialDfa::from_table(dfa.alphabet().clone(), dfa.start(), accepting, table),
        Some(sink),
    )
}

/// Moore refinement on a complete DFA. Returns the class of every state;
/// class ids are assigned in order of the lowest state index in each class.
pub(crate) fn moore_classes(dfa: &PartialDfa) -> Vec<usize> {
    debug_assert!(dfa.is_complete());
    let n = dfa.state_count();
    let k = dfa.alphabet().len();
    let mut class = renumber_by_first_occurrence(dfa.accepting_flags().iter().map(|&a| a as usize));
    let mut count = class.iter().max().map_or(0, |m| m + 1);
    loop {
        let signatures = (0..n).map(|q| {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|col| class[dfa.step(q, col).expect("complete")]));
            sig
        });
        let next = renumber_by_first_occurrence(signatures);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

fn renumber_by_first_occurrence<K, I>(keys: I) -> Vec<usize>
where
    K: std::hash::Hash + Eq,
    I: IntoIterator<Item = K>,
{
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.into_iter()
        .map(|key| {
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect()
}

/// Breadth-first renumbering of a connected automaton.
///
/// Two connected deterministic automata are isomorphic iff their
/// canonical forms are equal.
pub fn canonicalize(dfa: &PartialDfa) -> Result<PartialDfa> {
    if !dfa.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(dfa.renumber_breadth_first(&vec![true; dfa.state_count()]))
}

struct Reduction {
    minimal: PartialDfa,
    nerode_classes: usize,
}

fn reduce(dfa: &PartialDfa) -> Reduction {
    let trimmed = dfa.trim();
    if trimmed.accepting_states().next().is_none() {
        return Reduction {
            minimal: trimmed,
            nerode_classes: 1,
        };
    }
    let (complete, sink) = complete_with_sink(&trimmed);
    let class = moore_classes(&complete);
    let nerode_classes = class.iter().max().map_or(0, |m| m + 1);
    let sink_class = sink.map(|s| class[s]);

    // Quotient over classes other than the sink's; ids are compacted so the
    // sink's class disappears.
    let mut compact = vec![usize::MAX; nerode_classes];
    let mut representatives = Vec::new();
    for (q, &c) in class.iter().enumerate() {
        if Some(c) != sink_class && compact[c] == usize::MAX {
            compact[c] = representatives.len();
            representatives.push(q);
        }
    }
    let k = complete.alphabet().len();
    let mut table = Vec::with_capacity(representatives.len() * k);
    for &q in &representatives {
        for col in 0..k {
            let target = class[complete.step(q, col).expect("complete")];
            table.push((Some(target) != sink_class).then(|| compact[target]));
        }
    }
    let accepting = representatives.iter().map(|&q| complete.is_accepting(q)).collect();
    let quotient = PartialDfa::from_table(
        complete.alphabet().clone(),
        compact[class[complete.start()]],
        accepting,
        table,
    );
    let minimal = quotient.renumber_breadth_first(&vec![true; quotient.state_count()]);
    Reduction {
        minimal,
        nerode_classes,
    }
}

/// The unique minimal incomplete DFA for `L(dfa)`, canonically numbered.
pub fn minimize(dfa: &PartialDfa) -> PartialDfa {
    reduce(dfa).minimal
}

pub fn complexity(dfa: &PartialDfa) -> ComplexityReport {
    let Reduction {
        minimal,
        nerode_classes,
    } = reduce(dfa);
    let counts = minimal.transition_counts();
    ComplexityReport {
        sc: minimal.state_count(),
        tc: counts.total,
        tc_per_symbol: counts.per_symbol,
        nerode_classes,
    }
}
