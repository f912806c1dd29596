//! Boolean operations on incomplete DFAs.
//!
//! All three constructions return the full, untrimmed product so that the
//! raw transition counts stay observable; minimize the result to measure
//! transition complexity.

use crate::automaton::{PartialDfa, StateId};
use crate::error::{invalid, Error, Result};

/// One side of a product state: a state of the operand or the padding
/// dead state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    State(StateId),
    Dead,
}

/// Which operand states a product state stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductTag {
    pub left: Component,
    pub right: Component,
}

/// A product automaton together with the pair behind every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub dfa: PartialDfa,
    /// `tags[q]` describes product state `q`.
    pub tags: Vec<ProductTag>,
}

fn check_alphabets(a1: &PartialDfa, a2: &PartialDfa) -> Result<()> {
    if a1.alphabet() != a2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// Union by cross product with dead-state padding.
///
/// Each operand that has at least one undefined transition gets a dead state
/// `d`, numbered last, with no outgoing transitions. Product states are the
/// pairs of `Q1' x Q2'` in row-major order. A product transition is defined
/// when at least one component moves; the side that cannot move goes to `d`.
/// `(d, d)` is never reachable.
pub fn union_product(a1: &PartialDfa, a2: &PartialDfa) -> Result<Product> {
    check_alphabets(a1, a2)?;
    let side = |a: &PartialDfa| {
        let dead = (!a.is_complete()).then_some(a.state_count());
        let width = a.state_count() + usize::from(dead.is_some());
        (dead, width)
    };
    let (dead1, w1) = side(a1);
    let (dead2, w2) = side(a2);
    let component = |dead: Option<StateId>, q: StateId| {
        if Some(q) == dead {
            Component::Dead
        } else {
            Component::State(q)
        }
    };
    let k = a1.alphabet().len();
    let mut table = Vec::with_capacity(w1 * w2 * k);
    let mut accepting = Vec::with_capacity(w1 * w2);
    let mut tags = Vec::with_capacity(w1 * w2);
    for p in 0..w1 {
        let left = component(dead1, p);
        for q in 0..w2 {
            let right = component(dead2, q);
            tags.push(ProductTag { left, right });
            let acc_left = matches!(left, Component::State(p) if a1.is_accepting(p));
            let acc_right = matches!(right, Component::State(q) if a2.is_accepting(q));
            accepting.push(acc_left || acc_right);
            for col in 0..k {
                let np = match left {
                    Component::State(p) => a1.step(p, col),
                    Component::Dead => None,
                };
                let nq = match right {
                    Component::State(q) => a2.step(q, col),
                    Component::Dead => None,
                };
                table.push(match (np, nq) {
                    (Some(np), Some(nq)) => Some(np * w2 + nq),
                    (Some(np), None) => Some(np * w2 + dead2.expect("a2 incomplete")),
                    (None, Some(nq)) => Some(dead1.expect("a1 incomplete") * w2 + nq),
                    (None, None) => None,
                });
            }
        }
    }
    let start = a1.start() * w2 + a2.start();
    Ok(Product {
        dfa: PartialDfa::from_table(a1.alphabet().clone(), start, accepting, table),
        tags,
    })
}

/// Predicted number of `b`-transitions of [`union_product`] from the
/// operands' `b`-counts `t1b`, `t2b` and state counts `q1`, `q2`:
///
/// `t1b·t2b + t1b + t2b + t1b·(q2 − t2b) + t2b·(q1 − t1b)`
///
/// The two bare `t1b`, `t2b` terms count moves out of `(q, d)` and
/// `(d, q)`, so the prediction is exact when both operands have a dead
/// state, i.e. are incomplete. See [`union_symbol_count_exact`].
pub fn predicted_union_symbol_count(t1b: usize, t2b: usize, q1: usize, q2: usize) -> Result<usize> {
    if t1b > q1 || t2b > q2 {
        return Err(invalid(format!(
            "symbol counts ({t1b}, {t2b}) exceed state counts ({q1}, {q2})"
        )));
    }
    Ok(t1b * t2b + t1b + t2b + t1b * (q2 - t2b) + t2b * (q1 - t1b))
}

/// Exact `b`-count of [`union_product`] for any operands: like
/// [`predicted_union_symbol_count`] but the dead-state terms only appear
/// when the corresponding dead state exists.
pub fn union_symbol_count_exact(a1: &PartialDfa, a2: &PartialDfa, col: usize) -> usize {
    let (t1, t2) = (a1.symbol_count(col), a2.symbol_count(col));
    let (q1, q2) = (a1.state_count(), a2.state_count());
    let with_dead2 = if a2.is_complete() { 0 } else { t1 };
    let with_dead1 = if a1.is_complete() { 0 } else { t2 };
    t1 * t2 + t1 * (q2 - t2) + t2 * (q1 - t1) + with_dead1 + with_dead2
}

/// Intersection by plain cross product: a transition is defined only when
/// both components define it. No dead states are added.
pub fn intersection_product(a1: &PartialDfa, a2: &PartialDfa) -> Result<Product> {
    check_alphabets(a1, a2)?;
    let (n1, n2) = (a1.state_count(), a2.state_count());
    let k = a1.alphabet().len();
    let mut table = Vec::with_capacity(n1 * n2 * k);
    let mut accepting = Vec::with_capacity(n1 * n2);
    let mut tags = Vec::with_capacity(n1 * n2);
    for p in 0..n1 {
        for q in 0..n2 {
            tags.push(ProductTag {
                left: Component::State(p),
                right: Component::State(q),
            });
            accepting.push(a1.is_accepting(p) && a2.is_accepting(q));
            for col in 0..k {
                table.push(match (a1.step(p, col), a2.step(q, col)) {
                    (Some(np), Some(nq)) => Some(np * n2 + nq),
                    _ => None,
                });
            }
        }
    }
    Ok(Product {
        dfa: PartialDfa::from_table(a1.alphabet().clone(), a1.start() * n2 + a2.start(), accepting, table),
        tags,
    })
}

/// Complement: one accepting sink `d` (index `|Q|`) receives every undefined
/// transition and loops on every symbol; accepting set `(Q − F) ∪ {d}`.
/// The result is complete with `(|Q| + 1)·|Σ|` transitions.
pub fn complement(a: &PartialDfa) -> PartialDfa {
    let sink = a.state_count();
    let k = a.alphabet().len();
    let mut table: Vec<Option<StateId>> = a.table().iter().map(|t| Some(t.unwrap_or(sink))).collect();
    table.extend(std::iter::repeat_n(Some(sink), k));
    let mut accepting: Vec<bool> = a.accepting_flags().iter().map(|&f| !f).collect();
    accepting.push(true);
    PartialDfa::from_table(a.alphabet().clone(), a.start(), accepting, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::equivalence::equivalent;
    use crate::minimize::{complexity, minimize};

    fn alpha(s: &str) -> Alphabet {
        Alphabet::from_chars(s).unwrap()
    }

    fn cycle_with_loops(n: usize, k: usize) -> PartialDfa {
        let mut tr: Vec<_> = (0..n).map(|j| (j, 'c', (j + 1) % n)).collect();
        tr.extend((0..k).map(|j| (j, 'b', j)));
        PartialDfa::new(alpha("bc"), n, 0, [0], tr).unwrap()
    }

    fn unary_cycle(n: usize) -> PartialDfa {
        PartialDfa::new(alpha("b"), n, 0, [0], (0..n).map(|j| (j, 'b', (j + 1) % n))).unwrap()
    }

    #[test]
    fn union_of_epsilon_languages() {
        let eps = PartialDfa::new(alpha("a"), 1, 0, [0], []).unwrap();
        let u = union_product(&eps, &eps).unwrap();
        assert_eq!(u.dfa.state_count(), 4);
        assert!(u.dfa.accepts([]).unwrap());
        assert!(!u.dfa.accepts(['a']).unwrap());
        assert_eq!(u.tags[3], ProductTag { left: Component::Dead, right: Component::Dead });
    }

    #[test]
    fn union_b_count_matches_prediction() {
        let (c1, c2) = (cycle_with_loops(2, 1), cycle_with_loops(3, 2));
        let u = union_product(&c1, &c2).unwrap();
        assert_eq!(u.dfa.state_count(), 12);
        assert_eq!(u.dfa.transition_counts().get('b'), 8);
        assert_eq!(predicted_union_symbol_count(1, 2, 2, 3), Ok(8));
        assert_eq!(predicted_union_symbol_count(0, 0, 4, 7), Ok(0));
        assert!(predicted_union_symbol_count(3, 0, 2, 2).is_err());
        // (d, d) is never reached.
        let reach = u.dfa.reachable();
        assert!(!reach.contains(&11));
        assert_eq!(reach.len(), 11);
    }

    #[test]
    fn exact_count_differs_only_for_complete_operands() {
        let (c, cyc) = (cycle_with_loops(3, 1), cycle_with_loops(2, 1));
        for col in 0..2 {
            let measured = union_product(&c, &cyc).unwrap().dfa.symbol_count(col);
            assert_eq!(union_symbol_count_exact(&c, &cyc, col), measured);
        }
        // A complete operand has no dead state, so (d, q) moves are absent.
        let full = PartialDfa::new(alpha("bc"), 1, 0, [0], [(0, 'b', 0), (0, 'c', 0)]).unwrap();
        let u = union_product(&full, &c).unwrap();
        let col = 0;
        let measured = u.dfa.symbol_count(col);
        assert_eq!(union_symbol_count_exact(&full, &c, col), measured);
        let predicted = predicted_union_symbol_count(1, 1, 1, 3).unwrap();
        assert_eq!(predicted, measured + 1);
        assert_eq!(equivalent(&u.dfa, &full), Ok(true));
    }

    #[test]
    fn union_recognizes_union() {
        let (c1, c2) = (cycle_with_loops(2, 1), cycle_with_loops(3, 2));
        let u = union_product(&c1, &c2).unwrap().dfa;
        for w in ["", "cc", "ccc", "bcbc", "ccbc", "bbccc", "cb", "cbcbcc"] {
            let expected = c1.accepts_str(w).unwrap() || c2.accepts_str(w).unwrap();
            assert_eq!(u.accepts_str(w).unwrap(), expected, "{w}");
        }
    }

    #[test]
    fn intersection_of_coprime_cycles() {
        let p = intersection_product(&unary_cycle(2), &unary_cycle(3)).unwrap();
        assert_eq!(p.dfa.transition_counts().total, 6);
        assert_eq!(minimize(&p.dfa).state_count(), 6);
        assert_eq!(complexity(&p.dfa).tc, 6);
        let empty = PartialDfa::empty_language(alpha("b"));
        let e = intersection_product(&unary_cycle(2), &empty).unwrap();
        assert_eq!(minimize(&e.dfa), empty);
    }

    #[test]
    fn complement_counts_and_language() {
        let b3 = PartialDfa::new(alpha("ab"), 4, 0, [3], [(0, 'b', 1), (1, 'b', 2), (2, 'b', 3)]).unwrap();
        let c = complement(&b3);
        assert_eq!(c.transition_counts().total, 10);
        let r = complexity(&c);
        assert_eq!(r.tc, 10);
        assert_eq!(r.tc_of('a'), 5);
        assert!(!c.accepts_str("bbb").unwrap());
        assert!(c.accepts_str("bbbb").unwrap());
        assert!(c.accepts_str("abbb").unwrap());

        let star = complement(&PartialDfa::empty_language(alpha("a")));
        let a_star = PartialDfa::new(alpha("a"), 1, 0, [0], [(0, 'a', 0)]).unwrap();
        assert_eq!(equivalent(&star, &a_star), Ok(true));
        assert_eq!(equivalent(&complement(&complement(&b3)), &b3.trim()), Ok(true));
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let err = Err(Error::AlphabetMismatch);
        assert_eq!(union_product(&unary_cycle(2), &cycle_with_loops(2, 1)), err);
        assert_eq!(intersection_product(&unary_cycle(2), &cycle_with_loops(2, 1)), err);
    }
}
