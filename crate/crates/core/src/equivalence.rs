//! Language equivalence, decided two independent ways.
//!
//! [`equivalent`] compares canonical minimal automata and also explores the
//! synchronized product of the two inputs with implicit dead states. The two
//! answers must agree; a disagreement is reported as [`Error::Internal`].

use std::collections::VecDeque;

use crate::automaton::{PartialDfa, StateId};
use crate::error::{Error, Result};
use crate::minimize::minimize;

fn same_alphabet(d1: &PartialDfa, d2: &PartialDfa) -> Result<()> {
    if d1.alphabet() == d2.alphabet() {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

pub fn equivalent_by_minimization(d1: &PartialDfa, d2: &PartialDfa) -> Result<bool> {
    same_alphabet(d1, d2)?;
    Ok(minimize(d1) == minimize(d2))
}

/// Shortest word accepted by exactly one of the two automata, if any.
///
/// Breadth-first search over reachable pairs `(p, q)` where either side may
/// be dead (`None`). Ties are broken by alphabet order, so the result is the
/// length-lexicographically least witness.
pub fn distinguishing_word(d1: &PartialDfa, d2: &PartialDfa) -> Result<Option<Vec<char>>> {
    same_alphabet(d1, d2)?;
    let k = d1.alphabet().len();
    let width = d2.state_count() + 1;
    let encode = |p: Option<StateId>, q: Option<StateId>| {
        p.map_or(0, |p| p + 1) * width + q.map_or(0, |q| q + 1)
    };
    let total = (d1.state_count() + 1) * width;
    // parent[pair] = (previous pair, symbol column)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut visited = vec![false; total];
    let start = (Some(d1.start()), Some(d2.start()));
    let start_code = encode(start.0, start.1);
    visited[start_code] = true;
    let mut queue = VecDeque::from([(start, start_code)]);

    while let Some(((p, q), code)) = queue.pop_front() {
        let acc1 = p.is_some_and(|p| d1.is_accepting(p));
        let acc2 = q.is_some_and(|q| d2.is_accepting(q));
        if acc1 != acc2 {
            let mut word = Vec::new();
            let mut cur = code;
            while let Some((prev, col)) = parent[cur] {
                word.push(d1.alphabet().symbol(col));
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for col in 0..k {
            let np = p.and_then(|p| d1.step(p, col));
            let nq = q.and_then(|q| d2.step(q, col));
            if np.is_none() && nq.is_none() {
                continue;
            }
            let next = encode(np, nq);
            if !visited[next] {
                visited[next] = true;
                parent[next] = Some((code, col));
                queue.push_back(((np, nq), next));
            }
        }
    }
    Ok(None)
}

pub fn equivalent_by_pair_exploration(d1: &PartialDfa, d2: &PartialDfa) -> Result<bool> {
    Ok(distinguishing_word(d1, d2)?.is_none())
}

/// `L(d1) = L(d2)`, cross-checked by both algorithms.
pub fn equivalent(d1: &PartialDfa, d2: &PartialDfa) -> Result<bool> {
    let by_min = equivalent_by_minimization(d1, d2)?;
    let by_pairs = equivalent_by_pair_exploration(d1, d2)?;
    if by_min != by_pairs {
        return Err(Error::Internal(format!(
            "minimization says {by_min}, pair exploration says {by_pairs}"
        )));
    }
    Ok(by_min)
}
