//! Closed-form transition-complexity bounds and a harness that checks them.
//!
//! Every check builds witness automata (or draws seeded random ones),
//! applies the operation, minimizes, and compares the measured complexity
//! with the formula evaluated on the operands' *measured* complexities.
//! Raw construction counts are never trusted for `tc` claims.
//!
//! Tightness checks expect equality; a measured value on either side of
//! the formula is a violation. Upper-bound checks accept anything up to the
//! formula. A stated value that disagrees with measurement is flagged
//! rather than failed. Sampled checks run an upper bound over many random
//! pairs and report the tightest pair.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, PartialDfa};
use crate::error::{invalid, Error, Result};
use crate::format::render_dfa;
use crate::minimize::{complexity, minimize};
use crate::ops::{complement, intersection_product, predicted_union_symbol_count, union_product};
use crate::oracle::sample_connected_dfa_where;
use crate::witness::{
    chain_star_witness, epsilon_lang, unary_cycle, unary_singleton, union_multi_witness,
    union_symbol_witness, union_total_witness,
};

// ---------------------------------------------------------------------------
// Evaluators

/// Per-symbol union bound from `tc_b(L_i)` and `sc(L_i)`:
/// `tb1·tb2 + tb1·(1 + s2 − tb2) + tb2·(1 + s1 − tb1)`.
pub fn union_symbol_upper(tb1: usize, tb2: usize, s1: usize, s2: usize) -> Result<usize> {
    if tb1 > s1 || tb2 > s2 {
        return Err(invalid(format!(
            "symbol complexities ({tb1}, {tb2}) exceed state complexities ({s1}, {s2})"
        )));
    }
    let value = tb1 * tb2 + tb1 * (1 + s2 - tb2) + tb2 * (1 + s1 - tb1);
    // Expanded form k1·n2 + k2·n1 − k1·k2 + k1 + k2.
    let expanded = tb1 * s2 + tb2 * s1 + tb1 + tb2 - tb1 * tb2;
    if value != expanded {
        return Err(Error::Internal(format!("union bound forms disagree: {value} vs {expanded}")));
    }
    Ok(value)
}

/// States needed for the union: `n1·n2 + n1 + n2`.
pub fn union_state_upper(n1: usize, n2: usize) -> Result<usize> {
    if n1 == 0 || n2 == 0 {
        return Err(invalid("state complexities must be at least 1"));
    }
    Ok(n1 * n2 + n1 + n2)
}

/// General union upper bound `2·(t1·t2 + t1 + t2)`.
pub fn union_total_upper(t1: usize, t2: usize) -> usize {
    2 * (t1 * t2 + t1 + t2)
}

/// Union lower bound over three letters, `t1·t2 + t1 + t2 − 1` (0 when both are 0).
pub fn union_total_lower(t1: usize, t2: usize) -> usize {
    (t1 * t2 + t1 + t2).saturating_sub(1)
}

/// Union upper bound when both minimal DFAs define every transition on a
/// common symbol; same value as [`union_total_lower`].
pub fn union_cycle_upper(t1: usize, t2: usize) -> usize {
    union_total_lower(t1, t2)
}

/// Conjectured union bound `t1·t2 + t1 + t2`, only claimed for `t_i >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjectureBound {
    pub value: usize,
    pub applicable: bool,
}

pub fn conjecture_bound(t1: usize, t2: usize) -> ConjectureBound {
    ConjectureBound {
        value: t1 * t2 + t1 + t2,
        applicable: t1 >= 2 && t2 >= 2,
    }
}

/// Unary union bound `t1·t2`, valid only when both complexities are at least 2.
pub fn unary_union_upper(t1: usize, t2: usize) -> Result<usize> {
    if t1 < 2 || t2 < 2 {
        return Err(Error::Inapplicable(format!(
            "unary union bound needs tc >= 2 on both sides, got ({t1}, {t2}); \
             e.g. tc(b) = 1 and tc(b ∪ (b^n)*) exceeds 1·n"
        )));
    }
    Ok(t1 * t2)
}

pub fn intersection_upper(t1: usize, t2: usize) -> usize {
    t1 * t2
}

pub fn intersection_symbol_upper(tb1: usize, tb2: usize) -> usize {
    tb1 * tb2
}

/// Complement bound `|Σ|·(t + 2)`.
pub fn complement_upper(sigma_size: usize, t: usize) -> usize {
    sigma_size * (t + 2)
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn require_coprime(n1: usize, n2: usize) -> Result<()> {
    if gcd(n1, n2) != 1 {
        return Err(Error::NotCoprime(n1, n2));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Reports

/// Identifies one bound (and the family used to probe it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    /// Per-symbol union bound on the cycle-with-loops witnesses.
    UnionSymbolTight,
    /// Per-symbol union with `k_i = n_i − 1`: `n1·n2 + n1 + n2 − 3`.
    UnionSymbolMax,
    /// Per-symbol union bound on every non-cycle symbol at once.
    UnionMultiTight,
    /// State count of the union, `n1·n2 + n1 + n2`.
    UnionStateTight,
    /// Total union lower bound over `{a, b, c}`.
    UnionTotalLower,
    /// Total union bound for witnesses sharing a complete cycle symbol.
    UnionCycleUpper,
    /// Unary union `tc = t1·t2` on coprime cycles.
    UnaryUnionTight,
    /// `tc(b ∪ (b^n)*)` against the stated value `n + 1`.
    UnaryUnionException,
    IntersectionTight,
    IntersectionSymbolTight,
    /// `tc({b^n}^c) = |Σ|·(n + 2)`.
    ComplementTight,
    /// `tc_a({b^n}) = 0` while `tc_a({b^n}^c) = n + 2`.
    ComplementSymbolBlowup,
    /// `tc(a* b^(m−1) + ε) = m + 2`, beyond the conjectured bound.
    ConjectureSmall,
    // Sampled upper bounds.
    UnionTotalUpper,
    UnionSymbolUpper,
    UnionStateUpper,
    UnionProductCount,
    UnionCycleSampled,
    UnaryUnionUpper,
    IntersectionUpper,
    IntersectionSymbolUpper,
    ComplementUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Tight,
    Upper,
    /// A stated value that is compared but only flagged on mismatch.
    Stated,
}

impl BoundId {
    pub const ALL: [BoundId; 22] = [
        BoundId::UnionSymbolTight,
        BoundId::UnionSymbolMax,
        BoundId::UnionMultiTight,
        BoundId::UnionStateTight,
        BoundId::UnionTotalLower,
        BoundId::UnionCycleUpper,
        BoundId::UnaryUnionTight,
        BoundId::UnaryUnionException,
        BoundId::IntersectionTight,
        BoundId::IntersectionSymbolTight,
        BoundId::ComplementTight,
        BoundId::ComplementSymbolBlowup,
        BoundId::ConjectureSmall,
        BoundId::UnionTotalUpper,
        BoundId::UnionSymbolUpper,
        BoundId::UnionStateUpper,
        BoundId::UnionProductCount,
        BoundId::UnionCycleSampled,
        BoundId::UnaryUnionUpper,
        BoundId::IntersectionUpper,
        BoundId::IntersectionSymbolUpper,
        BoundId::ComplementUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::UnionSymbolTight => "union-symbol-tight",
            BoundId::UnionSymbolMax => "union-symbol-max",
            BoundId::UnionMultiTight => "union-multi-tight",
            BoundId::UnionStateTight => "union-state-tight",
            BoundId::UnionTotalLower => "union-total-lower",
            BoundId::UnionCycleUpper => "union-cycle-upper",
            BoundId::UnaryUnionTight => "unary-union-tight",
            BoundId::UnaryUnionException => "unary-union-exception",
            BoundId::IntersectionTight => "intersection-tight",
            BoundId::IntersectionSymbolTight => "intersection-symbol-tight",
            BoundId::ComplementTight => "complement-tight",
            BoundId::ComplementSymbolBlowup => "complement-symbol-blowup",
            BoundId::ConjectureSmall => "conjecture-small",
            BoundId::UnionTotalUpper => "union-total-upper",
            BoundId::UnionSymbolUpper => "union-symbol-upper",
            BoundId::UnionStateUpper => "union-state-upper",
            BoundId::UnionProductCount => "union-product-count",
            BoundId::UnionCycleSampled => "union-cycle-sampled",
            BoundId::UnaryUnionUpper => "unary-union-upper",
            BoundId::IntersectionUpper => "intersection-upper",
            BoundId::IntersectionSymbolUpper => "intersection-symbol-upper",
            BoundId::ComplementUpper => "complement-upper",
        }
    }

    pub fn from_name(name: &str) -> Option<BoundId> {
        Self::ALL.into_iter().find(|id| id.name() == name)
    }

    pub fn expectation(self) -> Expectation {
        use BoundId::*;
        match self {
            UnionCycleUpper | UnionTotalUpper | UnionSymbolUpper | UnionStateUpper
            | UnionCycleSampled | UnaryUnionUpper | IntersectionUpper | IntersectionSymbolUpper
            | ComplementUpper => Expectation::Upper,
            UnaryUnionException => Expectation::Stated,
            _ => Expectation::Tight,
        }
    }

    /// Sampled bounds take `seed`, `pairs` and `max_states` parameters.
    pub fn is_sampled(self) -> bool {
        self >= BoundId::UnionTotalUpper
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Equal,
    WithinBound,
    Violation,
    /// Measured value contradicts a stated value that is reported, not enforced.
    Flagged,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "EQUAL",
            Relation::WithinBound => "WITHIN_BOUND",
            Relation::Violation => "VIOLATION",
            Relation::Flagged => "FLAGGED",
        })
    }
}

pub type Params = BTreeMap<String, u64>;

/// Builds a [`Params`] map from `(name, value)` pairs.
pub fn params<const N: usize>(entries: [(&str, u64); N]) -> Params {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheckReport {
    pub bound_id: BoundId,
    pub params: Params,
    pub formula_value: usize,
    pub measured_value: usize,
    pub relation: Relation,
    pub details: String,
    /// Minimized automata behind the measurement, as `.pdfa` text with a
    /// leading comment naming each one.
    pub artifacts: Vec<String>,
}

impl BoundCheckReport {
    /// `bound_id param=val ... formula=F measured=M verdict=V`
    pub fn line(&self) -> String {
        let mut out = self.bound_id.name().to_string();
        for (k, v) in &self.params {
            write!(out, " {k}={v}").unwrap();
        }
        write!(
            out,
            " formula={} measured={} verdict={}",
            self.formula_value, self.measured_value, self.relation
        )
        .unwrap();
        out
    }

    pub fn is_violation(&self) -> bool {
        self.relation == Relation::Violation
    }
}

fn classify(expect: Expectation, formula: usize, measured: usize) -> Relation {
    match (expect, measured.cmp(&formula)) {
        (_, std::cmp::Ordering::Equal) => Relation::Equal,
        (Expectation::Upper, std::cmp::Ordering::Less) => Relation::WithinBound,
        (Expectation::Stated, _) => Relation::Flagged,
        _ => Relation::Violation,
    }
}

fn artifact(label: &str, dfa: &PartialDfa) -> String {
    format!("# {label}\n{}", render_dfa(dfa))
}

struct Draft {
    formula: usize,
    measured: usize,
    details: Vec<String>,
    /// Side conditions that failed; any entry forces a violation.
    failures: Vec<String>,
    artifacts: Vec<String>,
}

impl Draft {
    fn new(formula: usize, measured: usize) -> Self {
        Self {
            formula,
            measured,
            details: Vec::new(),
            failures: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, message: String) {
        if !ok {
            self.failures.push(message);
        }
    }

    fn finish(self, id: BoundId, params: Params) -> BoundCheckReport {
        let mut relation = classify(id.expectation(), self.formula, self.measured);
        let mut details = self.details;
        if !self.failures.is_empty() {
            relation = Relation::Violation;
            details.extend(self.failures);
        }
        BoundCheckReport {
            bound_id: id,
            params,
            formula_value: self.formula,
            measured_value: self.measured,
            relation,
            details: details.join("; "),
            artifacts: self.artifacts,
        }
    }
}

fn get(params: &Params, name: &str) -> Result<usize> {
    params
        .get(name)
        .map(|&v| v as usize)
        .ok_or_else(|| invalid(format!("missing parameter `{name}`")))
}

fn get_or(params: &Params, name: &str, default: usize) -> usize {
    params.get(name).map_or(default, |&v| v as usize)
}

fn alpha(s: &str) -> Alphabet {
    Alphabet::from_chars(s).expect("static alphabet")
}

/// First `size` symbols of `b a c d ...`, so `b` is always present.
fn alphabet_with_b(size: usize) -> Result<Alphabet> {
    const POOL: &str = "bacdefghijklmnopqrstuvwxyz";
    if size == 0 || size > POOL.len() {
        return Err(invalid(format!("alphabet size must be in 1..={}", POOL.len())));
    }
    let mut symbols: Vec<char> = POOL.chars().take(size).collect();
    symbols.sort_unstable();
    Alphabet::new(symbols)
}

// ---------------------------------------------------------------------------
// Tightness checks on witness families

fn check_union_symbol(id: BoundId, n1: usize, n2: usize, k1: usize, k2: usize, p: Params) -> Result<BoundCheckReport> {
    require_coprime(n1, n2)?;
    let bc = alpha("bc");
    let c1 = union_symbol_witness(n1, k1, 'b', 'c', bc.clone())?;
    let c2 = union_symbol_witness(n2, k2, 'b', 'c', bc)?;
    let (r1, r2) = (complexity(&c1), complexity(&c2));
    let union = minimize(&union_product(&c1, &c2)?.dfa);
    let measured = union.transition_counts().get('b');
    let formula = union_symbol_upper(r1.tc_of('b'), r2.tc_of('b'), r1.sc, r2.sc)?;
    let mut d = Draft::new(formula, measured);
    for (i, (r, n, k)) in [(&r1, n1, k1), (&r2, n2, k2)].into_iter().enumerate() {
        d.require(
            r.sc == n && r.tc_of('b') == k,
            format!("operand {} has sc={} tc_b={}, expected {n} and {k}", i + 1, r.sc, r.tc_of('b')),
        );
    }
    if id == BoundId::UnionSymbolMax {
        let closed = n1 * n2 + n1 + n2 - 3;
        d.require(formula == closed, format!("formula {formula} != n1·n2 + n1 + n2 − 3 = {closed}"));
    }
    d.details.push(format!("tc_b(L1)={} tc_b(L2)={}", r1.tc_of('b'), r2.tc_of('b')));
    d.artifacts.push(artifact("minimized union", &union));
    Ok(d.finish(id, p))
}

fn check_union_multi(n1: usize, n2: usize, p: &Params) -> Result<BoundCheckReport> {
    require_coprime(n1, n2)?;
    let abc = alpha("abc");
    let loops = |n: usize, suffix: &str| -> BTreeMap<char, usize> {
        BTreeMap::from([
            ('a', get_or(p, &format!("ka{suffix}"), 1)),
            ('b', get_or(p, &format!("kb{suffix}"), n - 1)),
        ])
    };
    let c1 = union_multi_witness(n1, &loops(n1, "1"), 'c', abc.clone())?;
    let c2 = union_multi_witness(n2, &loops(n2, "2"), 'c', abc)?;
    let (r1, r2) = (complexity(&c1), complexity(&c2));
    let union = complexity(&union_product(&c1, &c2)?.dfa);
    let mut formula = 0;
    let mut measured = 0;
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for sym in ['a', 'b'] {
        let f = union_symbol_upper(r1.tc_of(sym), r2.tc_of(sym), r1.sc, r2.sc)?;
        let m = union.tc_of(sym);
        formula += f;
        measured += m;
        details.push(format!("tc_{sym}: formula {f} measured {m}"));
        if f != m {
            failures.push(format!("symbol {sym} not tight"));
        }
    }
    let mut d = Draft::new(formula, measured);
    d.details = details;
    d.failures = failures;
    d.require(r1.sc == n1 && r2.sc == n2, format!("operand sc ({}, {}) != ({n1}, {n2})", r1.sc, r2.sc));
    Ok(d.finish(BoundId::UnionMultiTight, p.clone()))
}

fn check_union_state(n1: usize, n2: usize, k1: usize, k2: usize, p: Params) -> Result<BoundCheckReport> {
    require_coprime(n1, n2)?;
    let bc = alpha("bc");
    let c1 = union_symbol_witness(n1, k1, 'b', 'c', bc.clone())?;
    let c2 = union_symbol_witness(n2, k2, 'b', 'c', bc)?;
    let (r1, r2) = (complexity(&c1), complexity(&c2));
    let union = minimize(&union_product(&c1, &c2)?.dfa);
    let mut d = Draft::new(union_state_upper(r1.sc, r2.sc)?, union.state_count());
    d.artifacts.push(artifact("minimized union", &union));
    Ok(d.finish(BoundId::UnionStateTight, p))
}

fn total_witness_pair(n1: usize, n2: usize) -> Result<(PartialDfa, PartialDfa)> {
    let abc = alpha("abc");
    Ok((
        union_total_witness(n1, 'a', 'c', abc.clone())?,
        union_total_witness(n2, 'b', 'c', abc)?,
    ))
}

fn check_union_total(id: BoundId, n1: usize, n2: usize, p: Params) -> Result<BoundCheckReport> {
    if id == BoundId::UnionTotalLower {
        require_coprime(n1, n2)?;
    }
    let (w1, w2) = total_witness_pair(n1, n2)?;
    let (r1, r2) = (complexity(&w1), complexity(&w2));
    let union = minimize(&union_product(&w1, &w2)?.dfa);
    let measured = union.transition_counts().total;
    let mut d = Draft::new(union_total_lower(r1.tc, r2.tc), measured);
    d.require(
        r1.tc == n1 + 1 && r2.tc == n2 + 1,
        format!("operand tc ({}, {}) != ({}, {})", r1.tc, r2.tc, n1 + 1, n2 + 1),
    );
    if id == BoundId::UnionCycleUpper {
        let (m1, m2) = (minimize(&w1), minimize(&w2));
        let shared = (0..m1.alphabet().len())
            .any(|col| m1.symbol_count(col) == m1.state_count() && m2.symbol_count(col) == m2.state_count());
        d.require(shared, "operands have no common complete symbol".into());
    }
    d.details.push(format!("tc(L1)={} tc(L2)={}", r1.tc, r2.tc));
    d.artifacts.push(artifact("minimized union", &union));
    Ok(d.finish(id, p))
}

fn check_unary_union(n1: usize, n2: usize, p: Params) -> Result<BoundCheckReport> {
    if n1 < 3 || n2 < 2 {
        return Err(invalid(format!("tightness needs n1 >= 3 and n2 >= 2, got ({n1}, {n2})")));
    }
    require_coprime(n1, n2)?;
    let b = alpha("b");
    let (w1, w2) = (unary_cycle(n1, 'b', b.clone())?, unary_cycle(n2, 'b', b)?);
    let (t1, t2) = (complexity(&w1).tc, complexity(&w2).tc);
    let union = minimize(&union_product(&w1, &w2)?.dfa);
    let mut d = Draft::new(unary_union_upper(t1, t2)?, union.transition_counts().total);
    d.artifacts.push(artifact("minimized union", &union));
    Ok(d.finish(BoundId::UnaryUnionTight, p))
}

fn check_unary_exception(n: usize, p: Params) -> Result<BoundCheckReport> {
    if n < 2 {
        return Err(invalid(format!("exception probe needs n >= 2, got {n}")));
    }
    let b = alpha("b");
    let single = unary_singleton(1, 'b', b.clone())?;
    let cycle = unary_cycle(n, 'b', b)?;
    let (t1, t2) = (complexity(&single).tc, complexity(&cycle).tc);
    let union = minimize(&union_product(&single, &cycle)?.dfa);
    let measured = union.transition_counts().total;
    let mut d = Draft::new(n + 1, measured);
    // The probe's point is that the product bound fails here.
    d.require(
        measured > t1 * t2,
        format!("measured {measured} does not exceed tc(b)·tc((b^n)*) = {}", t1 * t2),
    );
    d.details.push(format!("exceeds tc(b)·tc((b^n)*) = {}", t1 * t2));
    if measured != n + 1 {
        d.details.push(format!("stated value n+1 = {} differs from measured {measured}", n + 1));
    }
    d.artifacts.push(artifact("minimized union", &union));
    Ok(d.finish(BoundId::UnaryUnionException, p))
}

fn check_intersection(id: BoundId, n1: usize, n2: usize, p: Params) -> Result<BoundCheckReport> {
    require_coprime(n1, n2)?;
    // The per-symbol variant carries an unused extra symbol.
    let sigma = if id == BoundId::IntersectionSymbolTight {
        alpha("ab")
    } else {
        alpha("b")
    };
    let w1 = unary_cycle(n1, 'b', sigma.clone())?;
    let w2 = unary_cycle(n2, 'b', sigma)?;
    let (r1, r2) = (complexity(&w1), complexity(&w2));
    let product = intersection_product(&w1, &w2)?.dfa;
    let minimal = minimize(&product);
    let mut d = if id == BoundId::IntersectionSymbolTight {
        Draft::new(
            intersection_symbol_upper(r1.tc_of('b'), r2.tc_of('b')),
            minimal.transition_counts().get('b'),
        )
    } else {
        Draft::new(intersection_upper(r1.tc, r2.tc), minimal.transition_counts().total)
    };
    d.require(
        minimal.state_count() == product.state_count(),
        format!("product has {} states, minimal {}", product.state_count(), minimal.state_count()),
    );
    d.artifacts.push(artifact("minimized intersection", &minimal));
    Ok(d.finish(id, p))
}

fn check_complement(id: BoundId, sigma: usize, n: usize, p: Params) -> Result<BoundCheckReport> {
    let alphabet = alphabet_with_b(sigma)?;
    let lang = unary_singleton(n, 'b', alphabet.clone())?;
    let r = complexity(&lang);
    let comp = minimize(&complement(&lang));
    let counts = comp.transition_counts();
    let mut d = if id == BoundId::ComplementSymbolBlowup {
        let a = alphabet.iter().find(|&s| s != 'b').ok_or_else(|| invalid("needs a symbol other than b"))?;
        let mut d = Draft::new(n + 2, counts.get(a));
        d.require(r.tc_of(a) == 0, format!("tc_{a}(L) = {} != 0", r.tc_of(a)));
        d.details.push(format!("tc_{a}(L)=0 tc_{a}(L^c)={}", counts.get(a)));
        d
    } else {
        Draft::new(complement_upper(alphabet.len(), r.tc), counts.total)
    };
    d.require(r.tc == n, format!("tc({{b^{n}}}) = {} != {n}", r.tc));
    d.artifacts.push(artifact("minimized complement", &comp));
    Ok(d.finish(id, p))
}

fn check_conjecture_small(m: usize, p: Params) -> Result<BoundCheckReport> {
    if m < 2 {
        return Err(invalid(format!("needs m >= 2 (for m = 1 the ε is absorbed by a*), got {m}")));
    }
    let ab = alpha("ab");
    let eps = epsilon_lang(ab.clone());
    let chain = chain_star_witness(m, 'a', 'b', ab)?;
    let (t_eps, t_chain) = (complexity(&eps).tc, complexity(&chain).tc);
    let union = minimize(&union_product(&chain, &eps)?.dfa);
    let measured = union.transition_counts().total;
    let mut d = Draft::new(m + 2, measured);
    d.require(t_eps == 0, format!("tc({{ε}}) = {t_eps} != 0"));
    d.require(t_chain == m, format!("tc(a* b^{}) = {t_chain} != {m}", m - 1));
    let conj = conjecture_bound(t_eps, t_chain);
    d.details.push(format!(
        "conjectured bound {} (applicable: {}) exceeded by {}",
        conj.value,
        conj.applicable,
        measured.saturating_sub(conj.value)
    ));
    d.artifacts.push(artifact("minimized union", &union));
    Ok(d.finish(BoundId::ConjectureSmall, p))
}

// ---------------------------------------------------------------------------
// Sampled soundness checks

/// Default number of random pairs for sampled checks.
pub const DEFAULT_PAIRS: usize = 200;
/// Default state cap for sampled operands.
pub const DEFAULT_MAX_STATES: usize = 4;
/// Default seed.
pub const DEFAULT_SEED: u64 = 20100808;

/// Seeded pairs of connected canonical partial DFAs sharing an alphabet of
/// 1 to 3 symbols, each drawn uniformly with at most `max_states` states.
pub fn sample_pairs(seed: u64, count: usize, max_states: usize) -> Vec<(PartialDfa, PartialDfa)> {
    sample_pairs_where(seed, count, max_states, |_| true)
}

pub fn sample_pairs_where<F>(seed: u64, count: usize, max_states: usize, keep: F) -> Vec<(PartialDfa, PartialDfa)>
where
    F: Fn(&PartialDfa) -> bool,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let size = rng.random_range(1..=3);
            let alphabet = Alphabet::from_chars(&"abc"[..size]).expect("static");
            let a1 = sample_connected_dfa_where(&mut rng, max_states, &alphabet, &keep);
            let a2 = sample_connected_dfa_where(&mut rng, max_states, &alphabet, &keep);
            (a1, a2)
        })
        .collect()
}

fn pair_params(seed: u64, index: usize) -> Params {
    params([("pair", index as u64), ("seed", seed)])
}

/// Every sampled upper bound applicable to one operand pair.
pub fn pair_reports(seed: u64, index: usize, a1: &PartialDfa, a2: &PartialDfa) -> Result<Vec<BoundCheckReport>> {
    let (r1, r2) = (complexity(a1), complexity(a2));
    let union_min = minimize(&union_product(a1, a2)?.dfa);
    let union = complexity(&union_min);
    let inter = complexity(&intersection_product(a1, a2)?.dfa);
    let comp = complexity(&complement(a1));
    let sigma = a1.alphabet();
    let p = || pair_params(seed, index);
    let operands = || vec![artifact("operand 1", &minimize(a1)), artifact("operand 2", &minimize(a2))];
    let mut out = Vec::new();
    let mut push = |id: BoundId, formula: usize, measured: usize, details: String| {
        let mut d = Draft::new(formula, measured);
        d.details.push(details);
        d.artifacts = operands();
        out.push(d.finish(id, p()));
    };

    push(
        BoundId::UnionTotalUpper,
        union_total_upper(r1.tc, r2.tc),
        union.tc,
        format!("tc(L1)={} tc(L2)={}", r1.tc, r2.tc),
    );
    push(
        BoundId::UnionStateUpper,
        union_state_upper(r1.sc, r2.sc)?,
        union.sc,
        format!("sc(L1)={} sc(L2)={}", r1.sc, r2.sc),
    );
    for sym in sigma.iter() {
        push(
            BoundId::UnionSymbolUpper,
            union_symbol_upper(r1.tc_of(sym), r2.tc_of(sym), r1.sc, r2.sc)?,
            union.tc_of(sym),
            format!("symbol {sym}"),
        );
        push(
            BoundId::IntersectionSymbolUpper,
            intersection_symbol_upper(r1.tc_of(sym), r2.tc_of(sym)),
            inter.tc_of(sym),
            format!("symbol {sym}"),
        );
    }
    let per_symbol_sum: usize = sigma.iter().map(|s| r1.tc_of(s) * r2.tc_of(s)).sum();
    push(
        BoundId::IntersectionUpper,
        intersection_upper(r1.tc, r2.tc),
        inter.tc,
        format!("Σ_b tc_b(L1)·tc_b(L2) = {per_symbol_sum}"),
    );
    push(
        BoundId::ComplementUpper,
        complement_upper(sigma.len(), r1.tc),
        comp.tc,
        format!("|Σ|={} tc(L)={}", sigma.len(), r1.tc),
    );
    if sigma.len() == 1 && r1.tc >= 2 && r2.tc >= 2 {
        push(
            BoundId::UnaryUnionUpper,
            unary_union_upper(r1.tc, r2.tc)?,
            union.tc,
            format!("tc(L1)={} tc(L2)={}", r1.tc, r2.tc),
        );
    }
    let (m1, m2) = (minimize(a1), minimize(a2));
    let shared = (0..sigma.len()).find(|&col| {
        m1.symbol_count(col) == m1.state_count() && m2.symbol_count(col) == m2.state_count()
    });
    if let Some(col) = shared {
        push(
            BoundId::UnionCycleSampled,
            union_cycle_upper(r1.tc, r2.tc),
            union.tc,
            format!("common complete symbol {}", sigma.symbol(col)),
        );
    }
    Ok(out)
}

/// Construction-count exactness of the union product on one pair: the
/// measured count per symbol against the predicted count. Both operands
/// must be incomplete for the prediction to apply.
pub fn product_count_report(seed: u64, index: usize, a1: &PartialDfa, a2: &PartialDfa) -> Result<BoundCheckReport> {
    if a1.is_complete() || a2.is_complete() {
        return Err(invalid("construction count prediction needs incomplete operands"));
    }
    let product = union_product(a1, a2)?.dfa;
    let mut formula = 0;
    let mut measured = 0;
    let mut d = Draft::new(0, 0);
    for col in 0..a1.alphabet().len() {
        let predicted = predicted_union_symbol_count(
            a1.symbol_count(col),
            a2.symbol_count(col),
            a1.state_count(),
            a2.state_count(),
        )?;
        let actual = product.symbol_count(col);
        formula += predicted;
        measured += actual;
        d.require(
            predicted == actual,
            format!("symbol {}: predicted {predicted}, constructed {actual}", a1.alphabet().symbol(col)),
        );
    }
    d.formula = formula;
    d.measured = measured;
    d.artifacts = vec![artifact("operand 1", a1), artifact("operand 2", a2)];
    Ok(d.finish(BoundId::UnionProductCount, pair_params(seed, index)))
}

/// Per-pair reports for every sampled bound, in pair order.
pub fn sampled_reports(seed: u64, pairs: usize, max_states: usize) -> Result<Vec<BoundCheckReport>> {
    let mut out = Vec::new();
    for (i, (a1, a2)) in sample_pairs(seed, pairs, max_states).iter().enumerate() {
        out.extend(pair_reports(seed, i, a1, a2)?);
    }
    let incomplete = sample_pairs_where(seed, pairs, max_states, |d| !d.is_complete());
    for (i, (a1, a2)) in incomplete.iter().enumerate() {
        out.push(product_count_report(seed, i, a1, a2)?);
    }
    Ok(out)
}

/// Collapses per-pair reports of one sampled bound into a single report:
/// the first violation if any, otherwise the pair with the least slack.
pub fn aggregate(id: BoundId, params: Params, reports: &[BoundCheckReport]) -> BoundCheckReport {
    let mine: Vec<&BoundCheckReport> = reports.iter().filter(|r| r.bound_id == id).collect();
    let violations = mine.iter().filter(|r| r.is_violation()).count();
    let equalities = mine.iter().filter(|r| r.relation == Relation::Equal).count();
    let chosen = mine.iter().find(|r| r.is_violation()).or_else(|| {
        // Least slack; among equals the largest instance says the most.
        mine.iter().min_by_key(|r| {
            (
                r.formula_value.saturating_sub(r.measured_value),
                std::cmp::Reverse(r.formula_value),
            )
        })
    });
    let summary = format!("{} checks, {violations} violations, {equalities} equal", mine.len());
    match chosen {
        Some(r) => BoundCheckReport {
            bound_id: id,
            params,
            formula_value: r.formula_value,
            measured_value: r.measured_value,
            relation: r.relation,
            details: {
                let pair = r.params.get("pair").copied().unwrap_or_default();
                if r.details.is_empty() {
                    format!("{summary}; reported pair {pair}")
                } else {
                    format!("{summary}; reported pair {pair} ({})", r.details)
                }
            },
            artifacts: r.artifacts.clone(),
        },
        None => BoundCheckReport {
            bound_id: id,
            params,
            formula_value: 0,
            measured_value: 0,
            relation: Relation::WithinBound,
            details: format!("{summary}; no applicable pairs"),
            artifacts: Vec::new(),
        },
    }
}

// ---------------------------------------------------------------------------
// Entry points

/// Runs one bound check.
///
/// Parameters by bound:
/// * `union-symbol-tight`, `union-state-tight`: `n1 n2 [k1 k2]` (k default 1)
/// * `union-symbol-max`, `union-total-lower`, `union-cycle-upper`,
///   `unary-union-tight`, `intersection-tight`, `intersection-symbol-tight`: `n1 n2`
/// * `union-multi-tight`: `n1 n2 [ka1 kb1 ka2 kb2]`
/// * `unary-union-exception`, `complement-symbol-blowup`: `n`
/// * `complement-tight`: `sigma n`
/// * `conjecture-small`: `m`
/// * sampled bounds: `[seed pairs max_states]`
pub fn check_bound(id: BoundId, p: &Params) -> Result<BoundCheckReport> {
    use BoundId::*;
    if id.is_sampled() {
        let seed = p.get("seed").copied().unwrap_or(DEFAULT_SEED);
        let pairs = get_or(p, "pairs", DEFAULT_PAIRS);
        let max_states = get_or(p, "max_states", DEFAULT_MAX_STATES);
        let reports = sampled_reports(seed, pairs, max_states)?;
        let key = params([("max_states", max_states as u64), ("pairs", pairs as u64), ("seed", seed)]);
        return Ok(aggregate(id, key, &reports));
    }
    match id {
        UnionSymbolTight => {
            let (n1, n2) = (get(p, "n1")?, get(p, "n2")?);
            // Coprimality is the first requirement reported.
            require_coprime(n1, n2)?;
            let (k1, k2) = (get_or(p, "k1", 1), get_or(p, "k2", 1));
            let key = params([("k1", k1 as u64), ("k2", k2 as u64), ("n1", n1 as u64), ("n2", n2 as u64)]);
            check_union_symbol(id, n1, n2, k1, k2, key)
        }
        UnionSymbolMax => {
            let (n1, n2) = (get(p, "n1")?, get(p, "n2")?);
            require_coprime(n1, n2)?;
            if n1 < 2 || n2 < 2 {
                return Err(invalid("needs n1, n2 >= 2"));
            }
            let key = params([("n1", n1 as u64), ("n2", n2 as u64)]);
            check_union_symbol(id, n1, n2, n1 - 1, n2 - 1, key)
        }
        UnionMultiTight => check_union_multi(get(p, "n1")?, get(p, "n2")?, p),
        UnionStateTight => {
            let (n1, n2) = (get(p, "n1")?, get(p, "n2")?);
            require_coprime(n1, n2)?;
            let (k1, k2) = (get_or(p, "k1", 1), get_or(p, "k2", 1));
            let key = params([("k1", k1 as u64), ("k2", k2 as u64), ("n1", n1 as u64), ("n2", n2 as u64)]);
            check_union_state(n1, n2, k1, k2, key)
        }
        UnionTotalLower | UnionCycleUpper => {
            let (n1, n2) = (get(p, "n1")?, get(p, "n2")?);
            check_union_total(id, n1, n2, params([("n1", n1 as u64), ("n2", n2 as u64)]))
        }
        UnaryUnionTight => {
            let (n1, n2) = (get(p, "n1")?, get(p, "n2")?);
            check_unary_union(n1, n2, params([("n1", n1 as u64), ("n2", n2 as u64)]))
        }
        UnaryUnionException => {
            let n = get(p, "n")?;
            check_unary_exception(n, params([("n", n as u64)]))
        }
        IntersectionTight | IntersectionSymbolTight => {
            let (n1, n2) = (get(p, "n1")?, get(p, "n2")?);
            check_intersection(id, n1, n2, params([("n1", n1 as u64), ("n2", n2 as u64)]))
        }
        ComplementTight => {
            let (sigma, n) = (get_or(p, "sigma", 2), get(p, "n")?);
            check_complement(id, sigma, n, params([("n", n as u64), ("sigma", sigma as u64)]))
        }
        ComplementSymbolBlowup => {
            let n = get(p, "n")?;
            check_complement(id, 2, n, params([("n", n as u64)]))
        }
        ConjectureSmall => {
            let m = get(p, "m")?;
            check_conjecture_small(m, params([("m", m as u64)]))
        }
        _ => unreachable!("sampled bounds handled above"),
    }
}

/// Coprime pairs `2 <= n1 < n2 <= max_n`.
pub fn coprime_pairs(max_n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n1 in 2..=max_n {
        for n2 in n1 + 1..=max_n {
            if gcd(n1, n2) == 1 {
                out.push((n1, n2));
            }
        }
    }
    out
}

/// The full tightness and soundness suite, sorted by bound then parameters.
pub fn run_suite(max_n: usize, seed: u64, pairs: usize) -> Result<Vec<BoundCheckReport>> {
    use BoundId::*;
    let mut out = Vec::new();
    let n = |v: usize| v as u64;
    for (n1, n2) in coprime_pairs(max_n) {
        for k1 in 1..n1 {
            for k2 in 1..n2 {
                let p = params([("n1", n(n1)), ("n2", n(n2)), ("k1", n(k1)), ("k2", n(k2))]);
                out.push(check_bound(UnionSymbolTight, &p)?);
                out.push(check_bound(UnionStateTight, &p)?);
            }
        }
        let p = params([("n1", n(n1)), ("n2", n(n2))]);
        for id in [UnionSymbolMax, UnionMultiTight, UnionTotalLower, IntersectionTight, IntersectionSymbolTight] {
            out.push(check_bound(id, &p)?);
        }
    }
    for n1 in 2..=max_n {
        for n2 in n1..=max_n {
            out.push(check_bound(UnionCycleUpper, &params([("n1", n(n1)), ("n2", n(n2))]))?);
        }
    }
    for n1 in 3..=max_n {
        for n2 in 2..=max_n {
            if n1 != n2 && gcd(n1, n2) == 1 {
                out.push(check_bound(UnaryUnionTight, &params([("n1", n(n1)), ("n2", n(n2))]))?);
            }
        }
    }
    for v in 1..=max_n {
        for sigma in 1..=3 {
            out.push(check_bound(ComplementTight, &params([("sigma", sigma), ("n", n(v))]))?);
        }
        out.push(check_bound(ComplementSymbolBlowup, &params([("n", n(v))]))?);
        if v >= 2 {
            out.push(check_bound(UnaryUnionException, &params([("n", n(v))]))?);
            out.push(check_bound(ConjectureSmall, &params([("m", n(v))]))?);
        }
    }
    let reports = sampled_reports(seed, pairs, DEFAULT_MAX_STATES)?;
    let key = params([("max_states", n(DEFAULT_MAX_STATES)), ("pairs", n(pairs)), ("seed", seed)]);
    for id in BoundId::ALL.into_iter().filter(|id| id.is_sampled()) {
        out.push(aggregate(id, key.clone(), &reports));
    }
    out.sort_by(|a, b| (a.bound_id, &a.params).cmp(&(b.bound_id, &b.params)));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Rendering

pub fn render_lines(reports: &[BoundCheckReport]) -> String {
    reports.iter().map(|r| r.line() + "\n").collect()
}

/// Aligned plain-text table with a one-line summary.
pub fn render_table(reports: &[BoundCheckReport]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            [
                r.bound_id.name().to_string(),
                params.join(" "),
                r.formula_value.to_string(),
                r.measured_value.to_string(),
                r.relation.to_string(),
            ]
        })
        .collect();
    let header = ["bound", "params", "formula", "measured", "verdict"].map(String::from);
    let mut widths = header.each_ref().map(String::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let line = format!(
            "{:<w0$}  {:<w1$}  {:>w2$}  {:>w3$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            row[4],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let count = |rel| reports.iter().filter(|r| r.relation == rel).count();
    writeln!(
        out,
        "{} checks: {} equal, {} within bound, {} flagged, {} violations",
        reports.len(),
        count(Relation::Equal),
        count(Relation::WithinBound),
        count(Relation::Flagged),
        count(Relation::Violation)
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluator_values() {
        assert_eq!(union_symbol_upper(1, 2, 2, 3), Ok(8));
        assert_eq!(union_symbol_upper(0, 0, 5, 7), Ok(0));
        assert!(union_symbol_upper(3, 0, 2, 2).is_err());
        assert_eq!(union_state_upper(2, 3), Ok(11));
        assert_eq!(union_state_upper(1, 1), Ok(3));
        assert_eq!(union_state_upper(3, 4), Ok(19));
        assert_eq!(union_total_upper(3, 4), 38);
        assert_eq!(union_total_lower(3, 4), 18);
        assert_eq!(union_cycle_upper(3, 4), 18);
        assert_eq!(unary_union_upper(3, 2), Ok(6));
        assert_eq!(unary_union_upper(3, 4), Ok(12));
        assert!(matches!(unary_union_upper(1, 5), Err(Error::Inapplicable(_))));
        assert_eq!(intersection_upper(2, 3), 6);
        assert_eq!(intersection_symbol_upper(2, 3), 6);
        assert_eq!(complement_upper(2, 3), 10);
    }

    #[test]
    fn union_symbol_identity_on_grid() {
        for n1 in 0..=8 {
            for n2 in 0..=8 {
                for k1 in 0..=n1 {
                    for k2 in 0..=n2 {
                        let expected = k1 * n2 + k2 * n1 + k1 + k2 - k1 * k2;
                        assert_eq!(union_symbol_upper(k1, k2, n1, n2), Ok(expected));
                    }
                }
                if n1 >= 1 && n2 >= 1 {
                    assert_eq!(
                        union_symbol_upper(n1 - 1, n2 - 1, n1, n2),
                        Ok(n1 * n2 + n1 + n2 - 3)
                    );
                }
            }
        }
    }

    #[test]
    fn conjecture_applicability() {
        let c = conjecture_bound(0, 3);
        assert_eq!(c, ConjectureBound { value: 3, applicable: false });
        assert!(conjecture_bound(2, 2).applicable);
    }

    #[test]
    fn bound_names_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(BoundId::from_name(id.name()), Some(id));
        }
        assert_eq!(BoundId::from_name("nope"), None);
    }

    #[test]
    fn check_reports_line_format() {
        let r = check_bound(
            BoundId::UnionSymbolTight,
            &params([("n1", 2), ("n2", 3), ("k1", 1), ("k2", 2)]),
        )
        .unwrap();
        assert_eq!(r.line(), "union-symbol-tight k1=1 k2=2 n1=2 n2=3 formula=8 measured=8 verdict=EQUAL");
        assert!(r.artifacts[0].starts_with("# minimized union\nalphabet b c\n"));
    }

    #[test]
    fn non_coprime_tightness_fails_fast() {
        let p = params([("n1", 2), ("n2", 4)]);
        assert_eq!(check_bound(BoundId::UnionSymbolTight, &p), Err(Error::NotCoprime(2, 4)));
        assert_eq!(check_bound(BoundId::IntersectionTight, &p), Err(Error::NotCoprime(2, 4)));
        // Upper bounds do not need coprimality.
        let r = check_bound(BoundId::UnionCycleUpper, &p).unwrap();
        assert_ne!(r.relation, Relation::Violation);
    }

    #[test]
    fn complement_tight_example() {
        let r = check_bound(BoundId::ComplementTight, &params([("sigma", 2), ("n", 3)])).unwrap();
        assert_eq!((r.formula_value, r.measured_value, r.relation), (10, 10, Relation::Equal));
    }

    #[test]
    fn classify_rules() {
        assert_eq!(classify(Expectation::Tight, 5, 5), Relation::Equal);
        assert_eq!(classify(Expectation::Tight, 5, 4), Relation::Violation);
        assert_eq!(classify(Expectation::Upper, 5, 4), Relation::WithinBound);
        assert_eq!(classify(Expectation::Upper, 5, 6), Relation::Violation);
        assert_eq!(classify(Expectation::Stated, 3, 4), Relation::Flagged);
    }

    #[test]
    fn sampled_pairs_are_reproducible() {
        assert_eq!(sample_pairs(3, 5, 3), sample_pairs(3, 5, 3));
        assert_ne!(sample_pairs(3, 5, 3), sample_pairs(4, 5, 3));
        for (a1, a2) in sample_pairs(9, 20, 4) {
            assert_eq!(a1.alphabet(), a2.alphabet());
            assert!(a1.is_connected() && a2.is_connected());
        }
    }

    #[test]
    fn table_rendering_is_aligned() {
        let reports = vec![
            check_bound(BoundId::ComplementTight, &params([("sigma", 2), ("n", 3)])).unwrap(),
            check_bound(BoundId::IntersectionTight, &params([("n1", 2), ("n2", 3)])).unwrap(),
        ];
        let table = render_table(&reports);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("bound"));
        assert_eq!(lines[3], "2 checks: 2 equal, 0 within bound, 0 flagged, 0 violations");
        assert_eq!(render_lines(&reports).lines().count(), 2);
    }
}
