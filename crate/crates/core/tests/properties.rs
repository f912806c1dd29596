use proptest::prelude::*;

use partial_dfa::ops::union_symbol_count_exact;
use partial_dfa::{
    complement, complexity, equivalent, intersection_product, minimize, parse_dfa, predicted_union_symbol_count,
    render_dfa, union_product, union_symbol_witness, Alphabet, PartialDfa,
};

const SYMBOLS: &str = "abc";

fn dfa_over(k: usize, max_states: usize) -> impl Strategy<Value = PartialDfa> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            proptest::collection::vec(proptest::option::weighted(0.7, 0..n), n * k),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(cells, accepting)| {
                let alphabet = Alphabet::from_chars(&SYMBOLS[..k]).unwrap();
                let symbols: Vec<char> = alphabet.iter().collect();
                let transitions: Vec<_> = cells
                    .iter()
                    .enumerate()
                    .filter_map(|(i, t)| t.map(|to| (i / k, symbols[i % k], to)))
                    .collect();
                let finals: Vec<usize> = (0..n).filter(|&q| accepting[q]).collect();
                PartialDfa::new(alphabet, n, 0, finals, transitions).unwrap()
            })
    })
}

fn dfa() -> impl Strategy<Value = PartialDfa> {
    (1..=3usize).prop_flat_map(|k| dfa_over(k, 5))
}

fn dfa_pair() -> impl Strategy<Value = (PartialDfa, PartialDfa)> {
    (1..=3usize).prop_flat_map(|k| (dfa_over(k, 4), dfa_over(k, 4)))
}

fn word(k: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(0..k, 0..=12).prop_map(|w| w.into_iter().map(|i| SYMBOLS.as_bytes()[i] as char).collect())
}

fn pair_with_words() -> impl Strategy<Value = (PartialDfa, PartialDfa, Vec<String>)> {
    (1..=3usize).prop_flat_map(|k| (dfa_over(k, 4), dfa_over(k, 4), proptest::collection::vec(word(k), 1..20)))
}

proptest! {
    #[test]
    fn trim_is_idempotent_and_language_preserving(d in dfa()) {
        let t = d.trim();
        prop_assert_eq!(t.trim(), t.clone());
        prop_assert_eq!(equivalent(&d, &t), Ok(true));
    }

    #[test]
    fn minimize_preserves_language_and_is_idempotent(d in dfa()) {
        let m = minimize(&d);
        prop_assert_eq!(equivalent(&d, &m), Ok(true));
        prop_assert_eq!(minimize(&m), m.clone());
        prop_assert_eq!(minimize(&d.trim()), m.clone());
        prop_assert!(m.state_count() <= d.trim().state_count());
    }

    #[test]
    fn transition_counts_sum(d in dfa()) {
        let counts = d.transition_counts();
        prop_assert_eq!(counts.per_symbol.iter().map(|(_, n)| n).sum::<usize>(), counts.total);
        prop_assert_eq!(counts.total, d.transitions().count());
    }

    #[test]
    fn render_parse_round_trip(d in dfa()) {
        let text = render_dfa(&d);
        prop_assert_eq!(parse_dfa(&text), Ok(d));
    }

    #[test]
    fn connected_automata_respect_size_bounds(d in dfa()) {
        let t = d.trim();
        if t.is_connected() {
            prop_assert_eq!(t.check_size_bounds(), Ok(true));
        }
    }

    #[test]
    fn complexity_report_invariants(d in dfa()) {
        let r = complexity(&d);
        let m = minimize(&d);
        prop_assert_eq!(r.sc, m.state_count());
        prop_assert_eq!(r.tc, r.tc_per_symbol.iter().map(|(_, n)| n).sum::<usize>());
        prop_assert!(r.tc <= r.sc * d.alphabet().len());
        // The empty language has one Nerode class and an incomplete canonical DFA.
        let empty = m == PartialDfa::empty_language(d.alphabet().clone());
        if !empty {
            let expected = if m.is_complete() { r.sc } else { r.sc + 1 };
            prop_assert_eq!(r.nerode_classes, expected);
        } else {
            prop_assert_eq!(r.nerode_classes, 1);
        }
    }

    #[test]
    fn boolean_operations_match_membership((a, b, words) in pair_with_words()) {
        let union = union_product(&a, &b).unwrap().dfa;
        let inter = intersection_product(&a, &b).unwrap().dfa;
        let comp = complement(&a);
        for w in &words {
            let (x, y) = (a.accepts_str(w).unwrap(), b.accepts_str(w).unwrap());
            prop_assert_eq!(union.accepts_str(w).unwrap(), x || y);
            prop_assert_eq!(inter.accepts_str(w).unwrap(), x && y);
            prop_assert_eq!(comp.accepts_str(w).unwrap(), !x);
        }
    }

    #[test]
    fn de_morgan((a, b) in dfa_pair()) {
        let lhs = complement(&union_product(&a, &b).unwrap().dfa);
        let rhs = intersection_product(&complement(&a), &complement(&b)).unwrap().dfa;
        prop_assert_eq!(equivalent(&lhs, &rhs), Ok(true));
    }

    #[test]
    fn union_symbol_counts_follow_the_construction((a, b) in dfa_pair()) {
        let product = union_product(&a, &b).unwrap().dfa;
        for col in 0..a.alphabet().len() {
            prop_assert_eq!(product.symbol_count(col), union_symbol_count_exact(&a, &b, col));
            if !a.is_complete() && !b.is_complete() {
                let predicted = predicted_union_symbol_count(
                    a.symbol_count(col), b.symbol_count(col), a.state_count(), b.state_count(),
                ).unwrap();
                prop_assert_eq!(product.symbol_count(col), predicted);
            }
        }
    }

    #[test]
    fn intersection_symbol_counts_multiply((a, b) in dfa_pair()) {
        let product = intersection_product(&a, &b).unwrap().dfa;
        for col in 0..a.alphabet().len() {
            prop_assert_eq!(product.symbol_count(col), a.symbol_count(col) * b.symbol_count(col));
        }
    }

    #[test]
    fn complement_is_complete_with_one_extra_state(d in dfa()) {
        let c = complement(&d);
        prop_assert!(c.is_complete());
        prop_assert_eq!(c.transition_counts().total, (d.state_count() + 1) * d.alphabet().len());
        prop_assert_eq!(equivalent(&complement(&c), &d), Ok(true));
    }
}

#[test]
fn union_symbol_witnesses_are_minimal_up_to_six_states() {
    let bc = Alphabet::from_chars("bc").unwrap();
    for n in 2..=6 {
        for k in 1..n {
            let w = union_symbol_witness(n, k, 'b', 'c', bc.clone()).unwrap();
            assert_eq!(minimize(&w), w, "n={n} k={k}");
            let r = complexity(&w);
            assert_eq!((r.sc, r.tc_of('b'), r.tc_of('c')), (n, k, n));
        }
    }
}

#[test]
fn union_membership_on_all_short_words() {
    let bc = Alphabet::from_chars("bc").unwrap();
    let c1 = union_symbol_witness(2, 1, 'b', 'c', bc.clone()).unwrap();
    let c2 = union_symbol_witness(3, 2, 'b', 'c', bc).unwrap();
    let union = minimize(&union_product(&c1, &c2).unwrap().dfa);
    for len in 0..=12u32 {
        for bits in 0..(1u32 << len) {
            let w: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'c' } else { 'b' }).collect();
            let expected = c1.accepts_str(&w).unwrap() || c2.accepts_str(&w).unwrap();
            assert_eq!(union.accepts_str(&w).unwrap(), expected, "word {w:?}");
        }
    }
}
