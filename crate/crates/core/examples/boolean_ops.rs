//! Union, intersection and complement constructions, before and after
//! minimization.

use partial_dfa::{complement, intersection_product, minimize, unary_cycle, unary_singleton, union_product, Alphabet};

fn main() -> partial_dfa::Result<()> {
    let b = Alphabet::from_chars("b")?;
    let two = unary_cycle(2, 'b', b.clone())?;
    let three = unary_cycle(3, 'b', b)?;

    let union = union_product(&two, &three)?;
    let min = minimize(&union.dfa);
    println!(
        "(b^2)* ∪ (b^3)*: product {} states / {} transitions, minimal {} / {}",
        union.dfa.state_count(),
        union.dfa.transition_counts().total,
        min.state_count(),
        min.transition_counts().total
    );

    let inter = intersection_product(&two, &three)?;
    println!("(b^2)* ∩ (b^3)*: tc = {}", minimize(&inter.dfa).transition_counts().total);

    let ab = Alphabet::from_chars("ab")?;
    let single = unary_singleton(3, 'b', ab)?;
    let comp = minimize(&complement(&single));
    let counts = comp.transition_counts();
    println!("complement of {{bbb}} over {{a,b}}: tc = {}, tc_a = {}", counts.total, counts.get('a'));
    for word in ["", "bbb", "bbbb", "ab"] {
        println!("  accepts {word:?}: {}", comp.accepts_str(word)?);
    }
    Ok(())
}
