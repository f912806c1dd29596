//! The complement of a one-word language over {a, b}: no a-transitions
//! before, n + 2 after.

use partial_dfa::{complement, complexity, minimize, unary_singleton, Alphabet};

fn main() -> partial_dfa::Result<()> {
    let ab = Alphabet::from_chars("ab")?;
    println!("{:>3} {:>6} {:>8} {:>8} {:>10}", "n", "tc(L)", "tc_a(L)", "tc(L^c)", "tc_a(L^c)");
    for n in 1..=8 {
        let lang = unary_singleton(n, 'b', ab.clone())?;
        let before = complexity(&lang);
        let after = complexity(&minimize(&complement(&lang)));
        println!(
            "{n:>3} {:>6} {:>8} {:>8} {:>10}",
            before.tc,
            before.tc_of('a'),
            after.tc,
            after.tc_of('a')
        );
    }
    Ok(())
}
