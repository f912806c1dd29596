//! Build every witness family and print its size.

use std::collections::BTreeMap;

use partial_dfa::{complexity, render_dfa, Alphabet, WitnessFamily, WitnessSpec};

fn main() -> partial_dfa::Result<()> {
    let families = [
        (WitnessFamily::UnionSymbol { n: 4, k: 2, b: 'b', c: 'c' }, "bc"),
        (WitnessFamily::UnionMulti { n: 3, loops: BTreeMap::from([('a', 1), ('b', 2)]), c: 'c' }, "abc"),
        (WitnessFamily::UnionTotal { n: 3, loop_sym: 'a', cycle_sym: 'c' }, "abc"),
        (WitnessFamily::UnaryCycle { n: 5, symbol: 'b' }, "b"),
        (WitnessFamily::UnarySingleton { n: 3, symbol: 'b' }, "ab"),
        (WitnessFamily::ChainStar { m: 3, loop_sym: 'a', chain_sym: 'b' }, "ab"),
        (WitnessFamily::Epsilon, "ab"),
    ];
    for (family, sigma) in families {
        let spec = WitnessSpec { family, alphabet: Alphabet::from_chars(sigma)? };
        let dfa = spec.build()?;
        let r = complexity(&dfa);
        println!("{:?}\n  sc={} tc={} per symbol {:?}", spec.family, r.sc, r.tc, r.tc_per_symbol);
    }
    let c = WitnessSpec {
        family: WitnessFamily::UnionSymbol { n: 3, k: 1, b: 'b', c: 'c' },
        alphabet: Alphabet::from_chars("bc")?,
    };
    println!("\n{}", render_dfa(&c.build()?));
    Ok(())
}
