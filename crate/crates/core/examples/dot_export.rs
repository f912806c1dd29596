//! Write a minimized union as Graphviz DOT to stdout.
//!
//! `cargo run --example dot_export | dot -Tsvg > union.svg`

use partial_dfa::{minimize, render_dot, union_product, union_symbol_witness, Alphabet};

fn main() -> partial_dfa::Result<()> {
    let bc = Alphabet::from_chars("bc")?;
    let c1 = union_symbol_witness(2, 1, 'b', 'c', bc.clone())?;
    let c2 = union_symbol_witness(3, 2, 'b', 'c', bc)?;
    print!("{}", render_dot(&minimize(&union_product(&c1, &c2)?.dfa)));
    Ok(())
}
