//! Parse a DFA, minimize it and print its complexity measures.
//!
//! Run with `cargo run --example analyze [file.pdfa]`.

use partial_dfa::{complexity, minimize, parse_dfa, render_dfa};

const DEFAULT: &str = "\
# a* b b, with a redundant copy of the b-chain
alphabet a b
states 5
start 0
accept 2 4
0 a 0
0 b 1
1 b 2
3 b 4
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let dfa = parse_dfa(&text)?;
    let report = complexity(&dfa);
    println!("input: {} states, {} transitions", dfa.state_count(), dfa.transition_counts().total);
    println!("sc = {}", report.sc);
    println!("tc = {}", report.tc);
    for (symbol, n) in &report.tc_per_symbol {
        println!("tc_{symbol} = {n}");
    }
    println!("Nerode classes = {}", report.nerode_classes);
    println!("\nminimal DFA:\n{}", render_dfa(&minimize(&dfa)));
    Ok(())
}
