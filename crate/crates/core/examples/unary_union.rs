//! Unary unions: coprime cycles multiply, and the tc = 1 case escapes the
//! product bound.

use partial_dfa::bounds::{check_bound, params, BoundId};
use partial_dfa::{complexity, union_product, unary_cycle, unary_singleton, Alphabet};

fn main() -> partial_dfa::Result<()> {
    for (n1, n2) in [(3, 2), (3, 4), (5, 2), (5, 3)] {
        let r = check_bound(BoundId::UnaryUnionTight, &params([("n1", n1), ("n2", n2)]))?;
        println!("{}", r.line());
    }
    let b = Alphabet::from_chars("b")?;
    for n in 2..=6 {
        let single = unary_singleton(1, 'b', b.clone())?;
        let cycle = unary_cycle(n, 'b', b.clone())?;
        let tc = complexity(&union_product(&single, &cycle)?.dfa).tc;
        println!("tc(b ∪ (b^{n})*) = {tc}, while tc(b)·tc((b^{n})*) = {n}");
    }
    Ok(())
}
