//! Check the union bounds on the witness families for small coprime pairs.

use partial_dfa::bounds::{check_bound, coprime_pairs, params, render_table, BoundId};

fn main() -> partial_dfa::Result<()> {
    let mut reports = Vec::new();
    for (n1, n2) in coprime_pairs(5) {
        let (a, b) = (n1 as u64, n2 as u64);
        reports.push(check_bound(BoundId::UnionSymbolTight, &params([("n1", a), ("n2", b), ("k1", 1), ("k2", b - 1)]))?);
        for id in [BoundId::UnionSymbolMax, BoundId::UnionTotalLower, BoundId::UnionCycleUpper] {
            reports.push(check_bound(id, &params([("n1", a), ("n2", b)]))?);
        }
        reports.push(check_bound(BoundId::UnionStateTight, &params([("n1", a), ("n2", b)]))?);
    }
    print!("{}", render_table(&reports));

    // Tightness needs coprime cycle lengths.
    match check_bound(BoundId::UnionSymbolTight, &params([("n1", 2), ("n2", 4)])) {
        Err(e) => println!("\n(2, 4): {e}"),
        Ok(r) => println!("\n(2, 4): {}", r.line()),
    }
    Ok(())
}
