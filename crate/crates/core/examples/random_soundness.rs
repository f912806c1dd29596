//! Run every sampled upper bound over seeded random pairs of automata.
//!
//! `cargo run --example random_soundness [seed] [pairs]`

use partial_dfa::bounds::{aggregate, params, render_table, sampled_reports, BoundId, DEFAULT_MAX_STATES, DEFAULT_SEED};

fn main() -> partial_dfa::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let pairs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let reports = sampled_reports(seed, pairs, DEFAULT_MAX_STATES)?;
    let key = params([("pairs", pairs as u64), ("seed", seed)]);
    let summary: Vec<_> = BoundId::ALL
        .into_iter()
        .filter(|id| id.is_sampled())
        .map(|id| aggregate(id, key.clone(), &reports))
        .collect();
    print!("{}", render_table(&summary));
    for r in &summary {
        println!("{}: {}", r.bound_id, r.details);
    }
    Ok(())
}
