//! Turning candidate scores into ranks under the three tie policies,
//! with and without filtering known-true candidates.

use rank_adjust::{score_to_rank, TiePolicy};

fn main() -> rank_adjust::Result<()> {
    let true_score = 0.8;
    let scores = [0.9, 0.8, 0.8, 0.95, 0.1, 0.8];
    // the 0.95 entry is another known-true answer, so it is filtered out
    let mask = [false, false, false, true, false, false];

    for policy in [
        TiePolicy::Optimistic,
        TiePolicy::Realistic,
        TiePolicy::Pessimistic,
    ] {
        let raw = score_to_rank(true_score, &scores, &[], policy)?;
        let filtered = score_to_rank(true_score, &scores, &mask, policy)?;
        println!(
            "{policy:?}: raw rank {} of {}, filtered rank {} of {}",
            raw.rank, raw.num_candidates, filtered.rank, filtered.num_candidates
        );
    }
    Ok(())
}
