//! Closed-form null expectation and variance, including the two MRR modes.

use rank_adjust::{null_statistics_closed, MetricDefinition, MrrMode};

fn main() -> rank_adjust::Result<()> {
    let sizes = vec![14, 14, 104, 104, 104, 2000];
    for name in ["mr", "mrr", "hits@1", "hits@10"] {
        let metric: MetricDefinition = name.parse()?;
        let s = null_statistics_closed(&metric, &sizes, MrrMode::ExactDiscrete)?;
        println!(
            "{name:>8}  E={:.6}  Var={:.6e}  sd={:.6}",
            s.expectation,
            s.variance,
            s.std_dev()
        );
    }

    println!("\nE[MRR] for a single task of size N");
    let mrr: MetricDefinition = "mrr".parse()?;
    for n in [2, 14, 104, 14_505, 40_559] {
        let exact = null_statistics_closed(&mrr, &[n], MrrMode::ExactDiscrete)?.expectation;
        let cont = null_statistics_closed(&mrr, &[n], MrrMode::PaperContinuous)?.expectation;
        println!(
            "  N={n:>6}  exact {exact:.6}  continuous {cont:.6}  relative gap {:.2}%",
            100.0 * (exact - cont) / exact
        );
    }
    Ok(())
}
