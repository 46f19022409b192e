//! Monte Carlo null statistics for metrics without a closed form, and a
//! check of the estimator against closed forms where they exist.

use rank_adjust::{null_statistics_closed, null_statistics_monte_carlo, MetricDefinition, MrrMode};

fn main() -> rank_adjust::Result<()> {
    let sizes = vec![100; 500];
    for name in ["mr", "mrr"] {
        let metric: MetricDefinition = name.parse()?;
        let closed = null_statistics_closed(&metric, &sizes, MrrMode::ExactDiscrete)?;
        let mc = null_statistics_monte_carlo(&metric, &sizes, 10_000, 7)?;
        let se = (closed.variance / 10_000.0).sqrt();
        println!(
            "{name:>5}  closed E={:.6}  MC E={:.6}  ({:+.2} standard errors)",
            closed.expectation,
            mc.expectation,
            (mc.expectation - closed.expectation) / se
        );
    }
    for name in ["gmr", "hmr", "igmr", "imr"] {
        let metric: MetricDefinition = name.parse()?;
        let mc = null_statistics_monte_carlo(&metric, &sizes, 10_000, 7)?;
        println!(
            "{name:>5}  MC E={:.6}  Var={:.3e}",
            mc.expectation, mc.variance
        );
    }
    // same seed, same answer, regardless of thread count
    let a = null_statistics_monte_carlo(&"gmr".parse()?, &sizes, 2_000, 42)?;
    let b = null_statistics_monte_carlo(&"gmr".parse()?, &sizes, 2_000, 42)?;
    assert_eq!(a, b);
    println!("reproducible: {}", a.expectation == b.expectation);
    Ok(())
}
