//! Every built-in metric on one rank set, plus a custom composition.

use rank_adjust::{
    builtin_registry, Direction, MetricDefinition, PostTransform, PowerMeanOrder, RankSet,
    RankTransform,
};

fn main() -> rank_adjust::Result<()> {
    let ranks = RankSet::from_pairs([(1.0, 14), (2.0, 14), (4.0, 14), (9.0, 14), (1.0, 14)])?;
    for metric in builtin_registry().definitions() {
        let v = metric.evaluate(&ranks)?;
        println!(
            "{:>15} ({:?})  {:.6}",
            metric.name(),
            metric.direction(),
            v.value
        );
    }
    for k in [1, 3, 5] {
        let v = MetricDefinition::hits_at(k).evaluate(&ranks)?;
        println!("{:>15}  {:.6}", format!("hits@{k}"), v.value);
    }

    // quadratic mean of reciprocal ranks, not one of the named metrics
    let custom = MetricDefinition::new(
        "qmrr",
        RankTransform::Reciprocal,
        PowerMeanOrder::QUADRATIC,
        PostTransform::Identity,
        Direction::Increasing,
    )?;
    println!(
        "{:>15} ({:?})  {:.6}",
        custom.name(),
        custom.direction(),
        custom.evaluate(&ranks)?.value
    );
    Ok(())
}
