//! Adjusting metric values taken from a published results table, where only the value
//! and the evaluation's candidate set sizes are known.

use rank_adjust::{adjust, null_statistics_closed, MetricValue, MrrMode};

fn main() -> rank_adjust::Result<()> {
    // a test split with 3134 tasks, all ranked against 14541 candidates
    let sizes = vec![14_541; 3134];
    let published = [
        ("mrr", 0.335),
        ("mr", 177.0),
        ("hits@10", 0.521),
        ("hits@1", 0.241),
    ];
    println!(
        "{:>8} {:>9} {:>12} {:>12} {:>10}",
        "metric", "value", "expectation", "index", "z"
    );
    for (name, value) in published {
        let metric = name.parse()?;
        let null = null_statistics_closed(&metric, &sizes, MrrMode::ExactDiscrete)?;
        let adjusted = adjust(&MetricValue::external(metric, value, sizes.len()), &null);
        println!(
            "{name:>8} {value:>9} {:>12.6} {:>12.6} {:>10.1}",
            null.expectation,
            adjusted.adjusted_index.unwrap_or(f64::NAN),
            adjusted.z_score.unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
