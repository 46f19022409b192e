//! Building a constants database for a small dataset and using it to adjust
//! metric values later without recomputing the null model.

use rank_adjust::constants_db::{build_constants, lookup};
use rank_adjust::{
    adjust, DatasetSpec, MetricDefinition, MetricValue, NullOptions, Side, Split, Stratum,
};

fn main() -> rank_adjust::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let db = dir.path().join("constants.jsonl");

    let dataset = DatasetSpec {
        name: "toy".into(),
        strata: vec![
            Stratum {
                split: Split::Test,
                side: Side::Left,
                sizes: vec![14, 13, 14, 12],
            },
            Stratum {
                split: Split::Test,
                side: Side::Right,
                sizes: vec![14, 14, 11, 14],
            },
        ],
    };
    let metrics: Vec<MetricDefinition> = ["mr", "mrr", "hits@10", "gmr"]
        .iter()
        .map(|m| m.parse())
        .collect::<Result<_, _>>()?;
    let report = build_constants(&dataset, &metrics, &NullOptions::default(), &db, false)?;
    println!("wrote {} records to {}", report.written, db.display());
    print!("{}", std::fs::read_to_string(&db).expect("db readable"));

    let record = lookup("toy", Split::Test, Side::Left, "mrr", &db)?;
    let value = MetricValue::external("mrr".parse()?, 0.61, 4);
    let adjusted = adjust(&value, &record.stats);
    println!(
        "\nleft-side MRR 0.61 -> adjusted index {:.6}",
        adjusted.adjusted_index.unwrap()
    );
    Ok(())
}
