use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rank_adjust::report::ResultTable;
use rank_adjust::{evaluate_adjusted, NullOptions, RankSet};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rank-adjust"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn scores_to_adjusted_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.jsonl");
    fs::write(
        &scores,
        concat!(
            "{\"true_score\": 0.9, \"candidate_scores\": [0.9, 0.1, 0.2, 0.3], \"side\": \"left\"}\n",
            "{\"true_score\": 0.5, \"candidate_scores\": [0.9, 0.5, 0.7, 0.1, 0.2], \"side\": \"right\"}\n",
            "{\"true_score\": 0.4, \"candidate_scores\": [0.4, 0.4, 0.8, 0.9], \"mask\": [false, false, false, true], \"side\": \"left\"}\n",
        ),
    )
    .unwrap();
    let ranks = dir.path().join("ranks.jsonl");
    stdout_of(&["rank", "--scores", p(&scores), "--format", "json", "--output", p(&ranks)]);
    let text = fs::read_to_string(&ranks).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("{\"rank\":1.0,\"num_candidates\":4,\"side\":\"left\"}"));

    let json = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", "mrr,mr,hits@1,gmr", "--format", "json"]);
    let table = ResultTable::from_json(&json).unwrap();
    assert_eq!(table.rows.len(), 4);
    assert_eq!(table.rows[0].label, "ranks");
    assert_eq!(table.rows[3].null_method.as_deref(), Some("monte_carlo"));

    // the JSON output carries the library's values exactly
    let set = RankSet::from_pairs([(1.0, 4), (3.0, 5), (2.5, 3)]).unwrap();
    for row in &table.rows {
        let direct = evaluate_adjusted(&row.metric.parse().unwrap(), &set, &NullOptions::default()).unwrap();
        assert_eq!(row.value, direct.base.value);
        assert_eq!(row.adjusted_index, direct.adjusted_index);
        assert_eq!(row.z, direct.z_score);
    }

    // CSV keeps 12 significant digits
    let csv = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", "mrr,mr,hits@1,gmr"]);
    let from_csv = ResultTable::from_csv(&csv).unwrap();
    for (a, b) in from_csv.rows.iter().zip(&table.rows) {
        let pairs = [
            (Some(a.value), Some(b.value)),
            (a.expectation, b.expectation),
            (a.adjusted_index, b.adjusted_index),
            (a.z, b.z),
        ];
        for (x, y) in pairs {
            let (x, y) = (x.unwrap(), y.unwrap());
            assert!((x - y).abs() <= 5e-12 * y.abs().max(1e-300), "{x} vs {y}");
        }
    }

    let left = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", "mr", "--side", "left", "--format", "json"]);
    assert_eq!(ResultTable::from_json(&left).unwrap().rows[0].n, 2);
}

#[test]
fn constants_database_workflow() {
    let dir = tempfile::tempdir().unwrap();
    let ranks = dir.path().join("ranks.csv");
    fs::write(&ranks, "rank,num_candidates,side\n1,14,left\n3,14,right\n7,13,left\n2,14,right\n").unwrap();
    let db = dir.path().join("constants.jsonl");

    let summary = stdout_of(&[
        "build-constants", "--db", p(&db), "--ranks", p(&ranks), "--dataset", "toy", "--metrics", "mr,mrr,hits@10",
    ]);
    assert_eq!(summary, format!("written,failed,db\n9,0,{}\n", db.display()));
    assert_eq!(fs::read_to_string(&db).unwrap().lines().count(), 9);

    // rebuilding identical records is a no-op
    stdout_of(&["build-constants", "--db", p(&db), "--ranks", p(&ranks), "--dataset", "toy", "--metrics", "mr,mrr,hits@10"]);
    assert_eq!(fs::read_to_string(&db).unwrap().lines().count(), 9);

    let on_the_fly = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", "mr,mrr,hits@10", "--format", "json"]);
    let from_db = stdout_of(&[
        "compute", "--ranks", p(&ranks), "--metrics", "mr,mrr,hits@10", "--format", "json", "--constants", p(&db),
        "--dataset", "toy",
    ]);
    assert_eq!(on_the_fly, from_db);

    let adjusted = stdout_of(&[
        "adjust", "--metric", "mr", "--value", "3.25", "--constants", p(&db), "--dataset", "toy", "--format", "json",
    ]);
    let row = &ResultTable::from_json(&adjusted).unwrap().rows[0];
    let expected = ResultTable::from_json(&on_the_fly).unwrap().rows[0].adjusted_index;
    assert_eq!(row.adjusted_index, expected);

    let missing = bin(&["adjust", "--metric", "gmr", "--value", "3", "--constants", p(&db), "--dataset", "toy"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("not-found"));
}

#[test]
fn null_command_stores_records() {
    let dir = tempfile::tempdir().unwrap();
    let sizes = dir.path().join("sizes.txt");
    fs::write(&sizes, "14\n14\n13\n").unwrap();
    let db = dir.path().join("db.jsonl");
    let out = stdout_of(&[
        "null", "--sizes", p(&sizes), "--metrics", "mr,mrr", "--db", p(&db), "--dataset", "d", "--split", "valid",
    ]);
    assert!(out.lines().nth(1).unwrap().starts_with("mr,7.33333333333,5.16666666667,"));
    let stored = fs::read_to_string(&db).unwrap();
    assert!(stored.contains("\"split\":\"validation\""));
    assert!(stored.contains("\"min_N\":13,\"max_N\":14"));

    let conflict = bin(&[
        "null", "--uniform-size", "20", "--num-tasks", "3", "--metrics", "mr", "--db", p(&db), "--dataset", "d",
        "--split", "valid",
    ]);
    assert_eq!(conflict.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&conflict.stderr).contains("conflicting-record"));
}

#[test]
fn degenerate_sizes_are_reported_per_metric() {
    let dir = tempfile::tempdir().unwrap();
    let ranks = dir.path().join("r.csv");
    fs::write(&ranks, "rank,num_candidates\n1,1\n1,5\n").unwrap();
    let out = bin(&["compute", "--ranks", p(&ranks), "--metrics", "mrr,mr", "--mrr-mode", "paper-continuous", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let table = ResultTable::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(table.rows[0].error.as_deref().unwrap().contains("degenerate-size"));
    assert_eq!(table.rows[1].expectation, Some(2.0));
}

#[test]
fn simulate_writes_table_and_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let ranks_dir = dir.path().join("ranks");
    let args = [
        "simulate", "--sizes", "14,104", "--rankers", "oracle,gaussian:1.5", "--num-tasks", "200", "--metrics",
        "mrr,hits@10", "--seed", "9", "--ranks-dir", p(&ranks_dir),
    ];
    let first = stdout_of(&args);
    assert_eq!(first, stdout_of(&args));
    let table = ResultTable::from_csv(&first).unwrap();
    let labels: Vec<&str> = table.rows.iter().map(|r| r.label.as_str()).step_by(2).collect();
    assert_eq!(
        labels,
        ["oracle:N=14", "oracle:N=104", "gaussian_separation:d=1.5:N=14", "gaussian_separation:d=1.5:N=104"]
    );
    assert_eq!(table.rows[0].adjusted_index, Some(1.0));
    assert_eq!(fs::read_dir(&ranks_dir).unwrap().count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["compute"]).status.code(), Some(1));
    assert_eq!(bin(&["compute", "--ranks", "/definitely/missing.jsonl"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, "{\"rank\": 1, \"num_candidates\": 3}\n{\"rank\": 9, \"num_candidates\": 3}\n").unwrap();
    let out = bin(&["compute", "--ranks", p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.jsonl:2:"));
    let out = bin(&["adjust", "--metric", "mrr", "--value", "0.5", "--expectation", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_examples() {
    let dir = tempfile::tempdir().unwrap();
    let ranks = dir.path().join("five.csv");
    fs::write(&ranks, "rank,num_candidates\n1,5\n2,5\n4,5\n").unwrap();
    let out = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", "mrr", "--format", "json"]);
    let row = &ResultTable::from_json(&out).unwrap().rows[0];
    let h5: f64 = 1.0 + 0.5 + 1.0 / 3.0 + 0.25 + 0.2;
    assert!((row.value - (1.0 + 0.5 + 0.25) / 3.0).abs() < 1e-15);
    assert!((row.expectation.unwrap() - 137.0 / 300.0).abs() < 1e-15);
    assert!((h5 / 5.0 - 137.0 / 300.0).abs() < 1e-15);
    let index = (row.value - 137.0 / 300.0) / (1.0 - 137.0 / 300.0);
    assert!((row.adjusted_index.unwrap() - index).abs() < 1e-14);
    assert!((index - 0.23312).abs() < 1e-5);

    let perfect = dir.path().join("perfect.csv");
    fs::write(&perfect, "rank,num_candidates\n1,5\n1,17\n1,300\n").unwrap();
    let out = stdout_of(&[
        "compute", "--ranks", p(&perfect), "--metrics", "mr,mrr,mrr_colloquial,imr,hmr,gmr,igmr,hits@1,hits@10",
        "--format", "json",
    ]);
    for row in ResultTable::from_json(&out).unwrap().rows {
        assert_eq!(row.adjusted_index, Some(1.0), "{}", row.metric);
    }
}

#[test]
fn uniform_random_file_is_calibrated() {
    use rank_adjust::sim::{sample_ranks, RankerKind, SyntheticRankerSpec};
    let spec = SyntheticRankerSpec { kind: RankerKind::UniformRandom, num_tasks: 10_000, candidate_size: 100, seed: 2 };
    let mut text = String::from("rank,num_candidates\n");
    for r in sample_ranks(&spec).unwrap() {
        text.push_str(&format!("{r},100\n"));
    }
    let dir = tempfile::tempdir().unwrap();
    let ranks = dir.path().join("uniform.csv");
    fs::write(&ranks, text).unwrap();
    let out = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", "mr,mrr,hits@1,hits@10", "--format", "json"]);
    for row in ResultTable::from_json(&out).unwrap().rows {
        let (e, sd) = (row.expectation.unwrap(), row.variance.unwrap().sqrt());
        let se = sd / (1.0 - e).abs();
        assert!(row.z.unwrap().abs() <= 3.0, "{}", row.metric);
        assert!(row.adjusted_index.unwrap().abs() <= 3.0 * se, "{}", row.metric);
    }
}

#[test]
fn adjusted_columns_recompute_from_the_table() {
    use rank_adjust::{adjust, MetricValue, NullStatistics};
    let dir = tempfile::tempdir().unwrap();
    let ranks = dir.path().join("r.csv");
    fs::write(&ranks, "rank,num_candidates\n1,14\n2,14\n9,104\n30,104\n2.5,14505\n").unwrap();
    let metrics = "mr,mrr,hits@1,hits@10,gmr,hmr,imr,igmr";
    let recompute = |row: &rank_adjust::report::ResultRow| {
        let null = NullStatistics::external(&row.metric, row.expectation.unwrap(), row.variance.unwrap());
        adjust(&MetricValue::external(row.metric.parse().unwrap(), row.value, row.n), &null)
    };

    let json = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", metrics, "--format", "json"]);
    for row in ResultTable::from_json(&json).unwrap().rows {
        let again = recompute(&row);
        for (emitted, recomputed) in [
            (row.adjusted_index, again.adjusted_index),
            (row.z, again.z_score),
            (row.phi_z, again.phi_of_z),
            (row.expectation_adjusted, again.expectation_adjusted),
            (row.lower_bound, again.lower_bound),
        ] {
            assert_eq!(emitted.is_some(), recomputed.is_some());
            if let (Some(a), Some(b)) = (emitted, recomputed) {
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{}: {a} vs {b}", row.metric);
            }
        }
    }

    // CSV inputs carry 12 significant digits, so recomputation agrees to that precision
    let csv = stdout_of(&["compute", "--ranks", p(&ranks), "--metrics", metrics]);
    for row in ResultTable::from_csv(&csv).unwrap().rows {
        let again = recompute(&row);
        let (a, b) = (row.adjusted_index.unwrap(), again.adjusted_index.unwrap());
        assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{}: {a} vs {b}", row.metric);
    }
}

#[test]
fn simulate_examples() {
    let out = stdout_of(&[
        "simulate", "--rankers", "oracle,uniform_random,gaussian:2", "--num-tasks", "10000", "--metrics", "mrr",
        "--format", "json",
    ]);
    let rows = ResultTable::from_json(&out).unwrap().rows;
    assert_eq!(rows.len(), 12);
    for row in &rows[..4] {
        assert_eq!((row.value, row.adjusted_index), (1.0, Some(1.0)));
    }
    let uniform14 = &rows[4];
    assert_eq!(uniform14.label, "uniform_random:N=14");
    assert!((uniform14.value - 0.2323).abs() < 0.01);
    assert!(uniform14.adjusted_index.unwrap().abs() < 0.02);
    let gaussian: Vec<f64> = rows[8..].iter().map(|r| r.value).collect();
    assert!(gaussian.windows(2).all(|w| w[1] < w[0]), "{gaussian:?}");
}

#[test]
fn rank_command_examples() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("tied.jsonl");
    fs::write(&scores, "{\"true_score\": 1.0, \"candidate_scores\": [1.0, 1.0, 1.0]}\n").unwrap();
    let out = stdout_of(&["rank", "--scores", p(&scores), "--format", "json"]);
    assert_eq!(out, "{\"rank\":2.0,\"num_candidates\":3}\n");
    let out = stdout_of(&["rank", "--scores", p(&scores), "--tie-policy", "optimistic"]);
    assert_eq!(out, "rank,num_candidates\n1,3\n");

    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = bin(&["rank", "--scores", p(&empty)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty-input"));
}
