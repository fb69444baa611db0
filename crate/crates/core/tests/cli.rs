//! End-to-end runs of the `patchsift` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_patchsift"));
    c.env("RUST_LOG", "warn");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Read a CSV file, check its header and that every row has the same width.
fn table(path: &Path, header: &[&str]) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let got: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(got, header, "{}", path.display());
    r.records().map(|rec| rec.unwrap()).collect()
}

fn num(rec: &csv::StringRecord, i: usize) -> f64 {
    rec[i].parse().unwrap_or_else(|_| panic!("column {i} of {rec:?} is not numeric"))
}

#[test]
fn report_writes_well_formed_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    ok(&["report", "--manifest", s(&data("data/synthetic60.jsonl")), "--out", s(out)]);

    let summary = table(&out.join("extract_summary.csv"), &["records", "deduplicated", "extracted", "failed"]);
    assert_eq!(&summary[0].iter().collect::<Vec<_>>(), &["60", "60", "60", "0"]);

    let scores = table(
        &out.join("scores.csv"),
        &["patch_id", "benchmark", "tool", "bug_id", "label", "cosine", "euclidean"],
    );
    assert_eq!(scores.len(), 60);
    for r in &scores {
        assert!((-1.0..=1.0).contains(&num(r, 5)));
        assert!((0.0..=1.0).contains(&num(r, 6)));
    }

    let stats = table(
        &out.join("stats.csv"),
        &["corpus", "backend", "count", "min", "q1", "median", "q3", "max", "mean"],
    );
    for r in &stats {
        let q: Vec<f64> = (3..8).map(|i| num(r, i)).collect();
        assert!(q.windows(2).all(|w| w[0] <= w[1]), "{r:?}");
        assert!(q[4] <= 100.0);
    }

    for r in table(
        &out.join("mww.csv"),
        &["corpus_a", "corpus_b", "backend", "n_a", "n_b", "u_a", "p_value", "method", "degenerate"],
    ) {
        assert!((0.0..=1.0).contains(&num(&r, 6)));
        assert!(num(&r, 5) <= num(&r, 3) * num(&r, 4));
        assert!(["exact", "normal"].contains(&&r[7]));
    }

    let filter = table(
        &out.join("filter.csv"),
        &[
            "dataset", "backend", "cp", "ip", "threshold", "threshold_value", "plus_cp", "minus_ip", "plus_recall",
            "minus_recall",
        ],
    );
    for r in &filter {
        assert!(num(r, 6) <= num(r, 2) && num(r, 7) <= num(r, 3));
        assert!((num(r, 8) - 100.0 * num(r, 6) / num(r, 2)).abs() < 0.051);
    }
    assert_eq!(table(&out.join("verdicts.csv"), &["patch_id", "bug_id", "benchmark", "label", "score", "verdict"]).len(), 60);
    table(&out.join("thresholds.csv"), &["dataset", "kind", "value", "source"]);

    let metrics = table(
        &out.join("metrics.csv"),
        &["classifier", "backend", "accuracy", "precision", "recall", "f1", "auc"],
    );
    assert_eq!(metrics.len(), 1);
    assert!(num(&metrics[0], 6) >= 0.9);

    let folds = table(&out.join("folds.csv"), &["fold", "accuracy", "precision", "recall", "f1", "auc"]);
    assert_eq!(folds.len(), 5);
    for r in &folds {
        let (p, rc, f1) = (num(r, 2), num(r, 3), num(r, 4));
        let want = if p + rc > 0.0 { 2.0 * p * rc / (p + rc) } else { 0.0 };
        assert!((f1 - want).abs() < 1e-5);
    }

    let roc = table(&out.join("roc.csv"), &["fpr", "tpr", "threshold"]);
    assert_eq!(&roc[0][2], "inf");
    let last = roc.last().unwrap();
    assert_eq!((num(last, 0), num(last, 1)), (1.0, 1.0));

    let sweep = table(
        &out.join("sweep.csv"),
        &["threshold", "tp", "tn", "fp", "fn", "accuracy", "precision", "recall"],
    );
    for w in sweep.windows(2) {
        assert!(num(&w[1], 1) <= num(&w[0], 1));
        assert_eq!(num(&w[0], 1) + num(&w[0], 4), num(&w[1], 1) + num(&w[1], 4));
        assert_eq!(num(&w[0], 2) + num(&w[0], 3), num(&w[1], 2) + num(&w[1], 3));
    }

    let zero = table(
        &out.join("zero_fn.csv"),
        &["threshold", "excluded_incorrect", "total_incorrect", "excluded_pct"],
    );
    assert!(num(&zero[0], 1) <= num(&zero[0], 2));

    assert_eq!(table(&out.join("predictions.csv"), &["patch_id", "label", "score"]).len(), 60);
    assert!(!out.join("error.json").exists());
}

#[test]
fn identical_seeds_give_identical_reports() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let manifest = data("data/synthetic60.jsonl");
    for d in [&a, &b] {
        ok(&["report", "--manifest", s(&manifest), "--backend", "doc", "--dim", "16", "--epochs", "5", "--seed", "11", "--out", s(d.path())]);
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 15);
    for n in names {
        let x = std::fs::read(a.path().join(&n)).unwrap();
        let y = std::fs::read(b.path().join(&n)).unwrap();
        assert!(x == y, "{n:?} differs");
    }
}

#[test]
fn unknown_backend_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["embed", "--fragments", "x.tsv", "--backend", "bogus", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"error\":\"usage\""));
}

#[test]
fn failures_leave_an_error_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["extract", "--manifest", s(&dir.path().join("missing.jsonl")), "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(dir.path().join("error.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "extract");
    assert!(v["error"].is_string() && v["message"].is_string());
}

#[test]
fn external_vectors_must_match_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    ok(&["extract", "--manifest", s(&data("tests/fixtures/chart1.jsonl")), "--out", s(out)]);
    let bad = out.join("bad.vec");
    std::fs::write(&bad, "dim=3\nchart1-dev\tBuggy\t1 0 0\nchart1-dev\tPatched\t0 1\n").unwrap();
    let r = run(&["embed", "--fragments", s(&out.join("fragments.tsv")), "--backend", "external", "--vectors", s(&bad), "--out", s(out)]);
    assert_eq!(r.status.code(), Some(1));
    let text = std::fs::read_to_string(out.join("error.json")).unwrap();
    assert!(text.contains("dimension_mismatch"), "{text}");
}

#[test]
fn extract_auto_labels_against_reference_tool() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    ok(&["extract", "--manifest", s(&data("tests/fixtures/chart1.jsonl")), "--reference-tool", "developer", "--out", s(out)]);
    let text = std::fs::read_to_string(out.join("auto_labels.csv")).unwrap();
    let mut rows: Vec<&str> = text.lines().skip(1).collect();
    rows.sort();
    assert_eq!(rows.len(), 2, "{text}");
    assert!(rows.iter().all(|r| r.contains("incorrect")), "{text}");
}

#[test]
fn stages_chain_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n);
    let manifest = d("ex/manifest.dedup.jsonl");

    ok(&["synth", "--bugs", "20", "--seed", "5", "--out", s(&d("syn"))]);
    ok(&["extract", "--manifest", s(&d("syn/manifest.jsonl")), "--out", s(&d("ex"))]);
    ok(&["embed", "--fragments", s(&d("ex/fragments.tsv")), "--dim", "128", "--out", s(&d("em"))]);
    let vectors = d("em/vectors.vec");
    ok(&["similarity", "--vectors", s(&vectors), "--manifest", s(&manifest), "--backend", "hashed", "--out", s(&d("sim"))]);
    let scores = d("sim/scores.csv");

    for (sub, extra) in [("q1", vec![]), ("mean", vec!["--threshold", "mean", "--per-benchmark"]), ("top1", vec!["--top1"])] {
        let mut args = vec!["filter", "--scores", s(&scores)];
        args.extend(extra);
        let out = d(&format!("f-{sub}"));
        args.extend(["--out", s(&out)]);
        ok(&args);
        assert!(out.join("filter.csv").exists() && out.join("verdicts.csv").exists());
        assert_eq!(out.join("top1.csv").exists(), sub == "top1");
    }

    for learner in ["lr", "dt", "nb"] {
        let tr = d(&format!("tr-{learner}"));
        ok(&["train", "--vectors", s(&vectors), "--manifest", s(&manifest), "--learner", learner, "--out", s(&tr)]);
        let ev = d(&format!("ev-{learner}"));
        ok(&[
            "evaluate", "--vectors", s(&vectors), "--manifest", s(&manifest), "--learner", learner, "--model",
            s(&tr.join("model.txt")), "--out", s(&ev),
        ]);
        // scoring the training set with the fitted model
        let preds = table(&ev.join("predictions.csv"), &["patch_id", "label", "score"]);
        assert_eq!(preds.len(), 40);
        assert!(preds.iter().all(|r| (0.0..=1.0).contains(&num(r, 2))));
    }

    // reference threshold from a separate score file
    ok(&["filter", "--scores", s(&scores), "--reference", s(&scores), "--out", s(&d("f-ref"))]);
}
