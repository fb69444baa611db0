use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use log::{info, warn};

use crate::crossfeat::{cross_store, crossed_dim, CrossedFeatures};
use crate::learn::{
    confusion_sweep, kfold_cv, metrics_at, roc_auc, sweep_thresholds, zero_fn_threshold, Learner, LearnerKind,
    MetricsRow, RocPoint, DEFAULT_CUT,
};
use crate::lexemb::{
    embed_hashed, load_vectors, tokenize_with, DocEmbedder, DocEmbedderConfig, Side, TokenizerConfig, VectorStore,
    DEFAULT_DOC_DIM, DEFAULT_HASHED_DIM,
};
use crate::patchio::{
    auto_label, dedup, extract_fragments, parse_diff, read_manifest, write_manifest, AutoLabel, Label,
    Patch,
};
use crate::screen::{filter_by_threshold, rank_top1, FilterOutcome, ScoredPatch, Verdict};
use crate::simstat::{cosine, dist_stats, euclidean_similarity, infer_threshold, mww_test, MwwMethod, ThresholdKind, ThresholdSpec, ANY_SOURCE};
use crate::synth;

use super::files::{read_fragments, read_scores, read_text, write_fragments, write_text, FragmentRow, ScoreRow, Table};
use super::{
    Backend, CliError, EmbedArgs, EmbedOptions, EvaluateArgs, ExtractArgs, FilterArgs, LearnArgs, ReportArgs,
    SimilarityArgs, SynthArgs, TrainArgs,
};

fn pct(x: f64, decimals: usize) -> String {
    format!("{:.*}", decimals, x * 100.0)
}

fn fixed(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}

// ---------------------------------------------------------------- extract

pub fn cmd_extract(args: &ExtractArgs) -> Result<(), CliError> {
    let patches = read_manifest(&args.manifest)?;
    let total = patches.len();
    let patches = if args.no_dedup { patches } else { dedup(&patches) };
    info!("{total} records, {} after deduplication", patches.len());

    let mut rows = Vec::new();
    let mut failures = Table::new(&["patch_id", "kind", "message"]);
    let mut failed = 0;
    for p in &patches {
        let res = parse_diff(&p.diff_text).and_then(|h| extract_fragments(&h));
        match res {
            Ok(pair) => {
                rows.push(FragmentRow {
                    patch_id: p.id.clone(),
                    side: Side::Buggy,
                    text: pair.buggy,
                });
                rows.push(FragmentRow {
                    patch_id: p.id.clone(),
                    side: Side::Patched,
                    text: pair.patched,
                });
            }
            Err(e) => {
                failed += 1;
                let kind = if e.is_malformed() { "malformed_diff" } else { "empty_fragment" };
                failures.row([p.id.as_str(), kind, &e.to_string()]);
            }
        }
    }
    if failed > 0 {
        warn!("{failed} patches skipped (see extract_failures.csv)");
    }

    let mut summary = Table::new(&["records", "deduplicated", "extracted", "failed"]);
    summary.row([
        total.to_string(),
        patches.len().to_string(),
        (patches.len() - failed).to_string(),
        failed.to_string(),
    ]);

    write_text(&args.out.join("fragments.tsv"), &write_fragments(&rows))?;
    write_text(&args.out.join("extract_failures.csv"), &failures.finish())?;
    write_text(&args.out.join("extract_summary.csv"), &summary.finish())?;
    write_text(&args.out.join("manifest.dedup.jsonl"), &write_manifest(&patches))?;

    if let Some(tool) = &args.reference_tool {
        write_text(&args.out.join("auto_labels.csv"), &auto_label_table(&patches, tool)?)?;
    }
    Ok(())
}

fn auto_label_table(patches: &[Patch], tool: &str) -> Result<String, CliError> {
    let references: HashMap<&str, &Patch> = patches
        .iter()
        .filter(|p| p.tool == tool)
        .map(|p| (p.bug_id.as_str(), p))
        .collect();
    let mut t = Table::new(&["patch_id", "bug_id", "reference_id", "auto_label"]);
    for p in patches.iter().filter(|p| p.label == Label::Unlabeled && p.tool != tool) {
        let Some(r) = references.get(p.bug_id.as_str()) else {
            continue;
        };
        let verdict = match auto_label(p, r) {
            Ok(AutoLabel::Incorrect) => "incorrect",
            Ok(AutoLabel::Undecided) => "undecided",
            Err(_) => "unparseable",
        };
        t.row([p.id.as_str(), &p.bug_id, &r.id, verdict]);
    }
    Ok(t.finish())
}

// ------------------------------------------------------------------ embed

fn embed_rows(rows: &[FragmentRow], opts: &EmbedOptions) -> Result<VectorStore, CliError> {
    let tok = TokenizerConfig {
        split_subtokens: opts.subtokens,
    };
    match opts.backend {
        Backend::Hashed => {
            let dim = opts.dim.unwrap_or(DEFAULT_HASHED_DIM);
            if dim < 2 {
                return Err(CliError::Usage("--dim must be at least 2".into()));
            }
            let mut store = VectorStore::new(dim);
            for r in rows {
                store.insert(&r.patch_id, r.side, embed_hashed(&tokenize_with(&r.text, tok), dim, opts.seed))?;
            }
            Ok(store)
        }
        Backend::Doc => {
            let dim = opts.dim.unwrap_or(DEFAULT_DOC_DIM);
            let corpus: Vec<_> = rows.iter().map(|r| tokenize_with(&r.text, tok)).collect();
            let model = DocEmbedder::train(
                &corpus,
                DocEmbedderConfig {
                    dim,
                    epochs: opts.epochs,
                    seed: opts.seed,
                    ..Default::default()
                },
            )?;
            info!(
                "doc embedder: {} tokens in vocabulary, final loss {:.4}",
                model.vocab_size(),
                model.epoch_losses().last().copied().unwrap_or(f64::NAN)
            );
            let mut store = VectorStore::new(dim);
            for (r, toks) in rows.iter().zip(&corpus) {
                store.insert(&r.patch_id, r.side, model.infer(toks))?;
            }
            Ok(store)
        }
        Backend::External => {
            let path = opts
                .vectors
                .as_ref()
                .ok_or_else(|| CliError::Usage("--backend external needs --vectors".into()))?;
            let external = load_vectors(path)?;
            if let Some(d) = opts.dim {
                if d != external.dim() {
                    return Err(crate::lexemb::StoreError::DimensionMismatch {
                        line: None,
                        expected: d,
                        found: external.dim(),
                    }
                    .into());
                }
            }
            let mut store = VectorStore::new(external.dim());
            let mut missing = 0;
            for r in rows {
                match external.get(&r.patch_id, r.side) {
                    Some(v) => store.insert(&r.patch_id, r.side, v.to_vec())?,
                    None => missing += 1,
                }
            }
            if missing > 0 {
                warn!("{missing} fragments have no external vector and were skipped");
            }
            Ok(store)
        }
    }
}

pub fn cmd_embed(args: &EmbedArgs) -> Result<(), CliError> {
    let rows = read_fragments(&args.fragments)?;
    let store = embed_rows(&rows, &args.embed)?;
    info!("{} vectors of dimension {}", store.len(), store.dim());
    write_text(&args.out.join("vectors.vec"), &store.to_text())
}

// ------------------------------------------------------------- similarity

fn manifest_index(path: &Path) -> Result<HashMap<String, Patch>, CliError> {
    Ok(read_manifest(path)?.into_iter().map(|p| (p.id.clone(), p)).collect())
}

fn score_store(store: &VectorStore, manifest: &HashMap<String, Patch>) -> (Vec<ScoreRow>, Table) {
    let mut rows = Vec::new();
    let mut skipped = Table::new(&["patch_id", "reason"]);
    for id in store.patch_ids() {
        let (Some(b), Some(p)) = (store.get(id, Side::Buggy), store.get(id, Side::Patched)) else {
            skipped.row([id, "missing side"]);
            continue;
        };
        let Some(meta) = manifest.get(id) else {
            skipped.row([id, "not in manifest"]);
            continue;
        };
        let cos = match cosine(b, p) {
            Ok(c) => c,
            Err(e) => {
                skipped.row([id, &e.to_string()]);
                continue;
            }
        };
        rows.push(ScoreRow {
            patch_id: id.to_string(),
            benchmark: meta.benchmark.clone(),
            tool: meta.tool.clone(),
            bug_id: meta.bug_id.clone(),
            label: meta.label,
            cosine: cos,
            euclidean: euclidean_similarity(b, p).expect("same store dimension"),
        });
    }
    (rows, skipped)
}

fn write_scores(rows: &[ScoreRow]) -> String {
    let mut t = Table::new(&["patch_id", "benchmark", "tool", "bug_id", "label", "cosine", "euclidean"]);
    for r in rows {
        t.row([
            r.patch_id.as_str(),
            &r.benchmark,
            &r.tool,
            &r.bug_id,
            r.label.as_str(),
            &r.cosine.to_string(),
            &r.euclidean.to_string(),
        ]);
    }
    t.finish()
}

/// Cosine scores grouped as `<benchmark>/<label>` plus `ALL/<label>`.
fn score_groups(rows: &[ScoreRow]) -> BTreeMap<String, Vec<f64>> {
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for r in rows {
        groups
            .entry(format!("{}/{}", r.benchmark, r.label))
            .or_default()
            .push(r.cosine);
        groups.entry(format!("ALL/{}", r.label)).or_default().push(r.cosine);
    }
    groups
}

fn similarity_reports(rows: &[ScoreRow], backend: &str) -> Result<(String, String), CliError> {
    let groups = score_groups(rows);
    let mut stats = Table::new(&["corpus", "backend", "count", "min", "q1", "median", "q3", "max", "mean"]);
    for (name, scores) in &groups {
        let s = dist_stats(scores)?.scaled(100.0);
        stats.row([
            name.as_str(),
            backend,
            &scores.len().to_string(),
            &fixed(s.min, 2),
            &fixed(s.q1, 2),
            &fixed(s.median, 2),
            &fixed(s.q3, 2),
            &fixed(s.max, 2),
            &fixed(s.mean, 2),
        ]);
    }
    let mut mww = Table::new(&[
        "corpus_a", "corpus_b", "backend", "n_a", "n_b", "u_a", "p_value", "method", "degenerate",
    ]);
    let names: Vec<&String> = groups.keys().collect();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let r = mww_test(&groups[*a], &groups[*b])?;
            mww.row([
                a.as_str(),
                b.as_str(),
                backend,
                &groups[*a].len().to_string(),
                &groups[*b].len().to_string(),
                &r.u_a.to_string(),
                &format!("{:.6e}", r.p_value),
                match r.method {
                    MwwMethod::Exact => "exact",
                    MwwMethod::Normal => "normal",
                },
                &r.degenerate.to_string(),
            ]);
        }
    }
    Ok((stats.finish(), mww.finish()))
}

pub fn cmd_similarity(args: &SimilarityArgs) -> Result<(), CliError> {
    let store = load_vectors(&args.vectors)?;
    let manifest = manifest_index(&args.manifest)?;
    run_similarity(&store, &manifest, &args.backend, &args.out)
}

fn run_similarity(
    store: &VectorStore,
    manifest: &HashMap<String, Patch>,
    backend: &str,
    out: &Path,
) -> Result<(), CliError> {
    let (rows, skipped) = score_store(store, manifest);
    if rows.is_empty() {
        return Err(CliError::Format("no patch has both fragment vectors".into()));
    }
    let (stats, mww) = similarity_reports(&rows, backend)?;
    write_text(&out.join("scores.csv"), &write_scores(&rows))?;
    write_text(&out.join("similarity_skipped.csv"), &skipped.finish())?;
    write_text(&out.join("stats.csv"), &stats)?;
    write_text(&out.join("mww.csv"), &mww)
}

// ----------------------------------------------------------------- filter

fn scored(r: &ScoreRow) -> ScoredPatch {
    ScoredPatch {
        patch_id: r.patch_id.clone(),
        corpus: r.benchmark.clone(),
        label: r.label,
        score: r.cosine,
    }
}

const FILTER_HEADER: &[&str] = &[
    "dataset", "backend", "cp", "ip", "threshold", "threshold_value", "plus_cp", "minus_ip", "plus_recall",
    "minus_recall",
];

fn filter_row(t: &mut Table, dataset: &str, backend: &str, kind: &str, value: Option<f64>, o: &FilterOutcome) {
    t.row([
        dataset,
        backend,
        &o.total_correct.to_string(),
        &o.total_incorrect.to_string(),
        kind,
        &value.map(|v| fixed(v * 100.0, 2)).unwrap_or_default(),
        &o.kept_correct.to_string(),
        &o.filtered_incorrect.to_string(),
        &pct(o.plus_recall(), 1),
        &pct(o.minus_recall(), 1),
    ]);
}

fn run_filter(
    rows: &[ScoreRow],
    reference: Option<&[ScoreRow]>,
    kind: Option<ThresholdKind>,
    per_benchmark: bool,
    backend: &str,
    out: &Path,
) -> Result<(), CliError> {
    let mut verdict_table = Table::new(&["patch_id", "bug_id", "benchmark", "label", "score", "verdict"]);
    let mut report = Table::new(FILTER_HEADER);

    let Some(kind) = kind else {
        let mut per_bug: BTreeMap<String, Vec<ScoredPatch>> = BTreeMap::new();
        for r in rows {
            per_bug.entry(r.bug_id.clone()).or_default().push(scored(r));
        }
        let (chosen, verdicts) = rank_top1(&per_bug)?;
        let all: Vec<ScoredPatch> = rows.iter().map(scored).collect();
        let vs: Vec<Verdict> = all.iter().map(|p| verdicts[&p.patch_id]).collect();
        for (r, v) in rows.iter().zip(&vs) {
            verdict_table.row([
                r.patch_id.as_str(),
                &r.bug_id,
                &r.benchmark,
                r.label.as_str(),
                &r.cosine.to_string(),
                v.as_str(),
            ]);
        }
        filter_row(&mut report, "ALL", backend, "top1", None, &FilterOutcome::tally(&all, &vs));

        let labels: HashMap<&str, Label> = rows.iter().map(|r| (r.patch_id.as_str(), r.label)).collect();
        let mut top = Table::new(&["bug_id", "chosen_patch", "chosen_label"]);
        for (bug, id) in &chosen {
            top.row([bug.as_str(), id, labels[id.as_str()].as_str()]);
        }
        write_text(&out.join("top1.csv"), &top.finish())?;
        write_text(&out.join("verdicts.csv"), &verdict_table.finish())?;
        return write_text(&out.join("filter.csv"), &report.finish());
    };

    let reference_scores = |benchmark: Option<&str>| -> Vec<f64> {
        let keep = |r: &&ScoreRow| benchmark.is_none_or(|b| r.benchmark == b);
        match reference {
            Some(refs) => refs.iter().filter(keep).map(|r| r.cosine).collect(),
            None => rows
                .iter()
                .filter(keep)
                .filter(|r| r.label == Label::Correct)
                .map(|r| r.cosine)
                .collect(),
        }
    };

    let mut groups: BTreeMap<String, Vec<&ScoreRow>> = BTreeMap::new();
    if per_benchmark {
        for r in rows {
            groups.entry(r.benchmark.clone()).or_default().push(r);
        }
    } else {
        groups.insert("ALL".into(), rows.iter().collect());
    }

    let mut thresholds = Table::new(&["dataset", "kind", "value", "source"]);
    for (name, members) in &groups {
        let spec: ThresholdSpec = if per_benchmark {
            infer_threshold(&reference_scores(Some(name)), kind, name.clone())?
        } else {
            infer_threshold(&reference_scores(None), kind, ANY_SOURCE)?
        };
        let patches: Vec<ScoredPatch> = members.iter().map(|r| scored(r)).collect();
        let (verdicts, outcome) = filter_by_threshold(&patches, &spec)?;
        for (r, v) in members.iter().zip(&verdicts) {
            verdict_table.row([
                r.patch_id.as_str(),
                &r.bug_id,
                &r.benchmark,
                r.label.as_str(),
                &r.cosine.to_string(),
                v.as_str(),
            ]);
        }
        filter_row(&mut report, name, backend, &kind.to_string(), Some(spec.value), &outcome);
        thresholds.row([name.as_str(), &kind.to_string(), &spec.value.to_string(), &spec.source_tag]);
    }
    write_text(&out.join("thresholds.csv"), &thresholds.finish())?;
    write_text(&out.join("verdicts.csv"), &verdict_table.finish())?;
    write_text(&out.join("filter.csv"), &report.finish())
}

pub fn cmd_filter(args: &FilterArgs) -> Result<(), CliError> {
    let rows = read_scores(&args.scores)?;
    let reference = args.reference.as_deref().map(read_scores).transpose()?;
    let kind = (!args.top1).then(|| args.threshold.into());
    run_filter(&rows, reference.as_deref(), kind, args.per_benchmark, &args.backend, &args.out)
}

// --------------------------------------------------------- train/evaluate

struct LabeledFeatures {
    features: Vec<CrossedFeatures>,
    x: Vec<Vec<f64>>,
    y: Vec<bool>,
}

fn labeled_features(store: &VectorStore, manifest: &HashMap<String, Patch>) -> Result<LabeledFeatures, CliError> {
    let (all, skipped) = cross_store(store);
    if !skipped.is_empty() {
        warn!("{} patches without usable crossed features", skipped.len());
    }
    let mut features = Vec::new();
    for mut f in all {
        let label = manifest.get(&f.patch_id).and_then(|p| p.label.as_binary());
        if let Some(l) = label {
            f.label = Some(l);
            features.push(f);
        }
    }
    if features.is_empty() {
        return Err(CliError::Format("no labeled patch has crossed features".into()));
    }
    let x = features.iter().map(|f| f.values.clone()).collect();
    let y = features.iter().map(|f| f.label.expect("filtered")).collect();
    Ok(LabeledFeatures { features, x, y })
}

fn feature_store(features: &[CrossedFeatures], n: usize) -> Result<VectorStore, CliError> {
    let mut s = VectorStore::new(crossed_dim(n));
    for f in features {
        s.insert(&f.patch_id, Side::Crossed, f.values.clone())?;
    }
    Ok(s)
}

fn load_learning_inputs(args: &LearnArgs) -> Result<(VectorStore, LabeledFeatures), CliError> {
    let store = load_vectors(&args.vectors)?;
    let manifest = manifest_index(&args.manifest)?;
    let data = labeled_features(&store, &manifest)?;
    Ok((store, data))
}

fn run_train(store: &VectorStore, data: &LabeledFeatures, kind: LearnerKind, out: &Path) -> Result<(), CliError> {
    let model = Learner::fit(&kind.default_config(), &data.x, &data.y)?;
    write_text(&out.join("features.vec"), &feature_store(&data.features, store.dim())?.to_text())?;
    write_text(&out.join("model.txt"), &model.to_text())
}

pub fn cmd_train(args: &TrainArgs) -> Result<(), CliError> {
    let (store, data) = load_learning_inputs(&args.learn)?;
    run_train(&store, &data, args.learn.learner.into(), &args.learn.out)
}

fn metrics_table(kind: LearnerKind, backend: &str, m: &MetricsRow) -> String {
    let mut t = Table::new(&["classifier", "backend", "accuracy", "precision", "recall", "f1", "auc"]);
    t.row([
        kind.display_name(),
        backend,
        &pct(m.accuracy, 1),
        &pct(m.precision, 1),
        &pct(m.recall, 1),
        &pct(m.f1, 1),
        &fixed(m.auc, 3),
    ]);
    t.finish()
}

fn roc_table(points: &[RocPoint]) -> String {
    let mut t = Table::new(&["fpr", "tpr", "threshold"]);
    for p in points {
        let thr = if p.threshold.is_infinite() {
            "inf".to_string()
        } else {
            fixed(p.threshold, 6)
        };
        t.row([fixed(p.fpr, 6), fixed(p.tpr, 6), thr]);
    }
    t.finish()
}

fn sweep_table(scores: &[f64], labels: &[bool]) -> String {
    let mut t = Table::new(&["threshold", "tp", "tn", "fp", "fn", "accuracy", "precision", "recall"]);
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    for (thr, c) in confusion_sweep(scores, labels, &sweep_thresholds()).rows {
        t.row([
            fixed(thr, 1),
            c.tp.to_string(),
            c.tn.to_string(),
            c.fp.to_string(),
            c.fn_.to_string(),
            pct(ratio(c.tp + c.tn, labels.len()), 1),
            pct(ratio(c.tp, c.tp + c.fp), 1),
            pct(ratio(c.tp, c.tp + c.fn_), 1),
        ]);
    }
    t.finish()
}

fn zero_fn_table(scores: &[f64], labels: &[bool]) -> Result<String, CliError> {
    let (thr, excluded) = zero_fn_threshold(scores, labels)?;
    let negatives = labels.iter().filter(|&&l| !l).count();
    let mut t = Table::new(&["threshold", "excluded_incorrect", "total_incorrect", "excluded_pct"]);
    t.row([
        fixed(thr, 6),
        excluded.to_string(),
        negatives.to_string(),
        pct(excluded as f64 / negatives as f64, 1),
    ]);
    Ok(t.finish())
}

#[allow(clippy::too_many_arguments)]
fn run_evaluate(
    store: &VectorStore,
    data: &LabeledFeatures,
    kind: LearnerKind,
    folds: usize,
    seed: u64,
    model: Option<&Learner>,
    backend: &str,
    out: &Path,
) -> Result<(), CliError> {
    let (scores, mean, per_fold) = match model {
        Some(m) => {
            let scores = data
                .x
                .iter()
                .map(|r| m.predict_checked(r))
                .collect::<Result<Vec<_>, _>>()?;
            let row = metrics_at(&scores, &data.y, DEFAULT_CUT)?;
            (scores, row, vec![row])
        }
        None => {
            let report = kfold_cv(&data.x, &data.y, folds, seed, &kind.default_config())?;
            (report.oof_scores, report.mean, report.per_fold)
        }
    };
    let kind = model.map(Learner::kind).unwrap_or(kind);
    let (points, _) = roc_auc(&scores, &data.y)?;

    let mut fold_table = Table::new(&["fold", "accuracy", "precision", "recall", "f1", "auc"]);
    for (i, m) in per_fold.iter().enumerate() {
        fold_table.row([
            (i + 1).to_string(),
            fixed(m.accuracy, 6),
            fixed(m.precision, 6),
            fixed(m.recall, 6),
            fixed(m.f1, 6),
            fixed(m.auc, 6),
        ]);
    }
    let mut preds = Table::new(&["patch_id", "label", "score"]);
    for (f, s) in data.features.iter().zip(&scores) {
        let label = if f.label == Some(true) { "correct" } else { "incorrect" };
        preds.row([f.patch_id.as_str(), label, &fixed(*s, 6)]);
    }

    write_text(&out.join("features.vec"), &feature_store(&data.features, store.dim())?.to_text())?;
    write_text(&out.join("metrics.csv"), &metrics_table(kind, backend, &mean))?;
    write_text(&out.join("folds.csv"), &fold_table.finish())?;
    write_text(&out.join("roc.csv"), &roc_table(&points))?;
    write_text(&out.join("sweep.csv"), &sweep_table(&scores, &data.y))?;
    write_text(&out.join("zero_fn.csv"), &zero_fn_table(&scores, &data.y)?)?;
    write_text(&out.join("predictions.csv"), &preds.finish())
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<(), CliError> {
    let (store, data) = load_learning_inputs(&args.learn)?;
    let model = match &args.model {
        Some(p) => Some(Learner::from_text(&read_text(p)?)?),
        None => None,
    };
    run_evaluate(
        &store,
        &data,
        args.learn.learner.into(),
        args.folds,
        args.learn.seed,
        model.as_ref(),
        &args.learn.backend,
        &args.learn.out,
    )
}

// ----------------------------------------------------------------- report

pub fn cmd_report(args: &ReportArgs) -> Result<(), CliError> {
    let out = &args.out;
    cmd_extract(&ExtractArgs {
        manifest: args.manifest.clone(),
        out: out.clone(),
        no_dedup: false,
        reference_tool: None,
    })?;
    let rows = read_fragments(&out.join("fragments.tsv"))?;
    let store = embed_rows(&rows, &args.embed)?;
    write_text(&out.join("vectors.vec"), &store.to_text())?;

    let manifest = manifest_index(&out.join("manifest.dedup.jsonl"))?;
    let backend = args.embed.backend.name();
    run_similarity(&store, &manifest, backend, out)?;
    let scores = read_scores(&out.join("scores.csv"))?;
    let kind = (!args.top1).then(|| args.threshold.into());
    run_filter(&scores, None, kind, false, backend, out)?;

    let data = labeled_features(&store, &manifest)?;
    let learner: LearnerKind = args.learner.into();
    run_train(&store, &data, learner, out)?;
    run_evaluate(&store, &data, learner, args.folds, args.embed.seed, None, backend, out)
}

// ------------------------------------------------------------------ synth

pub fn cmd_synth(args: &SynthArgs) -> Result<(), CliError> {
    let patches = synth::generate(args.bugs, args.seed);
    write_text(&args.out.join("manifest.jsonl"), &write_manifest(&patches))
}
