//! Property tests over randomly generated inputs.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use patchsift::crossfeat::{cross_values, crossed_dim};
use patchsift::learn::{
    confusion_at, metrics_at, roc_auc, stratified_folds, Learner, LearnerConfig, LogisticConfig, TreeConfig,
};
use patchsift::lexemb::{hashed_counts, tokenize, tokenize_with, Side, TokenizerConfig, VectorStore};
use patchsift::patchio::{
    auto_label, dedup, extract_fragments, parse_diff, parse_manifest, write_manifest, Label, Patch,
};
use patchsift::screen::{filter_by_threshold, rank_top1, ScoredPatch, Verdict};
use patchsift::simstat::{
    cosine, dist_stats, euclidean_distance, euclidean_similarity, mww_test, ThresholdKind, ThresholdSpec, ANY_SOURCE,
};

// ------------------------------------------------------------------ diffs

#[derive(Debug, Clone, Copy)]
enum Tag {
    Ctx,
    Rem,
    Add,
}

fn body_line() -> impl Strategy<Value = (Tag, String)> {
    (
        prop_oneof![Just(Tag::Ctx), Just(Tag::Rem), Just(Tag::Add)],
        "[ \t]{0,6}[a-z(){};=.!<>+*-]{0,20}[ ]{0,2}",
    )
        .prop_map(|(t, s)| (t, s))
}

fn hunk_body() -> impl Strategy<Value = Vec<(Tag, String)>> {
    prop::collection::vec(body_line(), 1..12)
}

fn render(file: &str, hunks: &[Vec<(Tag, String)>]) -> (String, Vec<Vec<String>>) {
    let mut text = format!("--- a/{file}\n+++ b/{file}\n");
    let mut bodies = Vec::new();
    let mut start = 1;
    for h in hunks {
        let old = h.iter().filter(|(t, _)| !matches!(t, Tag::Add)).count();
        let new = h.iter().filter(|(t, _)| !matches!(t, Tag::Rem)).count();
        text.push_str(&format!("@@ -{start},{old} +{start},{new} @@\n"));
        let lines: Vec<String> = h
            .iter()
            .map(|(t, s)| {
                let m = match t {
                    Tag::Ctx => ' ',
                    Tag::Rem => '-',
                    Tag::Add => '+',
                };
                format!("{m}{s}")
            })
            .collect();
        for l in &lines {
            text.push_str(l);
            text.push('\n');
        }
        bodies.push(lines);
        start += old + 3;
    }
    (text, bodies)
}

fn patch(id: &str, diff: String) -> Patch {
    Patch {
        id: id.into(),
        diff_text: diff,
        label: Label::Unlabeled,
        benchmark: String::new(),
        tool: String::new(),
        bug_id: String::new(),
    }
}

proptest! {
    #[test]
    fn diff_round_trip(hunks in prop::collection::vec(hunk_body(), 1..4)) {
        let (text, bodies) = render("src/A.java", &hunks);
        let parsed = parse_diff(&text).unwrap();
        prop_assert_eq!(parsed.len(), bodies.len());
        for (h, b) in parsed.iter().zip(&bodies) {
            prop_assert_eq!(&h.raw_lines(), b);
        }
    }

    #[test]
    fn fragments_never_mix_sides(hunks in prop::collection::vec(hunk_body(), 1..4)) {
        let (text, _) = render("src/A.java", &hunks);
        let parsed = parse_diff(&text).unwrap();
        let keep = |want: &dyn Fn(Tag) -> bool| -> Vec<String> {
            hunks.iter().flatten()
                .filter(|(t, _)| want(*t))
                .map(|(_, s)| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        let buggy = keep(&|t| !matches!(t, Tag::Add));
        let patched = keep(&|t| !matches!(t, Tag::Rem));
        match extract_fragments(&parsed) {
            Ok(pair) => {
                prop_assert_eq!(pair.buggy, buggy.join(" "));
                prop_assert_eq!(pair.patched, patched.join(" "));
            }
            Err(_) => prop_assert!(buggy.is_empty() || patched.is_empty()),
        }
    }

    #[test]
    fn dedup_is_idempotent_and_shrinks(bodies in prop::collection::vec(hunk_body(), 1..8), dups in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let mut patches: Vec<Patch> = bodies.iter().enumerate()
            .map(|(i, b)| patch(&format!("p{i}"), render("A.java", std::slice::from_ref(b)).0))
            .collect();
        for (k, d) in dups.iter().enumerate() {
            let src = d.get(&patches).diff_text.replace("\n ", "\n    ");
            patches.push(patch(&format!("d{k}"), src));
        }
        let once = dedup(&patches);
        prop_assert!(once.len() <= patches.len());
        prop_assert_eq!(dedup(&once), once.clone());
        // survivors keep input order
        let pos: Vec<usize> = once.iter().map(|p| patches.iter().position(|q| q.id == p.id).unwrap()).collect();
        prop_assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn auto_label_is_never_correct(a in hunk_body(), b in hunk_body(), same_file in any::<bool>()) {
        let pa = patch("a", render("A.java", &[a]).0);
        let pb = patch("b", render(if same_file { "A.java" } else { "B.java" }, &[b]).0);
        let l = auto_label(&pa, &pb).unwrap();
        if !same_file {
            prop_assert_eq!(l, patchsift::patchio::AutoLabel::Incorrect);
        }
    }

    #[test]
    fn manifest_round_trip(ids in prop::collection::btree_set("[a-z0-9_.-]{1,12}", 1..6), text in "[ -~\n]{0,80}") {
        let patches: Vec<Patch> = ids.iter().enumerate().map(|(i, id)| Patch {
            id: id.clone(),
            diff_text: text.clone(),
            label: [Label::Correct, Label::Incorrect, Label::Unlabeled][i % 3],
            benchmark: "B\"x".into(),
            tool: "t".into(),
            bug_id: format!("bug-{i}"),
        }).collect();
        prop_assert_eq!(parse_manifest(&write_manifest(&patches), None).unwrap(), patches);
    }
}

// ----------------------------------------------------------------- lexemb

proptest! {
    #[test]
    fn tokens_are_clean(s in "\\PC{0,60}", split in any::<bool>()) {
        let toks = tokenize_with(&s, TokenizerConfig { split_subtokens: split });
        for t in toks.tokens() {
            prop_assert!(!t.is_empty());
            prop_assert!(!t.chars().any(char::is_whitespace));
        }
    }

    #[test]
    fn hashing_is_additive(a in "[a-zA-Z_ (){}.;=+-]{0,40}", b in "[a-zA-Z_ (){}.;=+-]{0,40}", seed in any::<u64>()) {
        let ta = tokenize(&a);
        let tb = tokenize(&b);
        let joint = hashed_counts(&ta.concat(&tb), 64, seed);
        let sum: Vec<f64> = hashed_counts(&ta, 64, seed).iter().zip(hashed_counts(&tb, 64, seed)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(joint, sum);
    }

    #[test]
    fn vector_file_is_lossless(rows in prop::collection::btree_map(("[a-z0-9]{1,6}", 0..2usize), prop::collection::vec(-1e12f64..1e12, 3), 0..10)) {
        let mut store = VectorStore::new(3);
        for ((id, side), v) in &rows {
            store.insert(id, if *side == 0 { Side::Buggy } else { Side::Patched }, v.clone()).unwrap();
        }
        let back = VectorStore::parse(&store.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), store.to_text());
        for (id, side, v) in store.iter() {
            prop_assert_eq!(back.get(id, side).unwrap(), v);
        }
    }
}

// ---------------------------------------------------------------- simstat

fn nonzero_pair(max_len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..max_len).prop_flat_map(|n| {
        (
            prop::collection::vec(-100.0f64..100.0, n),
            prop::collection::vec(-100.0f64..100.0, n),
        )
    })
    .prop_filter("nonzero", |(a, b)| a.iter().any(|&x| x != 0.0) && b.iter().any(|&x| x != 0.0))
}

proptest! {
    #[test]
    fn cosine_symmetric_and_scale_free((a, b) in nonzero_pair(20), alpha in 1e-3f64..1e3) {
        let c = cosine(&a, &b).unwrap();
        prop_assert_eq!(c, cosine(&b, &a).unwrap());
        prop_assert!((-1.0..=1.0).contains(&c));
        let scaled: Vec<f64> = a.iter().map(|x| alpha * x).collect();
        prop_assert!((cosine(&scaled, &b).unwrap() - c).abs() <= 1e-12);
    }

    #[test]
    fn euclidean_similarity_is_monotone((a, b) in nonzero_pair(10), c in prop::collection::vec(-100.0f64..100.0, 10)) {
        let c = &c[..a.len()];
        let (db, dc) = (euclidean_distance(&a, &b).unwrap(), euclidean_distance(&a, c).unwrap());
        let (sb, sc) = (euclidean_similarity(&a, &b).unwrap(), euclidean_similarity(&a, c).unwrap());
        if db < dc {
            prop_assert!(sb > sc);
        }
        prop_assert!(sb > 0.0 && sb <= 1.0);
    }

    #[test]
    fn dist_stats_are_ordered(xs in prop::collection::vec(-1e3f64..1e3, 1..60)) {
        let s = dist_stats(&xs).unwrap();
        prop_assert!(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max);
        prop_assert!(s.min <= s.mean && s.mean <= s.max);
    }

    #[test]
    fn mww_identities(a in prop::collection::vec(0u8..12, 1..30), b in prop::collection::vec(0u8..12, 1..30)) {
        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
        let b: Vec<f64> = b.into_iter().map(f64::from).collect();
        let r = mww_test(&a, &b).unwrap();
        prop_assert_eq!(r.u_a + r.u_b, (a.len() * b.len()) as f64);
        prop_assert!((0.0..=1.0).contains(&r.p_value));
        let s = mww_test(&b, &a).unwrap();
        prop_assert!((r.p_value - s.p_value).abs() <= 1e-12);
        prop_assert_eq!(r.u_a, s.u_b);
    }
}

// ----------------------------------------------------------------- screen

fn scored() -> impl Strategy<Value = Vec<ScoredPatch>> {
    prop::collection::vec((0.0f64..1.0, 0..3usize, 0..4usize), 0..40).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (score, label, bug))| ScoredPatch {
                patch_id: format!("p{i:02}"),
                corpus: format!("bug{bug}"),
                label: [Label::Correct, Label::Incorrect, Label::Unlabeled][label],
                score: (score * 20.0).round() / 20.0,
            })
            .collect()
    })
}

fn spec(value: f64) -> ThresholdSpec {
    ThresholdSpec {
        kind: ThresholdKind::Q1,
        value,
        source_tag: ANY_SOURCE.into(),
    }
}

proptest! {
    #[test]
    fn filtering_partitions_and_is_monotone(patches in scored(), t1 in 0.0f64..1.0, t2 in 0.0f64..1.0) {
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        let (v_lo, o_lo) = filter_by_threshold(&patches, &spec(lo)).unwrap();
        let (v_hi, o_hi) = filter_by_threshold(&patches, &spec(hi)).unwrap();
        prop_assert_eq!(v_lo.len(), patches.len());
        let flagged = |v: &[Verdict]| v.iter().filter(|&&x| x == Verdict::LikelyIncorrect).count();
        prop_assert!(flagged(&v_hi) >= flagged(&v_lo));
        for o in [o_lo, o_hi] {
            let correct = patches.iter().filter(|p| p.label == Label::Correct).count();
            let incorrect = patches.iter().filter(|p| p.label == Label::Incorrect).count();
            prop_assert_eq!((o.total_correct, o.total_incorrect), (correct, incorrect));
            prop_assert!(o.kept_correct <= correct && o.filtered_incorrect <= incorrect);
            prop_assert!((0.0..=1.0).contains(&o.plus_recall()) && (0.0..=1.0).contains(&o.minus_recall()));
        }
        let flagged_correct = patches.iter().zip(&v_lo)
            .filter(|(p, v)| p.label == Label::Correct && **v == Verdict::LikelyIncorrect).count();
        prop_assert_eq!(o_lo.kept_correct + flagged_correct, o_lo.total_correct);
        let kept_incorrect = patches.iter().zip(&v_lo)
            .filter(|(p, v)| p.label == Label::Incorrect && **v == Verdict::LikelyCorrect).count();
        prop_assert_eq!(o_lo.filtered_incorrect + kept_incorrect, o_lo.total_incorrect);
    }

    #[test]
    fn top1_picks_max_and_ignores_monotone_maps(patches in scored()) {
        let mut per_bug: BTreeMap<String, Vec<ScoredPatch>> = BTreeMap::new();
        for p in &patches {
            per_bug.entry(p.corpus.clone()).or_default().push(p.clone());
        }
        let (chosen, verdicts) = rank_top1(&per_bug).unwrap();
        prop_assert_eq!(verdicts.len(), patches.len());
        for (bug, cands) in &per_bug {
            let best = cands.iter().map(|c| c.score).fold(f64::NEG_INFINITY, f64::max);
            let winner = cands.iter().find(|c| c.patch_id == chosen[bug]).unwrap();
            prop_assert_eq!(winner.score, best);
            let ties: BTreeSet<&str> = cands.iter().filter(|c| c.score == best).map(|c| c.patch_id.as_str()).collect();
            prop_assert_eq!(ties.iter().next().copied(), Some(chosen[bug].as_str()));
        }
        let mapped: BTreeMap<String, Vec<ScoredPatch>> = per_bug.iter().map(|(k, v)| {
            (k.clone(), v.iter().map(|c| ScoredPatch { score: c.score.powi(3) * 5.0 - 1.0, ..c.clone() }).collect())
        }).collect();
        prop_assert_eq!(rank_top1(&mapped).unwrap().0, chosen);
    }
}

// -------------------------------------------------------------- crossfeat

proptest! {
    #[test]
    fn crossing_layout_and_swap((b, p) in nonzero_pair(40)) {
        let n = b.len();
        let f = cross_values(&b, &p).unwrap();
        let r = cross_values(&p, &b).unwrap();
        prop_assert_eq!(f.len(), crossed_dim(n));
        for i in 0..n {
            prop_assert_eq!(r[i], -f[i]);
        }
        prop_assert_eq!(&r[n..], &f[n..]);
        prop_assert!(f.iter().all(|v| v.is_finite()));
    }
}

// ------------------------------------------------------------------ learn

fn labeled_scores() -> impl Strategy<Value = (Vec<f64>, Vec<bool>)> {
    prop::collection::vec((0u8..8, any::<bool>()), 2..50)
        .prop_map(|rows| {
            let mut scores: Vec<f64> = rows.iter().map(|(s, _)| f64::from(*s) / 8.0).collect();
            let mut labels: Vec<bool> = rows.iter().map(|(_, l)| *l).collect();
            labels[0] = true;
            labels[1] = false;
            scores.truncate(labels.len());
            (scores, labels)
        })
}

proptest! {
    #[test]
    fn auc_matches_pair_count((scores, labels) in labeled_scores()) {
        let (mut num, mut den) = (0.0, 0.0);
        for (i, &si) in scores.iter().enumerate() {
            for (j, &sj) in scores.iter().enumerate() {
                if labels[i] && !labels[j] {
                    den += 1.0;
                    num += if si > sj { 1.0 } else if si == sj { 0.5 } else { 0.0 };
                }
            }
        }
        let (points, auc) = roc_auc(&scores, &labels).unwrap();
        prop_assert_eq!(auc, num / den);
        let last = points.last().unwrap();
        prop_assert_eq!((last.fpr, last.tpr), (1.0, 1.0));
        prop_assert!(points.windows(2).all(|w| w[0].fpr <= w[1].fpr && w[0].tpr <= w[1].tpr));
    }

    #[test]
    fn metrics_rows_satisfy_f1_identity((scores, labels) in labeled_scores(), cut in 0.0f64..1.0) {
        let m = metrics_at(&scores, &labels, cut).unwrap();
        let expected = if m.precision + m.recall > 0.0 { 2.0 * m.precision * m.recall / (m.precision + m.recall) } else { 0.0 };
        prop_assert!((m.f1 - expected).abs() <= 1e-15);
        let c = confusion_at(&scores, &labels, cut);
        prop_assert_eq!(c.tp + c.tn + c.fp + c.fn_, scores.len());
    }

    #[test]
    fn folds_partition_with_balanced_classes(labels in prop::collection::vec(any::<bool>(), 10..200), k in 2usize..6, seed in any::<u64>()) {
        let pos = labels.iter().filter(|&&l| l).count();
        let neg = labels.len() - pos;
        prop_assume!(pos >= k && neg >= k);
        let folds = stratified_folds(&labels, k, seed).unwrap();
        let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..labels.len()).collect::<Vec<_>>());
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for f in &folds {
            let fp = f.iter().filter(|&&i| labels[i]).count() as f64;
            let expected = pos as f64 / k as f64;
            prop_assert!((fp - expected).abs() <= 1.0, "fold has {} positives, expected about {}", fp, expected);
        }
    }

    #[test]
    fn models_survive_text_round_trip(rows in prop::collection::vec((prop::collection::vec(-5.0f64..5.0, 3), any::<bool>()), 6..30), which in 0..3usize) {
        let x: Vec<Vec<f64>> = rows.iter().map(|(r, _)| r.clone()).collect();
        let mut y: Vec<bool> = rows.iter().map(|(_, l)| *l).collect();
        y[0] = true;
        y[1] = false;
        let cfg = match which {
            0 => LearnerConfig::Logistic(LogisticConfig { iterations: 50, ..Default::default() }),
            1 => LearnerConfig::Tree(TreeConfig::default()),
            _ => LearnerConfig::Bayes,
        };
        let m = Learner::fit(&cfg, &x, &y).unwrap();
        let back = Learner::from_text(&m.to_text()).unwrap();
        for r in &x {
            let p = m.predict_proba(r);
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert_eq!(back.predict_proba(r), p);
        }
    }
}
