//! Seeded generator for a small labeled patch benchmark.
//!
//! Every synthetic bug gets two candidate patches over the same buggy line:
//! a correct one that makes a small token edit to that line, and an
//! incorrect one that replaces it with unrelated statements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::patchio::{Label, Patch};

const TYPES: &[&str] = &["int", "long", "double", "String", "List<Item>", "Map<String, Node>", "boolean"];
const VARS: &[&str] = &[
    "index", "count", "result", "dataset", "value", "node", "offset", "buffer", "limit", "total", "item", "key",
    "range", "series", "width", "height", "cursor", "row", "col", "entry",
];
const METHODS: &[&str] = &[
    "getIndexOf", "getDataset", "size", "get", "put", "remove", "contains", "getRowCount", "length", "add",
    "getValue", "setValue", "clear", "isEmpty", "next",
];
const OPS: &[&str] = &["+", "-", "*", "/"];
const CMPS: &[&str] = &["==", "!=", "<", "<=", ">", ">="];
const NOISE_VARS: &[&str] = &[
    "tmp", "cache", "flag", "retry", "logger", "timer", "config", "handler", "stream", "lock", "session", "queue",
];
const NOISE_CALLS: &[&str] = &[
    "System.gc()", "Thread.sleep(10)", "logger.warn(\"fallback\")", "cache.invalidateAll()", "lock.unlock()",
    "session.flush()", "queue.poll()", "stream.close()", "timer.cancel()", "handler.reset()",
];

fn pick<'a>(rng: &mut ChaCha8Rng, xs: &'a [&'a str]) -> &'a str {
    xs.choose(rng).expect("non-empty table")
}

fn statement(rng: &mut ChaCha8Rng) -> String {
    let a = pick(rng, VARS);
    let b = pick(rng, VARS);
    match rng.gen_range(0..6) {
        0 => format!("{} {a} = {b} {} {};", pick(rng, TYPES), pick(rng, OPS), rng.gen_range(1..10)),
        1 => format!("if ({a} {} {b}) {{", pick(rng, CMPS)),
        2 => format!("return {a}.{}({b});", pick(rng, METHODS)),
        3 => format!("{a}.{}({b}, {});", pick(rng, METHODS), pick(rng, VARS)),
        4 => format!("{a} = this.{}({b} {} 1);", pick(rng, METHODS), pick(rng, OPS)),
        _ => format!("while ({a}.{}() {} {b}) {{", pick(rng, METHODS), pick(rng, CMPS)),
    }
}

fn noise_statement(rng: &mut ChaCha8Rng) -> String {
    let v = pick(rng, NOISE_VARS);
    match rng.gen_range(0..4) {
        0 => format!("{};", pick(rng, NOISE_CALLS)),
        1 => format!("Object {v} = new Object();"),
        2 => format!("try {{ {}; }} catch (Exception e) {{ }}", pick(rng, NOISE_CALLS)),
        _ => format!("{v} = {}.getInstance();", pick(rng, NOISE_VARS)),
    }
}

/// Change exactly one token of `line`: flip an operator, replace an
/// identifier, or bump a literal.
fn small_edit(rng: &mut ChaCha8Rng, line: &str) -> String {
    let swaps: &[(&str, &str)] = &[
        ("==", "!="),
        ("!=", "=="),
        ("<=", "<"),
        (">=", ">"),
        (" < ", " <= "),
        (" > ", " >= "),
        (" + ", " - "),
        (" - ", " + "),
    ];
    let applicable: Vec<&(&str, &str)> = swaps.iter().filter(|(f, _)| line.contains(f)).collect();
    if !applicable.is_empty() && rng.gen_bool(0.6) {
        let (from, to) = applicable.choose(rng).expect("non-empty");
        return line.replacen(from, to, 1);
    }
    let present: Vec<&str> = VARS.iter().copied().filter(|v| line.contains(v)).collect();
    if let Some(old) = present.choose(rng) {
        let mut new = pick(rng, VARS);
        while new == *old {
            new = pick(rng, VARS);
        }
        return line.replacen(old, new, 1);
    }
    format!("{line} // checked")
}

fn diff_text(file: &str, start: u64, section: &str, before: &str, removed: &str, added: &[String], after: &str) -> String {
    let indent = "        ";
    let mut s = format!(
        "--- a/{file}\n+++ b/{file}\n@@ -{start},3 +{start},{} @@ {section}\n",
        2 + added.len()
    );
    s.push_str(&format!(" {indent}{before}\n"));
    s.push_str(&format!("-{indent}{removed}\n"));
    for a in added {
        s.push_str(&format!("+{indent}{a}\n"));
    }
    s.push_str(&format!(" {indent}{after}\n"));
    s
}

/// `2 * bugs` labeled patches, one correct and one incorrect per bug, in
/// bug order. Deterministic for a given seed.
pub fn generate(bugs: usize, seed: u64) -> Vec<Patch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(bugs * 2);
    for i in 0..bugs {
        let bug_id = format!("SYN-{}", i + 1);
        let benchmark = if i % 2 == 0 { "SynthA" } else { "SynthB" };
        let file = format!("src/main/java/org/synth/Unit{}.java", i + 1);
        let start = rng.gen_range(10..900);
        let section = format!("public void step{}()", i + 1);
        let before = statement(&mut rng);
        let buggy = statement(&mut rng);
        let after = statement(&mut rng);

        let fixed = vec![small_edit(&mut rng, &buggy)];
        let noise: Vec<String> = (0..rng.gen_range(2..=3)).map(|_| noise_statement(&mut rng)).collect();

        let mut candidates = [
            (Label::Correct, "fixer", fixed),
            (Label::Incorrect, "overfitter", noise),
        ];
        // candidate order within a bug is random so ids carry no signal
        if rng.gen_bool(0.5) {
            candidates.swap(0, 1);
        }
        for (k, (label, tool, added)) in candidates.into_iter().enumerate() {
            out.push(Patch {
                id: format!("syn{:04}-{}", i + 1, k),
                diff_text: diff_text(&file, start, &section, &before, &buggy, &added, &after),
                label,
                benchmark: benchmark.to_string(),
                tool: tool.to_string(),
                bug_id: bug_id.clone(),
            });
        }
    }
    out
}
