use serde::{Deserialize, Serialize};

use super::diff::{Hunk, LineKind};
use super::DiffError;

/// Buggy and patched code fragments of one patch, each flattened to a
/// single line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentPair {
    pub buggy: String,
    pub patched: String,
}

fn flatten<'a>(lines: impl Iterator<Item = &'a str>) -> String {
    let mut out = String::new();
    for line in lines {
        // Inner whitespace runs (including tabs) are preserved, only the
        // ends are trimmed.
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(t);
    }
    out
}

/// Build the buggy (context + removed) and patched (context + added)
/// fragments from a parsed diff. Hunks are visited in diff order, which is
/// file order then hunk order.
pub fn extract_fragments(hunks: &[Hunk]) -> Result<FragmentPair, DiffError> {
    if hunks.is_empty() {
        return Err(DiffError::NoHunk);
    }
    let all = || hunks.iter().flat_map(|h| h.lines.iter());
    let buggy = flatten(
        all()
            .filter(|l| l.kind != LineKind::Added)
            .map(|l| l.text.as_str()),
    );
    let patched = flatten(
        all()
            .filter(|l| l.kind != LineKind::Removed)
            .map(|l| l.text.as_str()),
    );
    if buggy.is_empty() {
        return Err(DiffError::EmptyFragment { side: "buggy" });
    }
    if patched.is_empty() {
        return Err(DiffError::EmptyFragment { side: "patched" });
    }
    Ok(FragmentPair { buggy, patched })
}
