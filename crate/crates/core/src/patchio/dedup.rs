use std::collections::HashSet;

use super::diff::parse_diff;
use super::manifest::Patch;

/// Identity of a diff for deduplication: hunk body lines with their markers,
/// each trimmed. File and hunk headers do not participate. Diffs that fail to
/// parse fall back to all of their trimmed lines.
pub fn dedup_key(diff_text: &str) -> String {
    let mut key = String::new();
    match parse_diff(diff_text) {
        Ok(hunks) => {
            for line in hunks.iter().flat_map(|h| h.lines.iter()) {
                key.push(line.kind.marker());
                key.push_str(line.text.trim());
                key.push('\n');
            }
        }
        Err(_) => {
            key.push('\0');
            for line in diff_text.lines() {
                key.push_str(line.trim());
                key.push('\n');
            }
        }
    }
    key
}

/// Keep the first occurrence of each distinct normalized diff body, in input
/// order.
pub fn dedup(patches: &[Patch]) -> Vec<Patch> {
    let mut seen = HashSet::new();
    patches
        .iter()
        .filter(|p| seen.insert(dedup_key(&p.diff_text)))
        .cloned()
        .collect()
}
