use std::collections::{BTreeMap, BTreeSet};

use super::diff::{parse_diff, Hunk, LineRange};
use super::manifest::Patch;
use super::DiffError;

/// Files touched by a diff and the original-file ranges of its hunks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocationSpec {
    pub files: BTreeSet<String>,
    pub line_ranges: BTreeMap<String, BTreeSet<LineRange>>,
}

impl LocationSpec {
    pub fn from_hunks(hunks: &[Hunk]) -> Self {
        let mut spec = LocationSpec::default();
        for h in hunks {
            spec.files.insert(h.file.clone());
            spec.line_ranges
                .entry(h.file.clone())
                .or_default()
                .insert(h.old);
        }
        spec
    }

    pub fn from_diff(diff_text: &str) -> Result<Self, DiffError> {
        Ok(Self::from_hunks(&parse_diff(diff_text)?))
    }

    /// True if any range in a shared file intersects.
    pub fn overlaps(&self, other: &LocationSpec) -> bool {
        self.line_ranges.iter().any(|(file, ranges)| {
            other.line_ranges.get(file).is_some_and(|theirs| {
                ranges.iter().any(|r| theirs.iter().any(|t| r.overlaps(t)))
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutoLabel {
    Incorrect,
    /// Same files and overlapping locations: needs a human.
    Undecided,
}

/// Location heuristic against a reference (developer) patch. A candidate
/// that edits other files, or the same files at disjoint locations, is
/// labeled incorrect. It never concludes that a patch is correct.
pub fn auto_label(candidate: &Patch, reference: &Patch) -> Result<AutoLabel, DiffError> {
    let cand = LocationSpec::from_diff(&candidate.diff_text)?;
    let refr = LocationSpec::from_diff(&reference.diff_text)?;
    if cand.files != refr.files || !cand.overlaps(&refr) {
        return Ok(AutoLabel::Incorrect);
    }
    Ok(AutoLabel::Undecided)
}
