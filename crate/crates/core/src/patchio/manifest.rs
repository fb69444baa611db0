//! Dataset manifests: one JSON object per line.
//!
//! ```text
//! {"id":"p1","diff":"--- a/F.java\n+++ ...","label":"correct","benchmark":"Defects4J","tool":"developer","bug_id":"Chart-1"}
//! {"id":"p2","diff_path":"diffs/p2.diff","label":"unlabeled","benchmark":"Bears","tool":"jGenProg","bug_id":"B-12"}
//! ```
//!
//! `diff_path` is resolved relative to the manifest's directory. Blank lines
//! and lines starting with `#` are ignored. `label` defaults to unlabeled.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ManifestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Correct,
    Incorrect,
    #[default]
    Unlabeled,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Correct => "correct",
            Label::Incorrect => "incorrect",
            Label::Unlabeled => "unlabeled",
        }
    }

    /// `Some(true)` for correct, `Some(false)` for incorrect.
    pub fn as_binary(self) -> Option<bool> {
        match self {
            Label::Correct => Some(true),
            Label::Incorrect => Some(false),
            Label::Unlabeled => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "correct" => Ok(Label::Correct),
            "incorrect" => Ok(Label::Incorrect),
            "unlabeled" | "" => Ok(Label::Unlabeled),
            other => Err(format!("unknown label {other:?}")),
        }
    }
}

/// One labeled diff with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub id: String,
    #[serde(rename = "diff")]
    pub diff_text: String,
    #[serde(default)]
    pub label: Label,
    #[serde(default)]
    pub benchmark: String,
    #[serde(default)]
    pub tool: String,
    #[serde(default)]
    pub bug_id: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    id: String,
    #[serde(default)]
    diff: Option<String>,
    #[serde(default)]
    diff_path: Option<String>,
    #[serde(default)]
    label: Label,
    #[serde(default)]
    benchmark: String,
    #[serde(default)]
    tool: String,
    #[serde(default)]
    bug_id: String,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c == '\t' || c == '\n' || c == '\r')
}

/// Parse manifest text. `base_dir` is used to resolve `diff_path` entries;
/// pass `None` to reject them.
pub fn parse_manifest(text: &str, base_dir: Option<&Path>) -> Result<Vec<Patch>, ManifestError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rec: Record = serde_json::from_str(line).map_err(|e| ManifestError::Syntax {
            line: lineno,
            message: e.to_string(),
        })?;
        if !valid_id(&rec.id) {
            return Err(ManifestError::BadId { line: lineno });
        }
        let diff_text = match (rec.diff, rec.diff_path) {
            (Some(d), None) => d,
            (None, Some(p)) => {
                let base = base_dir.ok_or(ManifestError::Syntax {
                    line: lineno,
                    message: "diff_path not allowed here".into(),
                })?;
                let path = base.join(&p);
                fs::read_to_string(&path).map_err(|e| ManifestError::DiffFile {
                    line: lineno,
                    path: path.display().to_string(),
                    source: e,
                })?
            }
            _ => {
                return Err(ManifestError::Syntax {
                    line: lineno,
                    message: "exactly one of `diff` or `diff_path` is required".into(),
                })
            }
        };
        if !seen.insert(rec.id.clone()) {
            return Err(ManifestError::DuplicateId {
                line: lineno,
                id: rec.id,
            });
        }
        out.push(Patch {
            id: rec.id,
            diff_text: diff_text.replace("\r\n", "\n"),
            label: rec.label,
            benchmark: rec.benchmark,
            tool: rec.tool,
            bug_id: rec.bug_id,
        });
    }
    Ok(out)
}

pub fn read_manifest(path: &Path) -> Result<Vec<Patch>, ManifestError> {
    let text = fs::read_to_string(path).map_err(|e| ManifestError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_manifest(&text, Some(path.parent().unwrap_or(Path::new("."))))
}

/// Serialize patches as manifest lines with inline diffs.
pub fn write_manifest(patches: &[Patch]) -> String {
    let mut out = String::new();
    for p in patches {
        // Serializing a struct of strings cannot fail.
        out.push_str(&serde_json::to_string(p).expect("patch serializes"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_records() {
        let text = r#"
# comment
{"id":"p1","diff":"@@ -1 +1 @@\n-a\n+b\n","label":"correct","benchmark":"D4J","tool":"dev","bug_id":"Chart-1"}
{"id":"p2","diff":"@@ -1 +1 @@\r\n-a\r\n+c\r\n"}
"#;
        let patches = parse_manifest(text, None).unwrap();
        assert_eq!(patches.len(), 2);
        assert_eq!(patches[0].label, Label::Correct);
        assert_eq!(patches[1].label, Label::Unlabeled);
        assert!(!patches[1].diff_text.contains('\r'));
    }

    #[test]
    fn duplicate_id() {
        let text = "{\"id\":\"p\",\"diff\":\"x\"}\n{\"id\":\"p\",\"diff\":\"y\"}\n";
        assert!(matches!(
            parse_manifest(text, None),
            Err(ManifestError::DuplicateId { line: 2, .. })
        ));
    }

    #[test]
    fn diff_and_path_are_exclusive() {
        let text = "{\"id\":\"p\",\"diff\":\"x\",\"diff_path\":\"y\"}\n";
        assert!(matches!(
            parse_manifest(text, Some(Path::new("."))),
            Err(ManifestError::Syntax { line: 1, .. })
        ));
        assert!(parse_manifest("{\"id\":\"p\"}", None).is_err());
    }

    #[test]
    fn ids_with_tabs_are_rejected() {
        let text = "{\"id\":\"a\\tb\",\"diff\":\"x\"}\n";
        assert!(matches!(
            parse_manifest(text, None),
            Err(ManifestError::BadId { line: 1 })
        ));
    }

    #[test]
    fn diff_path_resolves_relative_to_manifest() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("p.diff"), "@@ -1 +1 @@\n-a\n+b\n").unwrap();
        let m = dir.path().join("m.jsonl");
        fs::write(&m, "{\"id\":\"p\",\"diff_path\":\"p.diff\",\"label\":\"incorrect\"}\n").unwrap();
        let patches = read_manifest(&m).unwrap();
        assert_eq!(patches[0].diff_text, "@@ -1 +1 @@\n-a\n+b\n");
    }

    #[test]
    fn write_then_parse() {
        let p = Patch {
            id: "x".into(),
            diff_text: "@@ -1 +1 @@\n-a\n+b\n".into(),
            label: Label::Incorrect,
            benchmark: "B".into(),
            tool: "t".into(),
            bug_id: "1".into(),
        };
        let text = write_manifest(std::slice::from_ref(&p));
        assert_eq!(parse_manifest(&text, None).unwrap(), vec![p]);
    }
}
