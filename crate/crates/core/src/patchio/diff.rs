//! Unified diff parsing.
//!
//! Only the parts of the format needed to recover hunk bodies are
//! understood: `---`/`+++` file headers, `@@` hunk headers and the tagged
//! body lines. Git extended headers (`diff --git`, `index`, mode lines) and
//! any other text between hunks are skipped.

use std::fmt;

use super::DiffError;

/// Role of a line inside a hunk body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineKind {
    Context,
    Removed,
    Added,
}

impl LineKind {
    pub fn marker(self) -> char {
        match self {
            LineKind::Context => ' ',
            LineKind::Removed => '-',
            LineKind::Added => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffLine {
    pub kind: LineKind,
    /// Text after the one-character marker.
    pub text: String,
    /// The line was completely empty in the input (some tools strip the
    /// leading space of blank context lines).
    bare: bool,
}

impl DiffLine {
    pub fn new(kind: LineKind, text: impl Into<String>) -> Self {
        DiffLine {
            kind,
            text: text.into(),
            bare: false,
        }
    }

    /// The line as it appeared in the diff.
    pub fn raw(&self) -> String {
        if self.bare {
            String::new()
        } else {
            let mut s = String::with_capacity(self.text.len() + 1);
            s.push(self.kind.marker());
            s.push_str(&self.text);
            s
        }
    }
}

/// A `(start, length)` range from a hunk header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineRange {
    pub start: u64,
    pub len: u64,
}

impl LineRange {
    /// Closed interval of original-file lines touched by the range. A
    /// zero-length range (pure insertion) is treated as the single line it
    /// is anchored to.
    pub fn span(&self) -> (u64, u64) {
        (self.start, self.start + self.len.max(1) - 1)
    }

    pub fn overlaps(&self, other: &LineRange) -> bool {
        let (a0, a1) = self.span();
        let (b0, b1) = other.span();
        a0 <= b1 && b0 <= a1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hunk {
    /// Path from the `---` header, `a/` prefix removed. Falls back to the
    /// `+++` path for file creations.
    pub file: String,
    pub old: LineRange,
    pub new: LineRange,
    /// Trailing text after the closing `@@` (usually a function signature).
    pub section: String,
    pub lines: Vec<DiffLine>,
}

impl Hunk {
    pub fn header(&self) -> String {
        let mut h = format!(
            "@@ -{},{} +{},{} @@",
            self.old.start, self.old.len, self.new.start, self.new.len
        );
        if !self.section.is_empty() {
            h.push(' ');
            h.push_str(&self.section);
        }
        h
    }

    /// Body lines serialized back to diff form, one per element.
    pub fn raw_lines(&self) -> Vec<String> {
        self.lines.iter().map(DiffLine::raw).collect()
    }
}

impl fmt::Display for Hunk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for line in &self.lines {
            writeln!(f, "{}", line.raw())?;
        }
        Ok(())
    }
}

fn strip_path_prefix(path: &str) -> String {
    // Drop a trailing timestamp (`--- a/x.java\t2020-01-01 ...`).
    let path = path.split('\t').next().unwrap_or("").trim_end();
    for prefix in ["a/", "b/"] {
        if let Some(rest) = path.strip_prefix(prefix) {
            return rest.to_string();
        }
    }
    path.to_string()
}

fn parse_range(s: &str, sign: char, lineno: usize) -> Result<LineRange, DiffError> {
    let bad = || DiffError::BadHunkHeader { line: lineno };
    let body = s.strip_prefix(sign).ok_or_else(bad)?;
    let (start, len) = match body.split_once(',') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let start = start.parse::<u64>().map_err(|_| bad())?;
    let len = match len {
        Some(l) => l.parse::<u64>().map_err(|_| bad())?,
        None => 1,
    };
    Ok(LineRange { start, len })
}

fn parse_hunk_header(line: &str, lineno: usize) -> Result<(LineRange, LineRange, String), DiffError> {
    let bad = || DiffError::BadHunkHeader { line: lineno };
    let rest = line.strip_prefix("@@ ").ok_or_else(bad)?;
    let (ranges, section) = rest.split_once(" @@").ok_or_else(bad)?;
    let mut parts = ranges.split(' ').filter(|p| !p.is_empty());
    let old = parse_range(parts.next().ok_or_else(bad)?, '-', lineno)?;
    let new = parse_range(parts.next().ok_or_else(bad)?, '+', lineno)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((old, new, section.trim_start().to_string()))
}

/// Parse unified diff text into its hunks, in input order.
///
/// CRLF line endings are accepted and normalized. A hunk whose body does not
/// contain exactly the number of old/new lines announced by its header is
/// rejected.
pub fn parse_diff(text: &str) -> Result<Vec<Hunk>, DiffError> {
    let normalized;
    let text = if text.contains('\r') {
        normalized = text.replace("\r\n", "\n");
        normalized.as_str()
    } else {
        text
    };

    let lines: Vec<&str> = text.split('\n').collect();
    // `split` yields a trailing empty element when the text ends with '\n'.
    let n_lines = if text.ends_with('\n') {
        lines.len() - 1
    } else {
        lines.len()
    };

    let mut hunks = Vec::new();
    let mut old_file: Option<String> = None;
    let mut new_file: Option<String> = None;
    let mut i = 0;
    while i < n_lines {
        let line = lines[i];
        if let Some(p) = line.strip_prefix("--- ") {
            old_file = Some(strip_path_prefix(p));
            new_file = None;
            i += 1;
            continue;
        }
        if let Some(p) = line.strip_prefix("+++ ") {
            new_file = Some(strip_path_prefix(p));
            i += 1;
            continue;
        }
        if !line.starts_with("@@") {
            i += 1;
            continue;
        }

        let header_no = i + 1;
        let (old, new, section) = parse_hunk_header(line, header_no)?;
        let file = match (&old_file, &new_file) {
            (Some(o), _) if o != "/dev/null" => o.clone(),
            (_, Some(n)) => n.clone(),
            (Some(o), None) => o.clone(),
            (None, None) => String::new(),
        };
        let mut remaining_old = old.len;
        let mut remaining_new = new.len;
        let mut body = Vec::new();
        i += 1;
        while (remaining_old > 0 || remaining_new > 0) && i < n_lines {
            let raw = lines[i];
            let (kind, text, bare) = match raw.chars().next() {
                Some(' ') => (LineKind::Context, &raw[1..], false),
                Some('-') => (LineKind::Removed, &raw[1..], false),
                Some('+') => (LineKind::Added, &raw[1..], false),
                Some('\\') => {
                    // "\ No newline at end of file"
                    i += 1;
                    continue;
                }
                None => (LineKind::Context, "", true),
                Some(_) => break,
            };
            match kind {
                LineKind::Context => {
                    if remaining_old == 0 || remaining_new == 0 {
                        break;
                    }
                    remaining_old -= 1;
                    remaining_new -= 1;
                }
                LineKind::Removed => {
                    if remaining_old == 0 {
                        break;
                    }
                    remaining_old -= 1;
                }
                LineKind::Added => {
                    if remaining_new == 0 {
                        break;
                    }
                    remaining_new -= 1;
                }
            }
            body.push(DiffLine {
                kind,
                text: text.to_string(),
                bare,
            });
            i += 1;
        }
        if remaining_old > 0 || remaining_new > 0 {
            return Err(DiffError::CountMismatch {
                line: header_no,
                missing_old: remaining_old,
                missing_new: remaining_new,
            });
        }
        // Skip a trailing no-newline marker belonging to this hunk.
        while i < n_lines && lines[i].starts_with('\\') {
            i += 1;
        }
        hunks.push(Hunk {
            file,
            old,
            new,
            section,
            lines: body,
        });
    }

    if hunks.is_empty() {
        return Err(DiffError::NoHunk);
    }
    Ok(hunks)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLE: &str = "\
--- a/src/Foo.java
+++ b/src/Foo.java
@@ -10,3 +10,3 @@ class Foo
 a;
-b;
+c;
 d;
";

    #[test]
    fn tags_follow_prefixes() {
        let hunks = parse_diff(SIMPLE).unwrap();
        assert_eq!(hunks.len(), 1);
        let kinds: Vec<_> = hunks[0].lines.iter().map(|l| l.kind).collect();
        assert_eq!(
            kinds,
            [
                LineKind::Context,
                LineKind::Removed,
                LineKind::Added,
                LineKind::Context
            ]
        );
        assert_eq!(hunks[0].file, "src/Foo.java");
        assert_eq!(hunks[0].old, LineRange { start: 10, len: 3 });
        assert_eq!(hunks[0].section, "class Foo");
    }

    #[test]
    fn empty_input_is_malformed() {
        assert!(matches!(parse_diff(""), Err(DiffError::NoHunk)));
        assert!(matches!(
            parse_diff("just some text\n"),
            Err(DiffError::NoHunk)
        ));
    }

    #[test]
    fn truncated_hunk_is_rejected() {
        let text = "--- a/x\n+++ b/x\n@@ -1,3 +1,3 @@\n a\n-b\n";
        assert!(matches!(
            parse_diff(text),
            Err(DiffError::CountMismatch { .. })
        ));
    }

    #[test]
    fn bad_header_numbers() {
        let text = "@@ -x,1 +1 @@\n-a\n+b\n";
        assert!(matches!(
            parse_diff(text),
            Err(DiffError::BadHunkHeader { line: 1 })
        ));
    }

    #[test]
    fn crlf_and_missing_trailing_newline() {
        let text = "--- a/x\r\n+++ b/x\r\n@@ -1 +1 @@\r\n-a\r\n+b";
        let hunks = parse_diff(text).unwrap();
        assert_eq!(hunks[0].lines[0].text, "a");
        assert_eq!(hunks[0].lines[1].text, "b");
    }

    #[test]
    fn default_length_is_one() {
        let hunks = parse_diff("@@ -5 +5 @@\n-a\n+b\n").unwrap();
        assert_eq!(hunks[0].old, LineRange { start: 5, len: 1 });
    }

    #[test]
    fn multi_file_and_git_headers() {
        let text = "\
diff --git a/A.java b/A.java
index 111..222 100644
--- a/A.java
+++ b/A.java
@@ -1,2 +1,2 @@
 x
-y
+z
diff --git a/B.java b/B.java
--- a/B.java
+++ b/B.java
@@ -7,0 +8,1 @@
+w
\\ No newline at end of file
";
        let hunks = parse_diff(text).unwrap();
        assert_eq!(hunks.len(), 2);
        assert_eq!(hunks[0].file, "A.java");
        assert_eq!(hunks[1].file, "B.java");
        assert_eq!(hunks[1].lines.len(), 1);
    }

    #[test]
    fn new_file_uses_target_path() {
        let text = "--- /dev/null\n+++ b/New.java\n@@ -0,0 +1,2 @@\n+a\n+b\n";
        let hunks = parse_diff(text).unwrap();
        assert_eq!(hunks[0].file, "New.java");
    }

    #[test]
    fn bare_blank_context_round_trips() {
        let text = "@@ -1,3 +1,3 @@\n a\n\n-b\n+c\n";
        let hunks = parse_diff(text).unwrap();
        assert_eq!(hunks[0].raw_lines(), [" a", "", "-b", "+c"]);
    }

    #[test]
    fn range_overlap() {
        let a = LineRange { start: 10, len: 3 };
        let b = LineRange { start: 12, len: 5 };
        let c = LineRange { start: 200, len: 6 };
        assert!(a.overlaps(&b));
        assert!(!a.overlaps(&c));
        let insertion = LineRange { start: 11, len: 0 };
        assert!(a.overlaps(&insertion));
    }
}
