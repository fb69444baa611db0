/// Ordered tokens of one fragment. Tokens are never empty and never contain
/// whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenSequence(Vec<String>);

impl TokenSequence {
    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation of two sequences.
    pub fn concat(&self, other: &TokenSequence) -> TokenSequence {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        TokenSequence(v)
    }
}

impl TryFrom<Vec<String>> for TokenSequence {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        if let Some(bad) = v
            .iter()
            .find(|t| t.is_empty() || t.chars().any(char::is_whitespace))
        {
            return Err(format!("invalid token {bad:?}"));
        }
        Ok(TokenSequence(v))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TokenizerConfig {
    /// Split identifiers on camelCase humps and underscores.
    pub split_subtokens: bool,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn push_subtokens(word: &str, out: &mut Vec<String>) {
    for part in word.split('_').filter(|p| !p.is_empty()) {
        let chars: Vec<char> = part.chars().collect();
        let mut start = 0;
        for i in 1..chars.len() {
            let prev = chars[i - 1];
            let cur = chars[i];
            let next_lower = chars.get(i + 1).is_some_and(|c| c.is_lowercase());
            // fooBar | HTTPServer -> HTTP Server | v2Beta
            let boundary = (prev.is_lowercase() || prev.is_numeric()) && cur.is_uppercase()
                || prev.is_uppercase() && cur.is_uppercase() && next_lower;
            if boundary {
                out.push(chars[start..i].iter().collect());
                start = i;
            }
        }
        out.push(chars[start..].iter().collect());
    }
    if word.chars().all(|c| c == '_') {
        out.push(word.to_string());
    }
}

/// Split on whitespace, then break every punctuation/operator character out
/// into its own token.
pub fn tokenize(fragment: &str) -> TokenSequence {
    tokenize_with(fragment, TokenizerConfig::default())
}

pub fn tokenize_with(fragment: &str, config: TokenizerConfig) -> TokenSequence {
    let mut out = Vec::new();
    for chunk in fragment.split_whitespace() {
        let mut word = String::new();
        for c in chunk.chars() {
            if is_word_char(c) {
                word.push(c);
                continue;
            }
            if !word.is_empty() {
                flush(&mut word, config, &mut out);
            }
            out.push(c.to_string());
        }
        if !word.is_empty() {
            flush(&mut word, config, &mut out);
        }
    }
    TokenSequence(out)
}

fn flush(word: &mut String, config: TokenizerConfig, out: &mut Vec<String>) {
    if config.split_subtokens {
        push_subtokens(word, out);
    } else {
        out.push(word.clone());
    }
    word.clear();
}
