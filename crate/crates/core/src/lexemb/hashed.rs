use twox_hash::XxHash64;

use super::tokenize::TokenSequence;

pub const DEFAULT_HASHED_DIM: usize = 256;

/// Signed bucket for one token: index in `[0, dim)` and a ±1 sign taken
/// from the top bit of the same 64-bit hash.
pub fn token_bucket(token: &str, dim: usize, seed: u64) -> (usize, f64) {
    let h = XxHash64::oneshot(seed, token.as_bytes());
    let index = (h % dim as u64) as usize;
    let sign = if h >> 63 == 0 { 1.0 } else { -1.0 };
    (index, sign)
}

/// Un-normalized signed count vector. Additive over token concatenation.
pub fn hashed_counts(tokens: &TokenSequence, dim: usize, seed: u64) -> Vec<f64> {
    assert!(dim >= 2, "hashed embedding needs dim >= 2");
    let mut v = vec![0.0; dim];
    for t in tokens.tokens() {
        let (i, s) = token_bucket(t, dim, seed);
        v[i] += s;
    }
    v
}

/// Feature-hashed bag of tokens, L2-normalized when nonzero.
pub fn embed_hashed(tokens: &TokenSequence, dim: usize, seed: u64) -> Vec<f64> {
    let mut v = hashed_counts(tokens, dim, seed);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexemb::tokenize;

    #[test]
    fn deterministic_and_order_free() {
        let a = tokenize("if (dataset != null) return result;");
        let mut rev: Vec<String> = a.tokens().to_vec();
        rev.reverse();
        let b = TokenSequence::try_from(rev).unwrap();
        assert_eq!(embed_hashed(&a, 64, 7), embed_hashed(&a, 64, 7));
        assert_eq!(embed_hashed(&a, 64, 7), embed_hashed(&b, 64, 7));
    }

    #[test]
    fn seed_changes_layout() {
        let a = tokenize("alpha beta gamma delta");
        assert_ne!(embed_hashed(&a, 64, 1), embed_hashed(&a, 64, 2));
    }

    #[test]
    fn empty_is_zero() {
        let v = embed_hashed(&tokenize(""), 8, 0);
        assert!(v.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn unit_norm() {
        let v = embed_hashed(&tokenize("a b c a"), 32, 3);
        let n: f64 = v.iter().map(|x| x * x).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}
