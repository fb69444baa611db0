use super::StatError;

fn check_dims(a: &[f64], b: &[f64]) -> Result<(), StatError> {
    if a.len() != b.len() {
        return Err(StatError::DimensionMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Cosine similarity clamped to `[-1, 1]`.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64, StatError> {
    check_dims(a, b)?;
    let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Err(StatError::ZeroVector);
    }
    Ok((dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0))
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64, StatError> {
    check_dims(a, b)?;
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// `1 / (1 + ||a - b||)`, in `(0, 1]`.
pub fn euclidean_similarity(a: &[f64], b: &[f64]) -> Result<f64, StatError> {
    Ok(1.0 / (1.0 + euclidean_distance(a, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_basics() {
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let c = cosine(&[1.0, 1.0], &[1.0, 0.0]).unwrap();
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let v = [0.3, -1.7, 2.2];
        assert!((cosine(&v, &v).unwrap() - 1.0).abs() < 1e-12);
        assert!((cosine(&v, &[-0.3, 1.7, -2.2]).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_errors() {
        assert!(matches!(cosine(&[0.0, 0.0], &[1.0, 0.0]), Err(StatError::ZeroVector)));
        assert!(matches!(
            cosine(&[1.0], &[1.0, 0.0]),
            Err(StatError::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn euclidean() {
        assert_eq!(euclidean_similarity(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 1.0);
        let s = euclidean_similarity(&[0.0, 0.0], &[3.0, 4.0]).unwrap();
        assert!((s - 1.0 / 6.0).abs() < 1e-12);
        let near = euclidean_similarity(&[0.0], &[1.0]).unwrap();
        let far = euclidean_similarity(&[0.0], &[2.0]).unwrap();
        assert!(near > far);
    }
}
