use super::StatError;

/// Five-number summary plus mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl DistributionStats {
    /// All statistics multiplied by `factor` (reports use ×100).
    pub fn scaled(&self, factor: f64) -> Self {
        DistributionStats {
            min: self.min * factor,
            q1: self.q1 * factor,
            median: self.median * factor,
            q3: self.q3 * factor,
            max: self.max * factor,
            mean: self.mean * factor,
        }
    }
}

/// Quantile of an ascending slice by linear interpolation between order
/// statistics (`h = (n - 1) p`).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

fn sorted_finite(scores: &[f64]) -> Result<Vec<f64>, StatError> {
    if scores.is_empty() {
        return Err(StatError::EmptySample);
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(StatError::NonFinite);
    }
    let mut v = scores.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

pub fn dist_stats(scores: &[f64]) -> Result<DistributionStats, StatError> {
    let v = sorted_finite(scores)?;
    let mean = (v.iter().sum::<f64>() / v.len() as f64).clamp(v[0], v[v.len() - 1]);
    Ok(DistributionStats {
        min: v[0],
        q1: quantile_sorted(&v, 0.25),
        median: quantile_sorted(&v, 0.5),
        q3: quantile_sorted(&v, 0.75),
        max: v[v.len() - 1],
        mean,
    })
}

pub fn mean(scores: &[f64]) -> Result<f64, StatError> {
    Ok(dist_stats(scores)?.mean)
}
