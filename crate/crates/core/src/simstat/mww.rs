//! Mann-Whitney-Wilcoxon rank-sum test.

use statrs::function::erf::erfc;

use super::StatError;

/// Samples up to this size (the smaller one) use the exact null
/// distribution.
pub const EXACT_MAX_SMALL: usize = 8;
/// Exact enumeration is skipped above this combined size; its cost grows
/// with the square of the pooled sample.
pub const EXACT_MAX_TOTAL: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwwMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MwwResult {
    pub u_a: f64,
    pub u_b: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub method: MwwMethod,
    /// Every observation in both samples was identical; `p_value` is 1.
    pub degenerate: bool,
}

/// Midranks (1-based) of `values`, plus the size of every tie group.
pub fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j share rank (i+1 + j) / 2
        let r = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = r;
        }
        ties.push(j - i);
        i = j;
    }
    (ranks, ties)
}

struct Pooled {
    ranks: Vec<f64>,
    ties: Vec<usize>,
    u_a: f64,
}

fn pool(a: &[f64], b: &[f64]) -> Result<Pooled, StatError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatError::EmptySample);
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(StatError::NonFinite);
    }
    let all: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&all);
    let na = a.len() as f64;
    let r_a: f64 = ranks[..a.len()].iter().sum();
    Ok(Pooled {
        u_a: r_a - na * (na + 1.0) / 2.0,
        ranks,
        ties,
    })
}

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction.
pub fn mww_normal(a: &[f64], b: &[f64]) -> Result<MwwResult, StatError> {
    let pooled = pool(a, b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let n = na + nb;
    let tie_term: f64 = pooled
        .ties
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = if n > 1.0 {
        na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)))
    } else {
        0.0
    };
    let degenerate = pooled.ties.len() == 1;
    let p_value = if var <= 0.0 {
        1.0
    } else {
        let dev = ((pooled.u_a - na * nb / 2.0).abs() - 0.5).max(0.0);
        let z = dev / var.sqrt();
        // 2 * (1 - Phi(z))
        erfc(z / std::f64::consts::SQRT_2).min(1.0)
    };
    Ok(MwwResult {
        u_a: pooled.u_a,
        u_b: na * nb - pooled.u_a,
        p_value,
        method: MwwMethod::Normal,
        degenerate,
    })
}

/// Exact permutation distribution of U, conditional on the observed tie
/// pattern, built by dynamic programming over subsets of the pooled midranks.
pub fn mww_exact(a: &[f64], b: &[f64]) -> Result<MwwResult, StatError> {
    let pooled = pool(a, b)?;
    let (na, nb) = (a.len(), b.len());
    let (k, u_small) = if na <= nb {
        (na, pooled.u_a)
    } else {
        (nb, (na * nb) as f64 - pooled.u_a)
    };
    // Doubled midranks are integers.
    let doubled: Vec<usize> = pooled.ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let mut top = doubled.clone();
    top.sort_unstable_by(|x, y| y.cmp(x));
    let max_sum: usize = top[..k].iter().sum();

    // ways[j][s]: number of j-subsets with doubled rank sum s
    let mut ways = vec![vec![0.0f64; max_sum + 1]; k + 1];
    ways[0][0] = 1.0;
    for &r in &doubled {
        for j in (1..=k).rev() {
            let (lower, upper) = ways.split_at_mut(j);
            let prev = &lower[j - 1];
            let cur = &mut upper[0];
            for s in (r..=max_sum).rev() {
                let w = prev[s - r];
                if w != 0.0 {
                    cur[s] += w;
                }
            }
        }
    }
    let dist = &ways[k];
    let total: f64 = dist.iter().sum();
    // doubled U = doubled rank sum - k (k + 1)
    let offset = k * (k + 1);
    let observed = (2.0 * u_small).round() as usize + offset;
    let le: f64 = dist[..=observed.min(max_sum)].iter().sum::<f64>() / total;
    let ge: f64 = dist[observed.min(max_sum + 1)..].iter().sum::<f64>() / total;
    let p_value = (2.0 * le.min(ge)).min(1.0);
    Ok(MwwResult {
        u_a: pooled.u_a,
        u_b: (na * nb) as f64 - pooled.u_a,
        p_value,
        method: MwwMethod::Exact,
        degenerate: pooled.ties.len() == 1,
    })
}

/// Two-sided MWW test. Exact when the smaller sample has at most
/// [`EXACT_MAX_SMALL`] observations (and the pool is at most
/// [`EXACT_MAX_TOTAL`]), normal approximation otherwise.
pub fn mww_test(a: &[f64], b: &[f64]) -> Result<MwwResult, StatError> {
    let small = a.len().min(b.len());
    let mut res = if small <= EXACT_MAX_SMALL && a.len() + b.len() <= EXACT_MAX_TOTAL {
        mww_exact(a, b)?
    } else {
        mww_normal(a, b)?
    };
    if res.degenerate {
        res.p_value = 1.0;
    }
    Ok(res)
}
