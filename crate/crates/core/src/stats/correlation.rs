use crate::error::{param, Result};

/// 1-based ranks with ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Product-moment correlation. Errors on length mismatch, fewer than 2
/// samples, or zero variance.
pub fn pearson_cc(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(param("correlation needs two equal-length samples of size at least 2"));
    }
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(crate::Error::Undefined("correlation of a constant variable"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rank correlation with average ranks for ties. Without ties
/// the rank-difference formula is used, which is exact in integers.
pub fn spearman_rcc(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(param("rank correlation needs two equal-length samples of size at least 3"));
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let tie_free = |r: &[f64]| r.iter().all(|v| v.fract() == 0.0) && {
        let mut s: Vec<u64> = r.iter().map(|&v| v as u64).collect();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    if tie_free(&rx) && tie_free(&ry) {
        let n = x.len() as u128;
        let d2: u128 = rx.iter().zip(&ry).map(|(&a, &b)| ((a - b) as i128).pow(2) as u128).sum();
        let num = 6 * d2;
        let den = n * (n * n - 1);
        return Ok(1.0 - num as f64 / den as f64);
    }
    pearson_cc(&rx, &ry)
}

/// Agreement band of a correlation magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SrccBand {
    Poor,
    Moderate,
    Strong,
}

impl SrccBand {
    pub fn of(srcc: f64, strong: f64) -> Self {
        let a = srcc.abs();
        if a >= strong {
            Self::Strong
        } else if a >= 0.4 {
            Self::Moderate
        } else {
            Self::Poor
        }
    }
}
