use serde::Serialize;

use super::gamma::chi_square_sf;
use crate::error::{param, Result};

/// Number of equiprobable buckets for `n` samples: `round(2 n^0.4)`, at
/// least 2.
pub fn bin_count(n: usize) -> usize {
    ((2.0 * (n as f64).powf(0.4)).round() as usize).max(2)
}

/// A variable quantized into `k` nearly equiprobable levels.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedVariable {
    pub k: usize,
    /// `k - 1` non-decreasing cut values; a value's level is the number of
    /// cuts strictly below it, so ties fall into the lower level.
    pub cut_points: Vec<f64>,
    pub codes: Vec<usize>,
    /// Largest minus smallest level occupancy.
    pub occupancy_slack: usize,
    /// Only one level is occupied.
    pub degenerate: bool,
}

impl QuantizedVariable {
    pub fn occupancy(&self) -> Vec<usize> {
        let mut out = vec![0; self.k];
        for &c in &self.codes {
            out[c] += 1;
        }
        out
    }
}

/// Cuts at the empirical `i / k` quantiles, `i = 1..k`.
pub fn quantize_equiprobable(values: &[f64], k: usize) -> Result<QuantizedVariable> {
    let n = values.len();
    if k < 2 {
        return Err(param(format!("need at least 2 levels, got {k}")));
    }
    if k > n {
        return Err(param(format!("{k} levels exceed {n} samples")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(param("values must be finite"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let cut_points: Vec<f64> = (1..k).map(|i| sorted[(i * n).div_ceil(k) - 1]).collect();
    let codes: Vec<usize> = values.iter().map(|&v| cut_points.partition_point(|&c| c < v)).collect();
    let mut q = QuantizedVariable {
        k,
        cut_points,
        codes,
        occupancy_slack: 0,
        degenerate: false,
    };
    let occ = q.occupancy();
    q.occupancy_slack = occ.iter().max().unwrap() - occ.iter().min().unwrap();
    q.degenerate = occ.iter().filter(|&&c| c > 0).count() <= 1;
    Ok(q)
}

/// Two-way table of level counts with Pearson's chi-square statistic.
/// Empty rows and columns are dropped before anything else is computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContingencyTable {
    pub counts: Vec<Vec<u64>>,
    pub expected: Vec<Vec<f64>>,
    pub chi2: f64,
    pub df: usize,
    pub p_value: f64,
    pub min_expected: f64,
    /// Rows and columns dropped because they were empty.
    pub collapsed_rows: usize,
    pub collapsed_cols: usize,
    pub n: usize,
}

impl ContingencyTable {
    pub fn rows(&self) -> usize {
        self.counts.len()
    }

    pub fn cols(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    /// Some expected count is below 5, so the test's validity is doubtful.
    pub fn low_expected(&self) -> bool {
        self.min_expected < 5.0
    }

    pub fn from_counts(full: &[Vec<u64>]) -> Result<Self> {
        let rows0 = full.len();
        let cols0 = full.first().map_or(0, Vec::len);
        if rows0 == 0 || cols0 == 0 || full.iter().any(|r| r.len() != cols0) {
            return Err(param("contingency counts must be a non-empty rectangle"));
        }
        let keep_r: Vec<usize> = (0..rows0).filter(|&r| full[r].iter().any(|&v| v > 0)).collect();
        let keep_c: Vec<usize> = (0..cols0).filter(|&c| full.iter().any(|row| row[c] > 0)).collect();
        if keep_r.is_empty() {
            return Err(param("contingency table is empty"));
        }
        let counts: Vec<Vec<u64>> = keep_r.iter().map(|&r| keep_c.iter().map(|&c| full[r][c]).collect()).collect();
        let row_sum: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let col_sum: Vec<u64> = (0..keep_c.len()).map(|c| counts.iter().map(|r| r[c]).sum()).collect();
        let n: u64 = row_sum.iter().sum();
        let mut chi2 = 0.0;
        let mut min_expected = f64::INFINITY;
        let expected: Vec<Vec<f64>> = row_sum
            .iter()
            .zip(&counts)
            .map(|(&rs, row)| {
                row.iter()
                    .zip(&col_sum)
                    .map(|(&o, &cs)| {
                        let e = rs as f64 * cs as f64 / n as f64;
                        chi2 += (o as f64 - e).powi(2) / e;
                        min_expected = min_expected.min(e);
                        e
                    })
                    .collect()
            })
            .collect();
        let df = (keep_r.len() - 1) * (keep_c.len() - 1);
        Ok(Self {
            counts,
            expected,
            chi2,
            df,
            p_value: chi_square_sf(chi2, df),
            min_expected,
            collapsed_rows: rows0 - keep_r.len(),
            collapsed_cols: cols0 - keep_c.len(),
            n: n as usize,
        })
    }
}

pub fn contingency_chi_square(x: &QuantizedVariable, y: &QuantizedVariable) -> Result<ContingencyTable> {
    if x.codes.len() != y.codes.len() {
        return Err(param("quantized variables differ in length"));
    }
    let mut counts = vec![vec![0u64; y.k]; x.k];
    for (&a, &b) in x.codes.iter().zip(&y.codes) {
        counts[a][b] += 1;
    }
    ContingencyTable::from_counts(&counts)
}

/// `chi2 / (N (min(R, C) - 1))` on the collapsed table; `None` when a
/// dimension is 1.
pub fn cramers_v(table: &ContingencyTable) -> Option<f64> {
    let m = table.rows().min(table.cols());
    if m < 2 || table.n == 0 {
        return None;
    }
    Some((table.chi2 / (table.n as f64 * (m - 1) as f64)).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bin_count_anchors() {
        assert_eq!(bin_count(745), 28);
        assert_eq!(bin_count(32), 8);
        assert_eq!(bin_count(2), 3);
        assert_eq!(bin_count(1), 2);
    }

    #[test]
    fn quartiles_of_one_to_hundred() {
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        let q = quantize_equiprobable(&v, 4).unwrap();
        assert_eq!(q.occupancy(), vec![25; 4]);
        assert_eq!(q.cut_points, vec![25.0, 50.0, 75.0]);
        assert!(!q.degenerate);
    }

    #[test]
    fn constant_values_are_degenerate() {
        let q = quantize_equiprobable(&[3.0; 10], 4).unwrap();
        assert!(q.degenerate);
        assert_eq!(q.occupancy()[0], 10);
        assert!(quantize_equiprobable(&[1.0, 2.0], 3).is_err());
    }

    #[test]
    fn ties_match_sort_and_count_oracle() {
        // 30 of 100 values tied at the median.
        let mut v: Vec<f64> = (0..70).map(|i| if i < 35 { i as f64 } else { 100.0 + i as f64 }).collect();
        v.extend([50.0; 30]);
        let q = quantize_equiprobable(&v, 4).unwrap();
        let mut s = v.clone();
        s.sort_by(f64::total_cmp);
        let cuts = [s[24], s[49], s[74]];
        let mut occ = [0usize; 4];
        for &x in &v {
            occ[cuts.iter().filter(|&&c| c < x).count()] += 1;
        }
        assert_eq!(q.occupancy(), occ.to_vec());
        assert_eq!(q.occupancy_slack, occ.iter().max().unwrap() - occ.iter().min().unwrap());
    }

    #[test]
    fn identical_variables_are_dependent() {
        let v: Vec<f64> = (0..400).map(|i| ((i * 37) % 400) as f64).collect();
        let q = quantize_equiprobable(&v, 4).unwrap();
        let t = contingency_chi_square(&q, &q).unwrap();
        assert!(t.p_value < 1e-12);
        assert_eq!(cramers_v(&t), Some(1.0));
    }

    #[test]
    fn uniform_table_is_independent() {
        let t = ContingencyTable::from_counts(&[vec![5, 5], vec![5, 5]]).unwrap();
        assert_eq!(t.chi2, 0.0);
        assert_eq!(t.p_value, 1.0);
        assert_eq!(cramers_v(&t), Some(0.0));
        let diag = ContingencyTable::from_counts(&[vec![7, 0], vec![0, 9]]).unwrap();
        assert_eq!(cramers_v(&diag), Some(1.0));
    }

    #[test]
    fn empty_lines_are_collapsed() {
        let t = ContingencyTable::from_counts(&[vec![3, 0, 2], vec![0, 0, 0], vec![1, 0, 4]]).unwrap();
        assert_eq!((t.rows(), t.cols(), t.df), (2, 2, 1));
        assert_eq!((t.collapsed_rows, t.collapsed_cols), (1, 1));
        let single = ContingencyTable::from_counts(&[vec![3, 4]]).unwrap();
        assert_eq!((single.df, single.p_value), (0, 1.0));
        assert_eq!(cramers_v(&single), None);
        // Expected margins equal observed margins.
        for (o, e) in t.counts.iter().zip(&t.expected) {
            let (so, se): (u64, f64) = (o.iter().sum(), e.iter().sum());
            assert!((so as f64 - se).abs() < 1e-9);
        }
    }
}
