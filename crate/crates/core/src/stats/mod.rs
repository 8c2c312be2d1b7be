//! Three-level minimum-dependence check of a feature set.
//!
//! Each feature pair is examined in order: Pearson's chi-square test of
//! independence on equiprobable quantizations, then Spearman's rank
//! correlation, then a search for a local non-monotonicity witness. A pair
//! is a causal risk only if all three levels fail to separate it.

mod contingency;
mod correlation;
mod gamma;
mod witness;

use rayon::prelude::*;
use serde::Serialize;

pub use contingency::{bin_count, contingency_chi_square, cramers_v, quantize_equiprobable, ContingencyTable, QuantizedVariable};
pub use correlation::{average_ranks, pearson_cc, spearman_rcc, SrccBand};
pub use gamma::{chi_square_sf, gamma_q, ln_gamma};
pub use witness::{find_nonmonotone_triple, is_witness, Witness, WitnessSearch, DEFAULT_WITNESS_CAP};

use crate::error::{param, Result};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Named feature columns over the same samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl SampleMatrix {
    /// Fails on mismatched lengths, fewer than 2 samples, or non-finite
    /// values.
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(param("one name per column required"));
        }
        let n = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n) {
            return Err(param("columns differ in length"));
        }
        if !columns.is_empty() && n < 2 {
            return Err(param("at least 2 samples required"));
        }
        if let Some((i, _)) = columns.iter().enumerate().find(|(_, c)| c.iter().any(|v| !v.is_finite())) {
            return Err(param(format!("column `{}` holds a non-finite value", names[i])));
        }
        Ok(Self { names, columns })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, i: usize) -> &[f64] {
        &self.columns[i]
    }

    pub fn feature_count(&self) -> usize {
        self.columns.len()
    }

    pub fn sample_count(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    /// Rows at `indices`, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        Self::new(
            self.names.clone(),
            self.columns.iter().map(|c| indices.iter().map(|&i| c[i]).collect()).collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationConfig {
    pub alpha: f64,
    /// `|srcc|` at or above this counts as strong monotone agreement.
    pub srcc_strong: f64,
    pub witness_cap: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            srcc_strong: 0.8,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Independent,
    DependentNonmonotone,
    DependentMonotoneGlobalNonmonotoneLocal,
    CausalRisk,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseReport {
    pub features: [String; 2],
    pub chi2: f64,
    pub df: usize,
    pub p_value: f64,
    pub independent_at_alpha: bool,
    pub min_expected: f64,
    pub low_expected: bool,
    pub collapsed_rows: usize,
    pub collapsed_cols: usize,
    pub cvi: Option<f64>,
    pub srcc: Option<f64>,
    pub srcc_band: Option<SrccBand>,
    pub pcc: Option<f64>,
    pub witness_indices: Option<[usize; 3]>,
    pub witness_capped: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub md_accepted: bool,
    pub alpha: f64,
    pub srcc_strong: f64,
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: Option<u64>,
    pub pairs: Vec<PairwiseReport>,
}

/// Classifies one pair of columns.
pub fn evaluate_pair(
    names: [&str; 2],
    x: &QuantizedVariable,
    y: &QuantizedVariable,
    raw: [&[f64]; 2],
    cfg: &ValidationConfig,
) -> Result<PairwiseReport> {
    let table = contingency_chi_square(x, y)?;
    let independent = table.p_value >= cfg.alpha;
    let srcc = spearman_rcc(raw[0], raw[1]).ok();
    let mut search = WitnessSearch {
        witness: None,
        capped: false,
    };
    let verdict = if independent {
        Verdict::Independent
    } else if srcc.is_none_or(|s| s.abs() < cfg.srcc_strong) {
        Verdict::DependentNonmonotone
    } else {
        search = find_nonmonotone_triple(raw[0], raw[1], cfg.witness_cap);
        if search.witness.is_some() {
            Verdict::DependentMonotoneGlobalNonmonotoneLocal
        } else {
            Verdict::CausalRisk
        }
    };
    Ok(PairwiseReport {
        features: [names[0].to_string(), names[1].to_string()],
        chi2: table.chi2,
        df: table.df,
        p_value: table.p_value,
        independent_at_alpha: independent,
        min_expected: table.min_expected,
        low_expected: table.low_expected(),
        collapsed_rows: table.collapsed_rows,
        collapsed_cols: table.collapsed_cols,
        cvi: cramers_v(&table),
        srcc,
        srcc_band: srcc.map(|s| SrccBand::of(s, cfg.srcc_strong)),
        pcc: pearson_cc(raw[0], raw[1]).ok(),
        witness_indices: search.witness.map(|w| [w.r, w.e1, w.e2]),
        witness_capped: search.capped,
        verdict,
    })
}

/// Runs every pair of columns through the three levels. The set passes when
/// no pair is a causal risk.
pub fn validate_feature_set(m: &SampleMatrix, cfg: &ValidationConfig) -> Result<ValidationReport> {
    if m.feature_count() < 2 {
        return Err(param("at least 2 feature columns required"));
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(param("alpha must lie in (0, 1)"));
    }
    let n = m.sample_count();
    let k = bin_count(n).min(n);
    let quantized = (0..m.feature_count())
        .map(|i| quantize_equiprobable(m.column(i), k))
        .collect::<Result<Vec<_>>>()?;
    let f = m.feature_count();
    let pairs: Vec<(usize, usize)> = (0..f).flat_map(|i| (i + 1..f).map(move |j| (i, j))).collect();
    let reports = pairs
        .par_iter()
        .map(|&(i, j)| {
            evaluate_pair(
                [&m.names()[i], &m.names()[j]],
                &quantized[i],
                &quantized[j],
                [m.column(i), m.column(j)],
                cfg,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        md_accepted: reports.iter().all(|r| r.verdict != Verdict::CausalRisk),
        alpha: cfg.alpha,
        srcc_strong: cfg.srcc_strong,
        k,
        n,
        seed: None,
        pairs: reports,
    })
}
