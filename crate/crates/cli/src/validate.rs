use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use shapesuite::descriptors::FeatureVector;
use shapesuite::{validate_feature_set, SampleMatrix, ValidationConfig, ValidationReport};

use crate::config::FileConfig;
use crate::output;

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Feature CSV with a header row; `#` lines are skipped.
    #[arg(long)]
    features: Option<PathBuf>,
    /// Columns to test [default: the seven descriptors when present, else
    /// every numeric column].
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    /// Output JSON; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significance level [default: 0.05].
    #[arg(long)]
    alpha: Option<f64>,
    /// Rank correlation counted as strong [default: 0.8].
    #[arg(long)]
    srcc_strong: Option<f64>,
    /// Keep a random 1/N of the rows [default: 1, keep all].
    #[arg(long)]
    decimate: Option<usize>,
    /// Seed for decimation [default: 0].
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct CliReport {
    #[serde(flatten)]
    report: ValidationReport,
    input_rows: usize,
    decimate: usize,
    dropped_columns: Vec<String>,
    rows_with_missing_values: usize,
}

/// Runs validation and returns whether the set was accepted.
pub fn run(args: ValidateArgs, file: &FileConfig) -> Result<bool> {
    let path = args.features.or(file.features.clone()).context("--features is required")?;
    let out = args.out.or(file.out.clone());
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let decimate = args.decimate.or(file.decimate).unwrap_or(1);
    if decimate == 0 {
        bail!("--decimate must be at least 1");
    }
    let cfg = ValidationConfig {
        alpha: args.alpha.or(file.alpha).unwrap_or(0.05),
        srcc_strong: args.srcc_strong.or(file.srcc_strong).unwrap_or(0.8),
        ..ValidationConfig::default()
    };

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(&path)
        .with_context(|| format!("reading {}", path.display()))?;
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let records: Vec<csv::StringRecord> = reader.records().collect::<std::result::Result<_, _>>()?;

    let chosen: Vec<String> = match args.columns.or(file.columns.clone()) {
        Some(c) => c,
        None if FeatureVector::DESCRIPTORS.iter().all(|d| header.iter().any(|h| h == d)) => {
            FeatureVector::DESCRIPTORS.iter().map(|s| s.to_string()).collect()
        }
        None => header
            .iter()
            .enumerate()
            .filter(|(i, h)| {
                !["label", "flags"].contains(&h.as_str())
                    && records.iter().all(|r| r.get(*i).is_some_and(|v| v.is_empty() || v.parse::<f64>().is_ok()))
            })
            .map(|(_, h)| h.clone())
            .collect(),
    };
    let mut names = Vec::new();
    let mut cells: Vec<Vec<Option<f64>>> = Vec::new();
    let mut dropped = Vec::new();
    for name in chosen {
        let i = header
            .iter()
            .position(|h| *h == name)
            .with_context(|| format!("no column `{name}` in {}", path.display()))?;
        let col = records
            .iter()
            .enumerate()
            .map(|(row, r)| match r.get(i).unwrap_or("") {
                "" => Ok(None),
                v => v
                    .parse::<f64>()
                    .map(Some)
                    .with_context(|| format!("row {}, column `{name}`: `{v}` is not a number", row + 1)),
            })
            .collect::<Result<Vec<_>>>()?;
        if col.iter().all(Option::is_none) {
            dropped.push(name);
        } else {
            names.push(name);
            cells.push(col);
        }
    }
    if names.len() < 2 {
        bail!("need at least 2 usable feature columns, found {}", names.len());
    }
    let complete: Vec<usize> = (0..records.len()).filter(|&r| cells.iter().all(|c| c[r].is_some())).collect();
    let missing = records.len() - complete.len();
    let columns: Vec<Vec<f64>> = cells.iter().map(|c| complete.iter().map(|&r| c[r].unwrap()).collect()).collect();
    let mut matrix = SampleMatrix::new(names, columns)?;
    if decimate > 1 {
        matrix = matrix.select_rows(&decimation(matrix.sample_count(), decimate, seed))?;
    }
    let mut report = validate_feature_set(&matrix, &cfg)?;
    report.seed = Some(seed);
    let accepted = report.md_accepted;
    let full = CliReport {
        report,
        input_rows: records.len(),
        decimate,
        dropped_columns: dropped,
        rows_with_missing_values: missing,
    };
    let mut json = serde_json::to_vec_pretty(&full)?;
    json.push(b'\n');
    output::emit(out.as_deref(), &json)?;
    Ok(accepted)
}

/// Simple random sample of `ceil(n / factor)` row indices, in ascending order.
pub fn decimation(n: usize, factor: usize, seed: u64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    idx.truncate(n.div_ceil(factor));
    idx.sort_unstable();
    idx
}

#[cfg(test)]
mod tests {
    use super::decimation;

    #[test]
    fn decimation_is_seeded_and_sorted() {
        let a = decimation(745, 10, 1);
        assert_eq!(a.len(), 75);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a, decimation(745, 10, 1));
        assert_ne!(a, decimation(745, 10, 2));
        assert_eq!(decimation(5, 1, 0), vec![0, 1, 2, 3, 4]);
    }
}
