use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

/// Settings read from `--config`. Keys mirror the long flags with `_` for
/// `-`. Command-line flags override them.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub labels: Option<PathBuf>,
    pub gray: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub straightness_angle: Option<f64>,
    pub scales: Option<Vec<u32>>,
    pub dmp_depth: Option<usize>,
    pub skeleton_filter: Option<f64>,
    pub connectivity: Option<u8>,
    pub all_labels: Option<bool>,
    pub byte_code: Option<bool>,
    pub alpha: Option<f64>,
    pub srcc_strong: Option<f64>,
    pub decimate: Option<usize>,
    pub seed: Option<u64>,
    pub columns: Option<Vec<String>>,
    pub set: Option<String>,
    pub scale: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}
