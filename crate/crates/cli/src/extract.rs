use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use shapesuite::descriptors::{byte_code, FeatureVector, StraightnessConfig};
use shapesuite::io::{read_gray_image, read_label_image};
use shapesuite::skeleton::SkeletonConfig;
use shapesuite::{extract_features, Connectivity, FeatureConfig, RegionOptions};

use crate::config::FileConfig;
use crate::output;

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Label raster (PGM or single-channel PNG).
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Gray raster of the same size; enables the DMP column.
    #[arg(long)]
    gray: Option<PathBuf>,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Straightness angle threshold in degrees [default: 15].
    #[arg(long)]
    straightness_angle: Option<f64>,
    /// Straightness scales [default: 1,2,4,8,16,32].
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<u32>>,
    /// Number of morphological profile scales [default: 6].
    #[arg(long)]
    dmp_depth: Option<usize>,
    /// Longest terminal skeleton branch to prune, in pixels [default: 1].
    #[arg(long)]
    skeleton_filter: Option<f64>,
    /// Region connectivity, 4 or 8 [default: 8].
    #[arg(long)]
    connectivity: Option<u8>,
    /// Treat label 0 as a region population too.
    #[arg(long)]
    all_labels: bool,
    /// Write [0, 1] columns as bytes 0..=255.
    #[arg(long)]
    byte_code: bool,
}

pub fn run(args: ExtractArgs, file: &FileConfig) -> Result<()> {
    let labels_path = args.labels.or(file.labels.clone()).context("--labels is required")?;
    let gray_path = args.gray.or(file.gray.clone());
    let out = args.out.or(file.out.clone());
    let defaults = StraightnessConfig::default();
    let connectivity = Connectivity::from_number(args.connectivity.or(file.connectivity).unwrap_or(8))?;
    let all_labels = args.all_labels || file.all_labels.unwrap_or(false);
    let byte = args.byte_code || file.byte_code.unwrap_or(false);
    let cfg = FeatureConfig {
        straightness: StraightnessConfig {
            angle_threshold_deg: args
                .straightness_angle
                .or(file.straightness_angle)
                .unwrap_or(defaults.angle_threshold_deg),
            scales: args.scales.or(file.scales.clone()).unwrap_or(defaults.scales),
        },
        skeleton: SkeletonConfig {
            filter_param: args.skeleton_filter.or(file.skeleton_filter).unwrap_or(1.0),
            ..SkeletonConfig::default()
        },
        dmp_depth: args.dmp_depth.or(file.dmp_depth).unwrap_or(6),
        regions: RegionOptions {
            connectivity,
            background: if all_labels { None } else { Some(0) },
        },
        ..FeatureConfig::default()
    };
    cfg.validate()?;

    let labels = read_label_image(&labels_path).with_context(|| format!("reading {}", labels_path.display()))?;
    let gray = gray_path
        .as_ref()
        .map(|p| read_gray_image(p).with_context(|| format!("reading {}", p.display())))
        .transpose()?;
    let rows = extract_features(&labels, gray.as_ref(), &cfg)?;

    let mut buf = Vec::new();
    let scales: Vec<String> = cfg.straightness.scales.iter().map(u32::to_string).collect();
    writeln!(
        buf,
        "# shapesuite extract: straightness_angle={} scales={} dmp_depth={} skeleton_filter={} medial_radius={} \
         connectivity={} all_labels={} byte_code={} separation_min={} right_angle_band={}-{} dmp=mean-abs gray={}",
        cfg.straightness.angle_threshold_deg,
        scales.join(","),
        cfg.dmp_depth,
        cfg.skeleton.filter_param,
        cfg.skeleton.medial_radius,
        match connectivity {
            Connectivity::Four => 4,
            Connectivity::Eight => 8,
        },
        all_labels,
        byte,
        cfg.fuzzy.separation_min,
        cfg.fuzzy.right_angle_band.0,
        cfg.fuzzy.right_angle_band.1,
        gray.is_some(),
    )?;
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(FeatureVector::COLUMNS)?;
        for f in &rows {
            w.write_record(record(f, byte))?;
        }
        w.flush()?;
    }
    output::emit(out.as_deref(), &buf)
}

fn record(f: &FeatureVector, byte: bool) -> Vec<String> {
    FeatureVector::COLUMNS
        .iter()
        .map(|&col| match col {
            "label" => f.label.to_string(),
            "area" => f.area.to_string(),
            "flags" => f.flags.to_string(),
            _ => match f.value(col) {
                None => String::new(),
                Some(v) if byte && FeatureVector::UNIT_RANGE.contains(&col) => byte_code(v).to_string(),
                Some(v) => v.to_string(),
            },
        })
        .collect()
}
