use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use shapesuite::io::{write_gray_png, write_label_png};
use shapesuite::synth::{synth_scene, ShapeSet, SynthScene};
use shapesuite::{GrayImage, LabelImage};

use crate::config::FileConfig;

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// squares, bars, donuts, shapes, rotrects, disks or suite [default: suite].
    #[arg(long)]
    set: Option<String>,
    /// Output directory for labels.png, gray.png and truth.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the gray-level noise [default: 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Pixel replication factor [default: 1].
    #[arg(long)]
    scale: Option<usize>,
}

pub fn run(args: SynthArgs, file: &FileConfig) -> Result<()> {
    let set: ShapeSet = args.set.or(file.set.clone()).as_deref().unwrap_or("suite").parse()?;
    let dir = args.out.or(file.out.clone()).context("--out is required")?;
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let scale = args.scale.or(file.scale).unwrap_or(1);
    if scale == 0 {
        bail!("--scale must be at least 1");
    }
    let scene = upscale(synth_scene(set, seed)?, scale)?;
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    write_label_png(dir.join("labels.png"), &scene.labels)?;
    write_gray_png(dir.join("gray.png"), &scene.gray)?;
    let mut json = serde_json::to_vec_pretty(&serde_json::json!({
        "set": set.name(),
        "seed": seed,
        "scale": scale,
        "shapes": scene.truth,
    }))?;
    json.push(b'\n');
    std::fs::write(dir.join("truth.json"), json)?;
    Ok(())
}

fn upscale(mut scene: SynthScene, k: usize) -> Result<SynthScene> {
    if k == 1 {
        return Ok(scene);
    }
    let (w, h) = (scene.labels.width() * k, scene.labels.height() * k);
    let labels = LabelImage::from_fn(w, h, |r, c| scene.labels.get(r / k, c / k))?;
    let gray = GrayImage::from_fn(w, h, |r, c| scene.gray.get(r / k, c / k))?;
    for t in &mut scene.truth {
        t.area *= k * k;
    }
    Ok(SynthScene {
        labels,
        gray,
        truth: scene.truth,
    })
}
