//! Synthetic test scenes with known geometry.
//!
//! Each shape is drawn into its own cell of a grid, separated by background,
//! and labelled 1, 2, … in drawing order. The gray companion gives every
//! shape a distinct brightness over a dark, slightly noisy background.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::morphology::GrayImage;
use crate::raster::{BinaryMask, LabelImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeSet {
    /// Solid n×n squares, n ∈ {1, 2, 4, 8, 16}.
    Squares,
    /// Axis-aligned bars of several widths.
    Bars,
    /// Squares and disks with one central hole.
    Donuts,
    /// L, T and cross shapes.
    Shapes,
    /// A 30×10 rectangle at 0, 15, …, 165 degrees.
    Rotrects,
    /// Digital disks of several radii.
    Disks,
    /// Everything above.
    Suite,
}

impl ShapeSet {
    pub const ALL: [ShapeSet; 7] = [
        Self::Squares,
        Self::Bars,
        Self::Donuts,
        Self::Shapes,
        Self::Rotrects,
        Self::Disks,
        Self::Suite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Squares => "squares",
            Self::Bars => "bars",
            Self::Donuts => "donuts",
            Self::Shapes => "shapes",
            Self::Rotrects => "rotrects",
            Self::Disks => "disks",
            Self::Suite => "suite",
        }
    }
}

impl fmt::Display for ShapeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|set| set.name() == s)
            .ok_or_else(|| param(format!("unknown shape set `{s}`")))
    }
}

/// What is known about a generated shape by construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundTruth {
    pub label: u32,
    pub kind: String,
    pub area: usize,
    pub hole_count: usize,
    /// Long-axis angle in degrees for elongated shapes drawn at an angle.
    pub orientation_deg: Option<f64>,
    /// Exact roundness where it follows from the construction.
    pub roundness: Option<f64>,
    pub convexity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthScene {
    pub labels: LabelImage,
    pub gray: GrayImage,
    pub truth: Vec<GroundTruth>,
}

struct Shape {
    kind: String,
    mask: BinaryMask,
    hole_count: usize,
    orientation_deg: Option<f64>,
    roundness: Option<f64>,
    convexity: Option<f64>,
}

fn mask_from(w: usize, h: usize, f: impl Fn(usize, usize) -> bool) -> BinaryMask {
    let mut m = BinaryMask::new(w, h);
    for r in 0..h {
        for c in 0..w {
            if f(r, c) {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Pixels whose centres lie within `radius` of the grid centre.
pub fn disk_mask(radius: f64) -> BinaryMask {
    let size = 2 * radius.ceil() as usize + 1;
    let mid = size as f64 / 2.0;
    mask_from(size, size, |r, c| {
        (r as f64 + 0.5 - mid).powi(2) + (c as f64 + 0.5 - mid).powi(2) <= radius * radius
    })
}

/// Pixels whose centres lie inside a `length`×`width` rectangle turned by
/// `angle_deg` (counter-clockwise as displayed).
pub fn rotated_rect_mask(length: f64, width: f64, angle_deg: f64) -> BinaryMask {
    let size = (length.hypot(width)).ceil() as usize + 3;
    let mid = size as f64 / 2.0;
    let (s, c) = angle_deg.to_radians().sin_cos();
    mask_from(size, size, |r, col| {
        let x = col as f64 + 0.5 - mid;
        let y = mid - (r as f64 + 0.5);
        let u = x * c + y * s;
        let v = -x * s + y * c;
        u.abs() <= length / 2.0 && v.abs() <= width / 2.0
    })
}

fn shapes_of(set: ShapeSet) -> Vec<Shape> {
    let plain = |kind: String, mask: BinaryMask| Shape {
        kind,
        mask,
        hole_count: 0,
        orientation_deg: None,
        roundness: None,
        convexity: None,
    };
    match set {
        ShapeSet::Squares => [1usize, 2, 4, 8, 16]
            .into_iter()
            .map(|n| Shape {
                roundness: Some(1.0),
                convexity: Some(1.0),
                ..plain(format!("square-{n}"), mask_from(n, n, |_, _| true))
            })
            .collect(),
        ShapeSet::Bars => [(9usize, 1usize), (30, 3), (20, 2), (40, 4), (15, 5)]
            .into_iter()
            .map(|(l, w)| Shape {
                convexity: Some(1.0),
                roundness: Some((4.0 * ((l * w) as f64).sqrt() / (2 * (l + w)) as f64).min(1.0)),
                ..plain(format!("bar-{l}x{w}"), mask_from(l, w, |_, _| true))
            })
            .collect(),
        ShapeSet::Donuts => {
            let mut out: Vec<Shape> = [(3usize, 1usize), (7, 3), (11, 5)]
                .into_iter()
                .map(|(outer, inner)| {
                    let lo = (outer - inner) / 2;
                    let a = outer * outer - inner * inner;
                    Shape {
                        hole_count: 1,
                        convexity: Some(a as f64 / (outer * outer) as f64),
                        ..plain(
                            format!("square-donut-{outer}-{inner}"),
                            mask_from(outer, outer, |r, c| !((lo..lo + inner).contains(&r) && (lo..lo + inner).contains(&c))),
                        )
                    }
                })
                .collect();
            for (outer, inner) in [(10.0, 5.0), (15.0, 6.0)] {
                let d = disk_mask(outer);
                let size = d.width();
                let mid = size as f64 / 2.0;
                let m = mask_from(size, size, |r, c| {
                    d.get(r, c) && (r as f64 + 0.5 - mid).powi(2) + (c as f64 + 0.5 - mid).powi(2) > inner * inner
                });
                out.push(Shape {
                    hole_count: 1,
                    ..plain(format!("disk-donut-{outer}-{inner}"), m)
                });
            }
            out
        }
        ShapeSet::Shapes => {
            let mut out = Vec::new();
            for t in [3usize, 5] {
                let n = 6 * t;
                out.push(plain(format!("ell-{t}"), mask_from(n, n, |r, c| c < t || r >= n - t)));
                out.push(plain(format!("tee-{t}"), mask_from(n, n, |r, c| r < t || (c >= (n - t) / 2 && c < (n + t) / 2))));
                out.push(plain(
                    format!("cross-{t}"),
                    mask_from(n, n, |r, c| (r >= (n - t) / 2 && r < (n + t) / 2) || (c >= (n - t) / 2 && c < (n + t) / 2)),
                ));
            }
            out
        }
        ShapeSet::Rotrects => (0..12)
            .map(|i| {
                let a = 15.0 * i as f64;
                Shape {
                    orientation_deg: Some(a),
                    ..plain(format!("rotrect-{a}"), rotated_rect_mask(30.0, 10.0, a))
                }
            })
            .collect(),
        ShapeSet::Disks => [3.0, 5.0, 8.0, 12.0, 20.0]
            .into_iter()
            .map(|r| plain(format!("disk-{r}"), disk_mask(r)))
            .collect(),
        ShapeSet::Suite => ShapeSet::ALL[..6].iter().flat_map(|&s| shapes_of(s)).collect(),
    }
}

const MARGIN: usize = 3;

/// Draws `set` into a grid scene; `seed` drives the gray-level noise only.
pub fn synth_scene(set: ShapeSet, seed: u64) -> Result<SynthScene> {
    let shapes = shapes_of(set);
    let cell = shapes.iter().map(|s| s.mask.width().max(s.mask.height())).max().unwrap_or(1) + 2 * MARGIN;
    let cols = (shapes.len() as f64).sqrt().ceil() as usize;
    let rows = shapes.len().div_ceil(cols);
    let (w, h) = (cols * cell, rows * cell);
    let mut labels = LabelImage::filled(w, h, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gray = GrayImage::from_fn(w, h, |_, _| 20 + rng.random_range(0..8))?;
    let mut truth = Vec::with_capacity(shapes.len());
    for (i, s) in shapes.into_iter().enumerate() {
        let label = i as u32 + 1;
        let (r0, c0) = ((i / cols) * cell + MARGIN, (i % cols) * cell + MARGIN);
        let level = 80 + ((label * 53) % 170) as u16;
        for (r, c) in s.mask.pixels() {
            labels.set(r0 + r, c0 + c, label);
            gray.set(r0 + r, c0 + c, level + rng.random_range(0..4));
        }
        truth.push(GroundTruth {
            label,
            kind: s.kind,
            area: s.mask.count(),
            hole_count: s.hole_count,
            orientation_deg: s.orientation_deg,
            roundness: s.roundness,
            convexity: s.convexity,
        });
    }
    Ok(SynthScene { labels, gray, truth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptors::{extract_features, FeatureConfig};
    use crate::raster::{extract_regions, RegionOptions};

    #[test]
    fn names_round_trip() {
        for s in ShapeSet::ALL {
            assert_eq!(s.name().parse::<ShapeSet>().unwrap(), s);
        }
        assert!("blobs".parse::<ShapeSet>().is_err());
    }

    #[test]
    fn suite_regions_match_truth() {
        let scene = synth_scene(ShapeSet::Suite, 7).unwrap();
        let regions = extract_regions(&scene.labels, &RegionOptions::default());
        assert_eq!(regions.len(), scene.truth.len());
        assert!(scene.truth.len() >= 30);
        for (r, t) in regions.iter().zip(&scene.truth) {
            assert_eq!(r.label(), t.label);
            assert_eq!(r.area(), t.area, "{}", t.kind);
            assert_eq!(r.hole_count(), t.hole_count, "{}", t.kind);
        }
    }

    #[test]
    fn known_values_hold() {
        for set in [ShapeSet::Squares, ShapeSet::Bars, ShapeSet::Donuts] {
            let scene = synth_scene(set, 0).unwrap();
            let feats = extract_features(&scene.labels, None, &FeatureConfig::default()).unwrap();
            for (f, t) in feats.iter().zip(&scene.truth) {
                if let Some(v) = t.roundness {
                    assert_eq!(f.rndnss_and_no_hole, v, "{}", t.kind);
                }
                if let Some(v) = t.convexity {
                    assert_eq!(f.cnvxty_and_no_hole, v, "{}", t.kind);
                }
            }
        }
    }

    #[test]
    fn rotated_rectangles_recover_their_angle() {
        let scene = synth_scene(ShapeSet::Rotrects, 0).unwrap();
        let feats = extract_features(&scene.labels, None, &FeatureConfig::default()).unwrap();
        for (f, t) in feats.iter().zip(&scene.truth) {
            let want = t.orientation_deg.unwrap();
            let diff = (f.mer_angle_deg - want).rem_euclid(180.0);
            let diff = diff.min(180.0 - diff);
            assert!(diff <= 4.0, "{}: {}", t.kind, f.mer_angle_deg);
        }
    }

    #[test]
    fn same_seed_same_scene() {
        assert_eq!(synth_scene(ShapeSet::Disks, 3).unwrap(), synth_scene(ShapeSet::Disks, 3).unwrap());
        assert_ne!(synth_scene(ShapeSet::Disks, 3).unwrap().gray, synth_scene(ShapeSet::Disks, 4).unwrap().gray);
    }
}
