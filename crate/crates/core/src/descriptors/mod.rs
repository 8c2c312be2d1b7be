//! The seven shape descriptors, plus area and MER orientation, per region.
//!
//! Every order-dependent quantity (boundary walk, hull, polygon, skeleton)
//! is computed on the region's canonical mask: the lexicographically
//! smallest of its eight dihedral images. Descriptors are therefore exactly
//! invariant under quarter turns and reflections, and the MER direction is
//! mapped back to image coordinates afterwards.

mod fuzzy;
mod straightness;

use std::fmt;

use bitflags::bitflags;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use fuzzy::{fuzzy_rectangularity, interior_angles, pi_membership, s_membership, z_membership, FuzzyRectConfig};
pub use straightness::{straightness, StraightnessConfig, StraightnessResult};

use crate::error::{param, Result};
use crate::geometry::{
    convex_hull, direction_angle_deg, discretize_hull_area, min_enclosing_rect, rdp_simplify, Point, PolyChain,
};
use crate::morphology::{dmp, multiscale_characteristic, segment_average_characteristic, CharacteristicMap, GrayImage};
use crate::raster::{
    analyze_mask, extract_regions, trace_mask_boundary, BinaryMask, Dihedral, LabelImage, Region, RegionOptions,
};
use crate::skeleton::{distance_transform, euclidean_skeleton, skeleton_metrics, SkeletonConfig};

bitflags! {
    /// Degeneracies met while computing a feature vector.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
    pub struct FeatureFlags: u32 {
        /// Single-cell hull: MER fields are zero.
        const MER_DEGENERATE = 1;
        /// MER width equals length; the angle is defined modulo 90.
        const MER_SQUARE_TIE = 1 << 1;
        /// Collinear or single-point convex hull.
        const HULL_DEGENERATE = 1 << 2;
        /// Boundary too short for every straightness scale.
        const STRAIGHTNESS_SKIPPED = 1 << 3;
        /// Simplified polygon has fewer than three vertices.
        const POLYGON_DEGENERATE = 1 << 4;
        /// Raw elongatedness was below 1 and was floored.
        const ELONGATEDNESS_FLOORED = 1 << 5;
        /// Longest skeleton path found heuristically on a cyclic skeleton.
        const PATH_HEURISTIC = 1 << 6;
        /// No gray image supplied.
        const DMP_ABSENT = 1 << 7;
        /// Characteristic scales of mixed sign inside the segment.
        const DMP_MIXED_SIGNS = 1 << 8;
    }
}

impl fmt::Display for FeatureFlags {
    /// Lower-case flag names joined by `|`; empty when no flag is set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter_names().map(|(n, _)| n.to_ascii_lowercase()).collect();
        f.write_str(&names.join("|"))
    }
}

impl FeatureFlags {
    /// Inverse of the `Display` form.
    pub fn parse_names(s: &str) -> Result<Self> {
        let mut out = Self::empty();
        for name in s.split('|').filter(|n| !n.is_empty()) {
            let flag = Self::from_name(&name.to_ascii_uppercase())
                .ok_or_else(|| param(format!("unknown feature flag `{name}`")))?;
            out |= flag;
        }
        Ok(out)
    }
}

/// All descriptor parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub straightness: StraightnessConfig,
    pub fuzzy: FuzzyRectConfig,
    pub skeleton: SkeletonConfig,
    /// Number of opening and closing scales in the morphological profile.
    pub dmp_depth: usize,
    pub regions: RegionOptions,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        Self {
            straightness: StraightnessConfig::default(),
            fuzzy: FuzzyRectConfig::default(),
            skeleton: SkeletonConfig::default(),
            dmp_depth: 6,
            regions: RegionOptions::default(),
        }
    }
}

impl FeatureConfig {
    pub fn validate(&self) -> Result<()> {
        self.straightness.validate()?;
        self.fuzzy.validate()?;
        if self.skeleton.filter_param.is_nan() || self.skeleton.filter_param < 0.0 {
            return Err(param("skeleton filter must be non-negative"));
        }
        if self.skeleton.medial_radius.is_nan() || self.skeleton.medial_radius <= 0.0 {
            return Err(param("medial radius must be positive"));
        }
        if self.dmp_depth == 0 {
            return Err(param("DMP depth must be at least 1"));
        }
        Ok(())
    }
}

/// Descriptors of one region. Field names match the CSV columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub label: u32,
    pub area: usize,
    pub mer_angle_deg: f64,
    pub mer_w: f64,
    pub mer_l: f64,
    pub cnvxty_and_no_hole: f64,
    pub fuzzy_rule_bsd_rctnglrty: f64,
    pub rndnss_and_no_hole: f64,
    pub mlt_scl_strghtns_of_bndrs: f64,
    pub dmp_mlt_scl_chrctrstc: Option<f64>,
    pub elngtdnss_and_no_hole: f64,
    pub elngtdnss_nm: f64,
    pub smpl_cnctvty_4adjncy: f64,
    pub filled_area_ratio: f64,
    pub combnd_smpl_cnctvty: f64,
    #[serde(skip)]
    pub straightness_per_scale: Vec<(u32, f64)>,
    #[serde(skip)]
    pub flags: FeatureFlags,
}

impl FeatureVector {
    /// CSV header in output order.
    pub const COLUMNS: [&'static str; 16] = [
        "label",
        "area",
        "mer_angle_deg",
        "mer_w",
        "mer_l",
        "cnvxty_and_no_hole",
        "fuzzy_rule_bsd_rctnglrty",
        "rndnss_and_no_hole",
        "mlt_scl_strghtns_of_bndrs",
        "dmp_mlt_scl_chrctrstc",
        "elngtdnss_and_no_hole",
        "elngtdnss_nm",
        "smpl_cnctvty_4adjncy",
        "filled_area_ratio",
        "combnd_smpl_cnctvty",
        "flags",
    ];

    /// Names of the seven validated descriptors.
    pub const DESCRIPTORS: [&'static str; 7] = [
        "cnvxty_and_no_hole",
        "fuzzy_rule_bsd_rctnglrty",
        "rndnss_and_no_hole",
        "mlt_scl_strghtns_of_bndrs",
        "dmp_mlt_scl_chrctrstc",
        "elngtdnss_and_no_hole",
        "combnd_smpl_cnctvty",
    ];

    /// Columns holding values in `[0, 1]`, eligible for byte coding.
    pub const UNIT_RANGE: [&'static str; 7] = [
        "cnvxty_and_no_hole",
        "fuzzy_rule_bsd_rctnglrty",
        "rndnss_and_no_hole",
        "mlt_scl_strghtns_of_bndrs",
        "smpl_cnctvty_4adjncy",
        "filled_area_ratio",
        "combnd_smpl_cnctvty",
    ];

    /// Numeric value of a named column; `None` for unknown names, `flags`,
    /// and an absent DMP value.
    pub fn value(&self, column: &str) -> Option<f64> {
        Some(match column {
            "label" => self.label as f64,
            "area" => self.area as f64,
            "mer_angle_deg" => self.mer_angle_deg,
            "mer_w" => self.mer_w,
            "mer_l" => self.mer_l,
            "cnvxty_and_no_hole" => self.cnvxty_and_no_hole,
            "fuzzy_rule_bsd_rctnglrty" => self.fuzzy_rule_bsd_rctnglrty,
            "rndnss_and_no_hole" => self.rndnss_and_no_hole,
            "mlt_scl_strghtns_of_bndrs" => self.mlt_scl_strghtns_of_bndrs,
            "dmp_mlt_scl_chrctrstc" => return self.dmp_mlt_scl_chrctrstc,
            "elngtdnss_and_no_hole" => self.elngtdnss_and_no_hole,
            "elngtdnss_nm" => self.elngtdnss_nm,
            "smpl_cnctvty_4adjncy" => self.smpl_cnctvty_4adjncy,
            "filled_area_ratio" => self.filled_area_ratio,
            "combnd_smpl_cnctvty" => self.combnd_smpl_cnctvty,
            _ => return None,
        })
    }
}

/// Quantizes a `[0, 1]` value to a byte, with error at most `1/510`.
pub fn byte_code(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

pub fn byte_decode(b: u8) -> f64 {
    b as f64 / 255.0
}

/// Area over discretized convex hull area.
pub fn convexity(area: usize, a_convex: usize) -> f64 {
    if a_convex == 0 {
        return 0.0;
    }
    (area as f64 / a_convex as f64).min(1.0)
}

/// `4 sqrt(A) / PL`, capped at 1.
pub fn roundness(area: usize, pl_total: usize) -> f64 {
    if pl_total == 0 {
        return 0.0;
    }
    (4.0 * (area as f64).sqrt() / pl_total as f64).min(1.0)
}

/// Length over width, floored at 1. The flag reports a floor.
pub fn elongatedness_ratio(length: f64, width: f64) -> (f64, bool) {
    let raw = if width > 0.0 { length / width } else { 0.0 };
    if raw < 1.0 {
        (1.0, true)
    } else {
        (raw, false)
    }
}

/// Unfloored length over width of the longest skeleton path.
pub fn elongatedness_nm_ratio(length: f64, width: f64) -> f64 {
    if width > 0.0 {
        length / width
    } else {
        0.0
    }
}

/// Fuzzy AND of the two simple-connectivity terms.
pub fn combine_simple_connectivity(adjacency: f64, filled_ratio: f64) -> f64 {
    adjacency.min(filled_ratio)
}

/// `(pl_external / pl_total, area / filled_area, their minimum)`.
pub fn simple_connectivity(region: &Region) -> (f64, f64, f64) {
    let t1 = region.pl_external() as f64 / region.pl_total() as f64;
    let t2 = region.area() as f64 / region.filled_area() as f64;
    (t1, t2, combine_simple_connectivity(t1, t2))
}

/// The dihedral transform taking `mask` to its canonical form, and that form.
/// Ties between symmetric images go to the first transform in
/// [`Dihedral::all`] order.
pub fn canonical_frame(mask: &BinaryMask) -> (Dihedral, BinaryMask) {
    let mut best: Option<(Dihedral, BinaryMask)> = None;
    for t in Dihedral::all() {
        let m = mask.transformed(t);
        if best.as_ref().is_none_or(|(_, b)| m < *b) {
            best = Some((t, m));
        }
    }
    best.expect("eight candidates")
}

fn walk_points(mask: &BinaryMask) -> Vec<Point> {
    trace_mask_boundary(mask).into_iter().map(|(r, c)| (r as i64, c as i64)).collect()
}

/// Computes every descriptor of `region`. The DMP field is filled when a
/// characteristic map of the whole image is supplied.
pub fn compute_features(region: &Region, cmap: Option<&CharacteristicMap>, cfg: &FeatureConfig) -> FeatureVector {
    let mut flags = FeatureFlags::empty();
    let (t, canon) = canonical_frame(region.mask());
    let walk = walk_points(&canon);

    let hull = convex_hull(&walk);
    if hull.degenerate {
        flags |= FeatureFlags::HULL_DEGENERATE;
    }
    let a_convex = discretize_hull_area(&hull);
    let mer = min_enclosing_rect(&hull);
    if mer.degenerate {
        flags |= FeatureFlags::MER_DEGENERATE;
    }
    if mer.square_tie {
        flags |= FeatureFlags::MER_SQUARE_TIE;
    }
    let mer_angle_deg = if mer.degenerate {
        0.0
    } else {
        direction_angle_deg(t.inverse().map_vector(mer.direction))
    };

    let st = straightness(&walk, &cfg.straightness);
    if st.all_skipped {
        flags |= FeatureFlags::STRAIGHTNESS_SKIPPED;
    }
    let polygon = rdp_simplify(&PolyChain::closed(walk), st.best_scale as f64)
        .map(|p| p.vertices)
        .unwrap_or_default();
    if polygon.len() < 3 {
        flags |= FeatureFlags::POLYGON_DEGENERATE;
    }
    let rect = fuzzy_rectangularity(&polygon, &cfg.fuzzy);

    let df = distance_transform(&canon);
    let skel = euclidean_skeleton(&canon, &df, &cfg.skeleton);
    let m = skeleton_metrics(&skel, &df);
    let (elong, floored) = elongatedness_ratio(m.l_total as f64, m.w_avg);
    if floored {
        flags |= FeatureFlags::ELONGATEDNESS_FLOORED;
    }

    let topo = analyze_mask(&canon, region.connectivity());
    let mut filled = canon.clone();
    for r in 0..filled.height() {
        for c in 0..filled.width() {
            if topo.is_hole(r, c) {
                filled.set(r, c, true);
            }
        }
    }
    let fdf = distance_transform(&filled);
    let fskel = euclidean_skeleton(&filled, &fdf, &cfg.skeleton);
    let fm = skeleton_metrics(&fskel, &fdf);
    if fm.path_heuristic {
        flags |= FeatureFlags::PATH_HEURISTIC;
    }
    let elong_nm = elongatedness_nm_ratio(fm.l_longest as f64, fm.w_longest_avg);

    let dmp_value = match cmap {
        None => {
            flags |= FeatureFlags::DMP_ABSENT;
            None
        }
        Some(map) => match segment_average_characteristic(map, &region.pixels()) {
            Ok(s) => {
                if s.mixed_signs {
                    flags |= FeatureFlags::DMP_MIXED_SIGNS;
                }
                Some(s.mean_abs)
            }
            Err(_) => {
                flags |= FeatureFlags::DMP_ABSENT;
                None
            }
        },
    };

    let (t1, t2, combined) = simple_connectivity(region);
    FeatureVector {
        label: region.label(),
        area: region.area(),
        mer_angle_deg,
        mer_w: mer.width,
        mer_l: mer.length,
        cnvxty_and_no_hole: convexity(region.area(), a_convex),
        fuzzy_rule_bsd_rctnglrty: rect,
        rndnss_and_no_hole: roundness(region.area(), region.pl_total()),
        mlt_scl_strghtns_of_bndrs: st.value,
        dmp_mlt_scl_chrctrstc: dmp_value,
        elngtdnss_and_no_hole: elong,
        elngtdnss_nm: elong_nm,
        smpl_cnctvty_4adjncy: t1,
        filled_area_ratio: t2,
        combnd_smpl_cnctvty: combined,
        straightness_per_scale: st.per_scale,
        flags,
    }
}

/// Extracts every region of `labels` and computes its features in parallel.
/// Output order is the region order of [`extract_regions`].
pub fn extract_features(labels: &LabelImage, gray: Option<&GrayImage>, cfg: &FeatureConfig) -> Result<Vec<FeatureVector>> {
    cfg.validate()?;
    let cmap = match gray {
        Some(g) => {
            if (g.width(), g.height()) != (labels.width(), labels.height()) {
                return Err(param(format!(
                    "gray image is {}x{} but label image is {}x{}",
                    g.width(),
                    g.height(),
                    labels.width(),
                    labels.height()
                )));
            }
            Some(multiscale_characteristic(&dmp(g, cfg.dmp_depth)?))
        }
        None => None,
    };
    let regions = extract_regions(labels, &cfg.regions);
    Ok(regions.par_iter().map(|r| compute_features(r, cmap.as_ref(), cfg)).collect())
}

#[cfg(test)]
mod tests;
