//! Intuitive 2D shape descriptors for labelled rasters, and a statistical
//! harness that checks a feature set for minimal inter-feature dependence.
//!
//! The pipeline reads a label image, splits it into connected [`Region`]s,
//! and computes one [`FeatureVector`] per region:
//!
//! ```
//! use shapesuite::{extract_features, FeatureConfig, LabelImage};
//!
//! // A 6x4 block labelled 1 inside a 10x8 image.
//! let labels = LabelImage::from_fn(10, 8, |r, c| u32::from((2..6).contains(&r) && (2..8).contains(&c)))?;
//! let rows = extract_features(&labels, None, &FeatureConfig::default())?;
//! assert_eq!(rows.len(), 1);
//! assert_eq!(rows[0].area, 24);
//! assert_eq!(rows[0].cnvxty_and_no_hole, 1.0);
//! # Ok::<(), shapesuite::Error>(())
//! ```
//!
//! Modules, bottom up: [`raster`] (regions, holes, perimeters, boundary
//! walks), [`geometry`] (hull, enclosing rectangle, polyline
//! simplification), [`skeleton`] (distance transform, skeleton, longest
//! path), [`morphology`] (reconstruction, morphological profiles, spatial
//! autocorrelation), [`descriptors`], [`stats`], plus [`io`] and [`synth`].

pub mod descriptors;
pub mod error;
pub mod geometry;
pub mod io;
pub mod morphology;
pub mod raster;
pub mod skeleton;
pub mod stats;
pub mod synth;

pub use descriptors::{compute_features, extract_features, FeatureConfig, FeatureFlags, FeatureVector};
pub use error::{Error, Result};
pub use morphology::GrayImage;
pub use raster::{extract_regions, BinaryMask, Connectivity, LabelImage, Region, RegionOptions};
pub use stats::{validate_feature_set, SampleMatrix, ValidationConfig, ValidationReport, Verdict};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/regions.md")]
    mod regions {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/skeleton.md")]
    mod skeleton {}
    #[doc = include_str!("../../../book/src/morphology.md")]
    mod morphology {}
    #[doc = include_str!("../../../book/src/descriptors.md")]
    mod descriptors {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
