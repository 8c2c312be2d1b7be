use rayon::prelude::*;

use super::{closing_by_reconstruction, opening_by_reconstruction, GrayImage};
use crate::error::{param, Result};
use crate::raster::Pixel;

/// Structuring-element sizes `0, 1, 3, 5, 9, ...` (`2^(i-1) + 1` from the
/// third on) for a profile of depth `n`.
pub fn dmp_scales(n: usize) -> Vec<u32> {
    (0..=n)
        .map(|i| match i {
            0 => 0,
            1 => 1,
            _ => (1u32 << (i - 1)) + 1,
        })
        .collect()
}

/// Opening and closing profiles over a scale sequence. Derivatives are kept
/// as exact integer numerators over integer scale gaps.
#[derive(Debug, Clone)]
pub struct MorphProfileStack {
    scales: Vec<u32>,
    opening: Vec<GrayImage>,
    closing: Vec<GrayImage>,
}

impl MorphProfileStack {
    pub fn scales(&self) -> &[u32] {
        &self.scales
    }

    /// Opening by reconstruction at scale index `i`.
    pub fn opening(&self, i: usize) -> &GrayImage {
        &self.opening[i]
    }

    pub fn closing(&self, i: usize) -> &GrayImage {
        &self.closing[i]
    }

    pub fn width(&self) -> usize {
        self.opening[0].width()
    }

    pub fn height(&self) -> usize {
        self.opening[0].height()
    }

    fn gap(&self, i: usize) -> u32 {
        self.scales[i] - self.scales[i - 1]
    }

    fn diff(profile: &[GrayImage], i: usize, p: usize) -> u32 {
        (profile[i].data()[p] as i32 - profile[i - 1].data()[p] as i32).unsigned_abs()
    }

    /// Opening-profile derivative at scale index `i >= 1` for pixel index `p`.
    pub fn d_open(&self, i: usize, p: usize) -> f64 {
        Self::diff(&self.opening, i, p) as f64 / self.gap(i) as f64
    }

    /// Closing-profile derivative at scale index `i >= 1` for pixel index `p`.
    pub fn d_close(&self, i: usize, p: usize) -> f64 {
        Self::diff(&self.closing, i, p) as f64 / self.gap(i) as f64
    }

    /// First scale index maximizing the derivative, with the maximum as an
    /// exact fraction `(numerator, gap)`.
    fn peak(&self, profile: &[GrayImage], p: usize) -> (usize, u32, u32) {
        let mut best = (1, Self::diff(profile, 1, p), self.gap(1));
        for i in 2..self.scales.len() {
            let (num, gap) = (Self::diff(profile, i, p), self.gap(i));
            if num as u64 * best.2 as u64 > best.1 as u64 * gap as u64 {
                best = (i, num, gap);
            }
        }
        best
    }
}

/// Differential morphological profile of depth `n >= 1`. Scales are
/// computed in parallel.
pub fn dmp(img: &GrayImage, n: usize) -> Result<MorphProfileStack> {
    if n == 0 {
        return Err(param("profile depth must be at least 1"));
    }
    let scales = dmp_scales(n);
    let (opening, closing): (Vec<_>, Vec<_>) = scales
        .par_iter()
        .map(|&l| (opening_by_reconstruction(img, l), closing_by_reconstruction(img, l)))
        .unzip();
    Ok(MorphProfileStack {
        scales,
        opening,
        closing,
    })
}

/// Per-pixel signed characteristic scale: `+λ` where the opening derivative
/// peaks higher, `-λ` where the closing derivative does, 0 on exact ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicMap {
    width: usize,
    height: usize,
    values: Vec<i32>,
}

impl CharacteristicMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> i32 {
        self.values[row * self.width + col]
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn from_values(width: usize, height: usize, values: Vec<i32>) -> Result<Self> {
        if values.len() != width * height {
            return Err(crate::Error::BufferSize {
                width,
                height,
                len: values.len(),
            });
        }
        Ok(Self { width, height, values })
    }
}

pub fn multiscale_characteristic(stack: &MorphProfileStack) -> CharacteristicMap {
    let (w, h) = (stack.width(), stack.height());
    let values = (0..w * h)
        .into_par_iter()
        .map(|p| {
            let (io, no, go) = stack.peak(&stack.opening, p);
            let (ic, nc, gc) = stack.peak(&stack.closing, p);
            let (lhs, rhs) = (no as u64 * gc as u64, nc as u64 * go as u64);
            match lhs.cmp(&rhs) {
                std::cmp::Ordering::Greater => stack.scales[io] as i32,
                std::cmp::Ordering::Less => -(stack.scales[ic] as i32),
                std::cmp::Ordering::Equal => 0,
            }
        })
        .collect();
    CharacteristicMap {
        width: w,
        height: h,
        values,
    }
}

/// Mean characteristic magnitude over a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentCharacteristic {
    /// Mean of `|Φ|` over the segment's pixels.
    pub mean_abs: f64,
    /// Both opening- and closing-dominant pixels occur.
    pub mixed_signs: bool,
}

/// Averages `|Φ|` over `pixels` (image coordinates).
pub fn segment_average_characteristic(cmap: &CharacteristicMap, pixels: &[Pixel]) -> Result<SegmentCharacteristic> {
    if pixels.is_empty() {
        return Err(param("segment has no pixels"));
    }
    let (mut sum, mut pos, mut neg) = (0u64, false, false);
    for &(r, c) in pixels {
        if r >= cmap.height || c >= cmap.width {
            return Err(param(format!("pixel ({r}, {c}) outside the characteristic map")));
        }
        let v = cmap.get(r, c);
        sum += v.unsigned_abs() as u64;
        pos |= v > 0;
        neg |= v < 0;
    }
    Ok(SegmentCharacteristic {
        mean_abs: sum as f64 / pixels.len() as f64,
        mixed_signs: pos && neg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_on(w: usize, fg: u16, bg: u16) -> GrayImage {
        GrayImage::from_fn(48, 48, |r, c| if (10..10 + w).contains(&r) && (10..10 + w).contains(&c) { fg } else { bg }).unwrap()
    }

    fn square_pixels(w: usize) -> Vec<Pixel> {
        (10..10 + w).flat_map(|r| (10..10 + w).map(move |c| (r, c))).collect()
    }

    #[test]
    fn scale_sequence() {
        assert_eq!(dmp_scales(4), vec![0, 1, 3, 5, 9]);
        assert_eq!(dmp_scales(6), vec![0, 1, 3, 5, 9, 17, 33]);
        assert!(dmp(&GrayImage::filled(2, 2, 0).unwrap(), 0).is_err());
    }

    #[test]
    fn flat_image_has_zero_derivatives_and_characteristic() {
        let img = GrayImage::filled(10, 10, 77).unwrap();
        let stack = dmp(&img, 4).unwrap();
        for i in 1..=4 {
            for p in 0..100 {
                assert_eq!(stack.d_open(i, p), 0.0);
                assert_eq!(stack.d_close(i, p), 0.0);
            }
        }
        assert!(multiscale_characteristic(&stack).values().iter().all(|&v| v == 0));
    }

    #[test]
    fn bright_square_peaks_at_first_covering_scale() {
        let img = square_on(5, 180, 20);
        let stack = dmp(&img, 6).unwrap();
        let p = 12 * 48 + 12;
        let best = (1..=6).max_by(|&a, &b| stack.d_open(a, p).total_cmp(&stack.d_open(b, p))).unwrap();
        assert_eq!(stack.scales()[best], 9);
    }

    #[test]
    fn bright_and_dark_squares_take_opposite_signs() {
        let cm = multiscale_characteristic(&dmp(&square_on(5, 180, 20), 6).unwrap());
        assert!(square_pixels(5).iter().all(|&(r, c)| cm.get(r, c) > 0));
        let cm = multiscale_characteristic(&dmp(&square_on(5, 20, 180), 6).unwrap());
        assert!(square_pixels(5).iter().all(|&(r, c)| cm.get(r, c) < 0));
    }

    #[test]
    fn segment_average_lies_in_the_dyadic_bracket() {
        let scales = dmp_scales(6);
        for w in [3usize, 5, 9] {
            let cm = multiscale_characteristic(&dmp(&square_on(w, 200, 0), 6).unwrap());
            let avg = segment_average_characteristic(&cm, &square_pixels(w)).unwrap();
            let i = scales.iter().rposition(|&l| l as usize <= w).unwrap();
            let (lo, hi) = (scales[i] as f64, scales[i + 1] as f64);
            assert!(lo <= avg.mean_abs && avg.mean_abs <= hi, "w={w} avg={}", avg.mean_abs);
            assert!(!avg.mixed_signs);
        }
    }

    #[test]
    fn segment_average_arithmetic() {
        let cm = CharacteristicMap::from_values(2, 2, vec![5, 5, 5, 5]).unwrap();
        let all = [(0, 0), (0, 1), (1, 0), (1, 1)];
        assert_eq!(segment_average_characteristic(&cm, &all).unwrap().mean_abs, 5.0);
        let cm = CharacteristicMap::from_values(2, 2, vec![1, -3, 1, 3]).unwrap();
        let avg = segment_average_characteristic(&cm, &all).unwrap();
        assert_eq!(avg.mean_abs, 2.0);
        assert!(avg.mixed_signs);
    }
}
