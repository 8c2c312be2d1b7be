//! Grayscale morphology with square structuring elements, reconstruction,
//! differential morphological profiles and reference spatial
//! autocorrelation statistics.

mod dmp;
mod lisa;

pub use dmp::{
    dmp, dmp_scales, multiscale_characteristic, segment_average_characteristic, CharacteristicMap,
    MorphProfileStack, SegmentCharacteristic,
};
pub use lisa::{gearys_c, morans_i, reversed_gearys_c, SpatialStatistic, SpatialWeights};

use crate::error::{param, Error, Result};

/// Single-channel image with up to 16-bit intensities, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u16>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, data: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        if data.len() != width * height {
            return Err(Error::BufferSize {
                width,
                height,
                len: data.len(),
            });
        }
        Ok(Self { width, height, data })
    }

    pub fn filled(width: usize, height: usize, value: u16) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u16) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u16] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u16 {
        self.data[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u16) {
        self.data[row * self.width + col] = value;
    }

    pub fn max_value(&self) -> u16 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// `ceiling - value` at every pixel. Fails if a value exceeds `ceiling`.
    pub fn complement(&self, ceiling: u16) -> Result<GrayImage> {
        if self.max_value() > ceiling {
            return Err(param("complement ceiling below image maximum"));
        }
        Ok(self.map(|v| ceiling - v))
    }

    fn map(&self, f: impl Fn(u16) -> u16) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    fn same_shape(&self, other: &GrayImage) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(param(format!(
                "image sizes differ: {}x{} vs {}x{}",
                self.width, self.height, other.width, other.height
            )));
        }
        Ok(())
    }
}

/// Running min or max over windows of `2 * half + 1` samples (van Herk /
/// Gil-Werman), with samples beyond the ends ignored.
fn line_filter(src: &[u16], half: usize, op: fn(u16, u16) -> u16, neutral: u16, out: &mut [u16]) {
    let n = src.len();
    let k = 2 * half + 1;
    let len = n + 2 * half;
    let p = |j: usize| if j < half || j >= half + n { neutral } else { src[j - half] };
    let mut g = vec![neutral; len];
    let mut h = vec![neutral; len];
    for j in 0..len {
        g[j] = if j % k == 0 { p(j) } else { op(g[j - 1], p(j)) };
    }
    for j in (0..len).rev() {
        h[j] = if (j + 1) % k == 0 || j + 1 == len { p(j) } else { op(h[j + 1], p(j)) };
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o = op(h[i], g[i + k - 1]);
    }
}

fn separable(img: &GrayImage, half: usize, op: fn(u16, u16) -> u16, neutral: u16) -> GrayImage {
    if half == 0 {
        return img.clone();
    }
    let (w, h) = (img.width, img.height);
    let mut rows = vec![0u16; w * h];
    for r in 0..h {
        line_filter(&img.data[r * w..(r + 1) * w], half, op, neutral, &mut rows[r * w..(r + 1) * w]);
    }
    let mut out = vec![0u16; w * h];
    let mut col = vec![0u16; h];
    let mut res = vec![0u16; h];
    for c in 0..w {
        for r in 0..h {
            col[r] = rows[r * w + c];
        }
        line_filter(&col, half, op, neutral, &mut res);
        for r in 0..h {
            out[r * w + c] = res[r];
        }
    }
    GrayImage {
        width: w,
        height: h,
        data: out,
    }
}

/// Minimum over the `(2 * half_size + 1)`-wide square window. Pixels outside
/// the image are ignored.
pub fn erode_square(img: &GrayImage, half_size: usize) -> GrayImage {
    separable(img, half_size, std::cmp::min, u16::MAX)
}

/// Maximum over the `(2 * half_size + 1)`-wide square window. Pixels outside
/// the image are ignored.
pub fn dilate_square(img: &GrayImage, half_size: usize) -> GrayImage {
    separable(img, half_size, std::cmp::max, 0)
}

/// Half-width of the square structuring element of size `lambda` (its side
/// in pixels, even sizes rounded up to the next odd side). Sizes 0 and 1 are
/// the identity.
pub fn se_half_size(lambda: u32) -> usize {
    (lambda / 2) as usize
}

const N8: [(isize, isize); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

/// Grayscale reconstruction by dilation of `marker` under `mask`
/// (8-connected), by the downhill filter: pixels are finalized from the
/// highest grey level down, each passing its level (capped by the mask) to
/// unfinalized neighbours.
pub fn reconstruct_by_dilation(marker: &GrayImage, mask: &GrayImage) -> Result<GrayImage> {
    marker.same_shape(mask)?;
    if marker.data.iter().zip(&mask.data).any(|(a, b)| a > b) {
        return Err(param("reconstruction by dilation needs marker <= mask everywhere"));
    }
    let (w, h) = (marker.width, marker.height);
    let mut out = marker.data.clone();
    let top = marker.max_value() as usize;
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (i, &v) in out.iter().enumerate() {
        if v > 0 {
            lists[v as usize].push(i);
        }
    }
    let mut done = vec![false; w * h];
    for level in (1..=top).rev() {
        while let Some(i) = lists[level].pop() {
            if done[i] {
                continue;
            }
            done[i] = true;
            let (r, c) = (i / w, i % w);
            for (dr, dc) in N8 {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if nr < 0 || nc < 0 || nr as usize >= h || nc as usize >= w {
                    continue;
                }
                let j = nr as usize * w + nc as usize;
                if done[j] {
                    continue;
                }
                let v = (level as u16).min(mask.data[j]);
                if v > out[j] {
                    out[j] = v;
                    lists[v as usize].push(j);
                }
            }
        }
    }
    Ok(GrayImage {
        width: w,
        height: h,
        data: out,
    })
}

/// Grayscale reconstruction by erosion of `marker` over `mask`, the dual of
/// [`reconstruct_by_dilation`]. Requires `marker >= mask` everywhere.
pub fn reconstruct_by_erosion(marker: &GrayImage, mask: &GrayImage) -> Result<GrayImage> {
    marker.same_shape(mask)?;
    if marker.data.iter().zip(&mask.data).any(|(a, b)| a < b) {
        return Err(param("reconstruction by erosion needs marker >= mask everywhere"));
    }
    let inv = |v: u16| u16::MAX - v;
    let rec = reconstruct_by_dilation(&marker.map(inv), &mask.map(inv))?;
    Ok(rec.map(inv))
}

/// Erosion by the size-`lambda` square followed by reconstruction by
/// dilation under the original image.
pub fn opening_by_reconstruction(img: &GrayImage, lambda: u32) -> GrayImage {
    let half = se_half_size(lambda);
    if half == 0 {
        return img.clone();
    }
    reconstruct_by_dilation(&erode_square(img, half), img).expect("erosion lies below the image")
}

/// Dilation by the size-`lambda` square followed by reconstruction by
/// erosion over the original image.
pub fn closing_by_reconstruction(img: &GrayImage, lambda: u32) -> GrayImage {
    let half = se_half_size(lambda);
    if half == 0 {
        return img.clone();
    }
    reconstruct_by_erosion(&dilate_square(img, half), img).expect("dilation lies above the image")
}
