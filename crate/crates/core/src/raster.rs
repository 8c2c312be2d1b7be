//! Label rasters, per-label region extraction and 4-adjacency cross-aura
//! perimeter measures.
//!
//! A [`LabelImage`] partitions the pixel grid into labels. [`extract_regions`]
//! splits every label into connected components ([`Region`]s) and records, for
//! each one, its area, its holes (enclosed components of the complement) and
//! two perimeters counted as unit pixel edges:
//!
//! * `pl_total`: edges between the region and any other pixel, image frame
//!   included;
//! * `pl_external`: the same count restricted to edges facing the unbounded
//!   exterior, i.e. the perimeter of the region with its holes filled.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A pixel position as `(row, col)`.
pub type Pixel = (usize, usize);

const N4: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
const N8: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Pixel adjacency used for connected components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl Connectivity {
    /// The complementary adjacency (8 for 4 and vice versa), used for holes.
    pub fn dual(self) -> Self {
        match self {
            Connectivity::Four => Connectivity::Eight,
            Connectivity::Eight => Connectivity::Four,
        }
    }

    pub(crate) fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &N4,
            Connectivity::Eight => &N8,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            other => Err(crate::error::param(format!(
                "connectivity must be 4 or 8, got {other}"
            ))),
        }
    }
}

/// A rectangular grid of non-negative labels stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelImage {
    width: usize,
    height: usize,
    labels: Vec<u32>,
}

impl LabelImage {
    pub fn new(width: usize, height: usize, labels: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage { width, height });
        }
        if labels.len() != width * height {
            return Err(Error::BufferSize {
                width,
                height,
                len: labels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            labels,
        })
    }

    pub fn filled(width: usize, height: usize, label: u32) -> Result<Self> {
        Self::new(width, height, vec![label; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u32) -> Result<Self> {
        let mut labels = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                labels.push(f(r, c));
            }
        }
        Self::new(width, height, labels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Label at `(row, col)`. Panics when out of bounds.
    pub fn get(&self, row: usize, col: usize) -> u32 {
        assert!(row < self.height && col < self.width, "pixel out of bounds");
        self.labels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, label: u32) {
        assert!(row < self.height && col < self.width, "pixel out of bounds");
        self.labels[row * self.width + col] = label;
    }

    fn label_at(&self, row: isize, col: isize) -> Option<u32> {
        if row < 0 || col < 0 || row as usize >= self.height || col as usize >= self.width {
            None
        } else {
            Some(self.labels[row as usize * self.width + col as usize])
        }
    }
}

/// A boolean raster, used for region-local masks.
///
/// The derived ordering compares `(height, width, data)` lexicographically and
/// is what picks the canonical orientation of a shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMask {
    height: usize,
    width: usize,
    data: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            height,
            width,
            data: vec![false; width * height],
        }
    }

    /// Builds a mask of the given size with the listed pixels set.
    pub fn from_pixels(width: usize, height: usize, pixels: &[Pixel]) -> Self {
        let mut mask = Self::new(width, height);
        for &(r, c) in pixels {
            mask.set(r, c, true);
        }
        mask
    }

    /// Builds the tightest mask around `pixels`, returning it with its origin.
    pub fn bounding(pixels: &[Pixel]) -> Option<(Pixel, BinaryMask)> {
        let min_r = pixels.iter().map(|p| p.0).min()?;
        let max_r = pixels.iter().map(|p| p.0).max()?;
        let min_c = pixels.iter().map(|p| p.1).min()?;
        let max_c = pixels.iter().map(|p| p.1).max()?;
        let mut mask = Self::new(max_c - min_c + 1, max_r - min_r + 1);
        for &(r, c) in pixels {
            mask.set(r - min_r, c - min_c, true);
        }
        Some(((min_r, min_c), mask))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.width + col]
    }

    /// Like [`get`](Self::get) but `false` outside the mask.
    pub fn contains(&self, row: isize, col: isize) -> bool {
        row >= 0
            && col >= 0
            && (row as usize) < self.height
            && (col as usize) < self.width
            && self.data[row as usize * self.width + col as usize]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row * self.width + col] = value;
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }

    /// Set pixels in raster order.
    pub fn pixels(&self) -> impl Iterator<Item = Pixel> + '_ {
        let w = self.width;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i / w, i % w))
    }

    /// A copy surrounded by `pad` unset pixels on every side.
    pub fn padded(&self, pad: usize) -> BinaryMask {
        let mut out = BinaryMask::new(self.width + 2 * pad, self.height + 2 * pad);
        for (r, c) in self.pixels() {
            out.set(r + pad, c + pad, true);
        }
        out
    }

    pub fn transformed(&self, t: Dihedral) -> BinaryMask {
        let (w, h) = t.map_dims(self.width, self.height);
        let mut out = BinaryMask::new(w, h);
        for p in self.pixels() {
            let (r, c) = t.map_pixel(p, self.width, self.height);
            out.set(r, c, true);
        }
        out
    }

    /// Number of set 4-neighbours of set pixels that are unset or outside.
    pub fn cross_aura_count(&self) -> usize {
        let mut total = 0;
        for (r, c) in self.pixels() {
            for (dr, dc) in N4 {
                if !self.contains(r as isize + dr, c as isize + dc) {
                    total += 1;
                }
            }
        }
        total
    }

    /// Connected components of set pixels, each listed in raster order, with
    /// components ordered by their first pixel.
    pub fn components(&self, connectivity: Connectivity) -> Vec<Vec<Pixel>> {
        let mut seen = vec![false; self.data.len()];
        let mut out = Vec::new();
        for start in 0..self.data.len() {
            if !self.data[start] || seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(i) = queue.pop_front() {
                let (r, c) = (i / self.width, i % self.width);
                comp.push((r, c));
                for &(dr, dc) in connectivity.offsets() {
                    let (nr, nc) = (r as isize + dr, c as isize + dc);
                    if self.contains(nr, nc) {
                        let j = nr as usize * self.width + nc as usize;
                        if !seen[j] {
                            seen[j] = true;
                            queue.push_back(j);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// One of the eight rigid motions of the pixel grid: an optional column
/// mirror followed by `quarter_turns` counter-clockwise (as displayed)
/// quarter turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dihedral {
    pub quarter_turns: u8,
    pub mirrored: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral {
        quarter_turns: 0,
        mirrored: false,
    };

    pub fn all() -> [Dihedral; 8] {
        let mut out = [Dihedral::IDENTITY; 8];
        for (i, t) in out.iter_mut().enumerate() {
            *t = Dihedral {
                quarter_turns: (i % 4) as u8,
                mirrored: i >= 4,
            };
        }
        out
    }

    pub fn inverse(self) -> Dihedral {
        if self.mirrored {
            self
        } else {
            Dihedral {
                quarter_turns: (4 - self.quarter_turns % 4) % 4,
                mirrored: false,
            }
        }
    }

    /// `(width, height)` after the transform.
    pub fn map_dims(self, width: usize, height: usize) -> (usize, usize) {
        if self.quarter_turns.is_multiple_of(2) {
            (width, height)
        } else {
            (height, width)
        }
    }

    /// Maps a pixel of a `width` x `height` grid.
    pub fn map_pixel(self, p: Pixel, width: usize, height: usize) -> Pixel {
        let (mut r, mut c) = p;
        let (mut w, mut h) = (width, height);
        if self.mirrored {
            c = w - 1 - c;
        }
        for _ in 0..self.quarter_turns % 4 {
            let nr = w - 1 - c;
            let nc = r;
            r = nr;
            c = nc;
            std::mem::swap(&mut w, &mut h);
        }
        (r, c)
    }

    /// Maps a displacement `(d_row, d_col)`.
    pub fn map_vector(self, v: (i64, i64)) -> (i64, i64) {
        let (mut dr, mut dc) = v;
        if self.mirrored {
            dc = -dc;
        }
        for _ in 0..self.quarter_turns % 4 {
            let ndr = -dc;
            let ndc = dr;
            dr = ndr;
            dc = ndc;
        }
        (dr, dc)
    }
}

/// Axis-aligned pixel bounds, inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundingBox {
    pub min_row: usize,
    pub min_col: usize,
    pub max_row: usize,
    pub max_col: usize,
}

/// Hole structure and perimeter counts of a connected mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskTopology {
    pub area: usize,
    pub filled_area: usize,
    pub hole_count: usize,
    pub pl_external: usize,
    pub pl_total: usize,
    /// Per mask pixel: 0 outside holes, otherwise the 1-based hole index.
    hole_ids: Vec<u32>,
    width: usize,
}

impl MaskTopology {
    /// Pixels of hole `index` (0-based).
    pub fn hole_pixels(&self, index: usize) -> Vec<Pixel> {
        let id = index as u32 + 1;
        self.hole_ids
            .iter()
            .enumerate()
            .filter(|(_, &h)| h == id)
            .map(|(i, _)| (i / self.width, i % self.width))
            .collect()
    }

    pub fn is_hole(&self, row: usize, col: usize) -> bool {
        self.hole_ids[row * self.width + col] != 0
    }
}

/// Finds holes (complement components not reaching the mask frame, under the
/// dual of `connectivity`) and counts both cross-aura perimeters.
pub fn analyze_mask(mask: &BinaryMask, connectivity: Connectivity) -> MaskTopology {
    let (w, h) = (mask.width(), mask.height());
    let hole_conn = connectivity.dual();
    let mut ids = vec![0u32; w * h];
    let mut visited = vec![false; w * h];
    let mut hole_count = 0u32;
    let mut hole_area = 0usize;
    for start in 0..w * h {
        if mask.data[start] || visited[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut touches_frame = false;
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / w, i % w);
            comp.push(i);
            if r == 0 || c == 0 || r + 1 == h || c + 1 == w {
                touches_frame = true;
            }
            for &(dr, dc) in hole_conn.offsets() {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if nr < 0 || nc < 0 || nr as usize >= h || nc as usize >= w {
                    continue;
                }
                let j = nr as usize * w + nc as usize;
                if !mask.data[j] && !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if !touches_frame {
            hole_count += 1;
            hole_area += comp.len();
            for i in comp {
                ids[i] = hole_count;
            }
        }
    }

    let mut pl_total = 0;
    let mut pl_external = 0;
    for (r, c) in mask.pixels() {
        for (dr, dc) in N4 {
            let (nr, nc) = (r as isize + dr, c as isize + dc);
            if mask.contains(nr, nc) {
                continue;
            }
            pl_total += 1;
            let in_hole = nr >= 0
                && nc >= 0
                && (nr as usize) < h
                && (nc as usize) < w
                && ids[nr as usize * w + nc as usize] != 0;
            if !in_hole {
                pl_external += 1;
            }
        }
    }
    let area = mask.count();
    MaskTopology {
        area,
        filled_area: area + hole_area,
        hole_count: hole_count as usize,
        pl_external,
        pl_total,
        hole_ids: ids,
        width: w,
    }
}

/// Traces the outer boundary of the component containing the first set pixel
/// (raster order) with Moore-neighbour following.
///
/// The walk is counter-clockwise as displayed (down the left side first) and
/// is returned without repeating the start, so a closed walk `p_1 .. p_n`
/// with `p_1 = p_n` is stored as its first `n - 1` entries. Pixels on
/// one-pixel-wide parts appear once per pass. An isolated pixel yields a
/// single entry. An empty mask yields an empty walk.
pub fn trace_mask_boundary(mask: &BinaryMask) -> Vec<Pixel> {
    // Index order is counter-clockwise: E, NE, N, NW, W, SW, S, SE.
    const DIRS: [(isize, isize); 8] = [
        (0, 1),
        (-1, 1),
        (-1, 0),
        (-1, -1),
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
    ];
    fn dir_index(d: (isize, isize)) -> usize {
        DIRS.iter().position(|&x| x == d).expect("unit offset")
    }
    let step = |cur: (isize, isize), back: usize| -> Option<((isize, isize), usize)> {
        for i in 1..8 {
            let d = (back + i) % 8;
            let q = (cur.0 + DIRS[d].0, cur.1 + DIRS[d].1);
            if mask.contains(q.0, q.1) {
                let prev = DIRS[(d + 7) % 8];
                let rel = (prev.0 - DIRS[d].0, prev.1 - DIRS[d].1);
                return Some((q, dir_index(rel)));
            }
        }
        None
    };

    let Some(start) = mask.pixels().next() else {
        return Vec::new();
    };
    let s = (start.0 as isize, start.1 as isize);
    let Some((p1, b1)) = step(s, 4) else {
        return vec![start];
    };
    let mut walk = vec![start];
    let (mut cur, mut back) = (p1, b1);
    let limit = 4 * mask.count() + 8;
    loop {
        let (next, nb) = step(cur, back).expect("pixel on a multi-pixel walk has a neighbour");
        if cur == s && next == p1 {
            break;
        }
        walk.push((cur.0 as usize, cur.1 as usize));
        cur = next;
        back = nb;
        if walk.len() > limit {
            break;
        }
    }
    walk
}

/// Options for [`extract_regions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionOptions {
    pub connectivity: Connectivity,
    /// Label skipped during extraction; `None` treats every label as a region
    /// population.
    pub background: Option<u32>,
}

impl Default for RegionOptions {
    fn default() -> Self {
        Self {
            connectivity: Connectivity::Eight,
            background: Some(0),
        }
    }
}

/// One connected segment of a label image.
#[derive(Debug, Clone)]
pub struct Region {
    label: u32,
    origin: Pixel,
    mask: BinaryMask,
    connectivity: Connectivity,
    topology: MaskTopology,
}

impl Region {
    /// Builds a region from a bounding-box-local mask placed at `origin`.
    ///
    /// Fails when the mask is empty or not a single component under
    /// `connectivity`.
    pub fn from_mask(
        label: u32,
        origin: Pixel,
        mask: BinaryMask,
        connectivity: Connectivity,
    ) -> Result<Self> {
        let comps = mask.components(connectivity);
        if comps.len() != 1 {
            return Err(crate::error::param(format!(
                "region mask must hold exactly one component, found {}",
                comps.len()
            )));
        }
        let pixels = &comps[0];
        let (shift, tight) = BinaryMask::bounding(pixels).expect("nonempty");
        let origin = (origin.0 + shift.0, origin.1 + shift.1);
        let topology = analyze_mask(&tight, connectivity);
        Ok(Self {
            label,
            origin,
            mask: tight,
            connectivity,
            topology,
        })
    }

    /// Builds a region from image-coordinate pixels.
    pub fn from_pixels(label: u32, pixels: &[Pixel], connectivity: Connectivity) -> Result<Self> {
        let (origin, mask) = BinaryMask::bounding(pixels)
            .ok_or_else(|| crate::error::param("region needs at least one pixel"))?;
        Self::from_mask(label, origin, mask, connectivity)
    }

    pub fn label(&self) -> u32 {
        self.label
    }

    pub fn connectivity(&self) -> Connectivity {
        self.connectivity
    }

    /// Top-left corner of the bounding box in image coordinates.
    pub fn origin(&self) -> Pixel {
        self.origin
    }

    /// Bounding-box-local mask of the region's pixels.
    pub fn mask(&self) -> &BinaryMask {
        &self.mask
    }

    pub fn topology(&self) -> &MaskTopology {
        &self.topology
    }

    pub fn bbox(&self) -> BoundingBox {
        BoundingBox {
            min_row: self.origin.0,
            min_col: self.origin.1,
            max_row: self.origin.0 + self.mask.height() - 1,
            max_col: self.origin.1 + self.mask.width() - 1,
        }
    }

    /// Pixel count excluding holes.
    pub fn area(&self) -> usize {
        self.topology.area
    }

    pub fn filled_area(&self) -> usize {
        self.topology.filled_area
    }

    pub fn hole_count(&self) -> usize {
        self.topology.hole_count
    }

    pub fn pl_external(&self) -> usize {
        self.topology.pl_external
    }

    pub fn pl_total(&self) -> usize {
        self.topology.pl_total
    }

    /// `(pl_external, pl_total)`.
    pub fn cross_aura_lengths(&self) -> (usize, usize) {
        (self.topology.pl_external, self.topology.pl_total)
    }

    /// Image-coordinate pixels in raster order.
    pub fn pixels(&self) -> Vec<Pixel> {
        let (r0, c0) = self.origin;
        self.mask.pixels().map(|(r, c)| (r + r0, c + c0)).collect()
    }

    /// Local mask with holes filled in.
    pub fn filled_mask(&self) -> BinaryMask {
        let mut out = self.mask.clone();
        for r in 0..out.height() {
            for c in 0..out.width() {
                if self.topology.is_hole(r, c) {
                    out.set(r, c, true);
                }
            }
        }
        out
    }

    /// Counter-clockwise Moore walk along the outer boundary, in image
    /// coordinates.
    pub fn outer_boundary(&self) -> Vec<Pixel> {
        let (r0, c0) = self.origin;
        trace_mask_boundary(&self.mask)
            .into_iter()
            .map(|(r, c)| (r + r0, c + c0))
            .collect()
    }

    /// One closed walk per hole, traced along the hole's own pixels.
    pub fn hole_boundaries(&self) -> Vec<Vec<Pixel>> {
        let (r0, c0) = self.origin;
        (0..self.topology.hole_count)
            .map(|i| {
                let hole = BinaryMask::from_pixels(
                    self.mask.width(),
                    self.mask.height(),
                    &self.topology.hole_pixels(i),
                );
                trace_mask_boundary(&hole)
                    .into_iter()
                    .map(|(r, c)| (r + r0, c + c0))
                    .collect()
            })
            .collect()
    }
}

/// Splits every non-background label into connected regions.
///
/// Regions are ordered by label, then by bounding box.
pub fn extract_regions(img: &LabelImage, options: &RegionOptions) -> Vec<Region> {
    let (w, h) = (img.width(), img.height());
    let mut seen = vec![false; w * h];
    let mut regions = Vec::new();
    for start in 0..w * h {
        if seen[start] {
            continue;
        }
        let label = img.labels[start];
        if options.background == Some(label) {
            continue;
        }
        let mut pixels = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / w, i % w);
            pixels.push((r, c));
            for &(dr, dc) in options.connectivity.offsets() {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if img.label_at(nr, nc) == Some(label) {
                    let j = nr as usize * w + nc as usize;
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        let (origin, mask) = BinaryMask::bounding(&pixels).expect("nonempty component");
        let topology = analyze_mask(&mask, options.connectivity);
        regions.push(Region {
            label,
            origin,
            mask,
            connectivity: options.connectivity,
            topology,
        });
    }
    regions.sort_by_key(|r| (r.label, r.bbox()));
    regions
}

/// Per-pixel count of 4-neighbours carrying a different label; neighbours
/// outside the image count as different.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossAuraMap {
    width: usize,
    height: usize,
    values: Vec<u8>,
}

impl CrossAuraMap {
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.values[row * self.width + col]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }
}

pub fn cross_aura(img: &LabelImage) -> CrossAuraMap {
    let (w, h) = (img.width(), img.height());
    let mut values = Vec::with_capacity(w * h);
    for r in 0..h {
        for c in 0..w {
            let own = img.get(r, c);
            let differing = N4
                .iter()
                .filter(|(dr, dc)| img.label_at(r as isize + dr, c as isize + dc) != Some(own))
                .count();
            values.push(differing as u8);
        }
    }
    CrossAuraMap {
        width: w,
        height: h,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn donut() -> LabelImage {
        LabelImage::from_fn(3, 3, |r, c| if (r, c) == (1, 1) { 0 } else { 1 }).unwrap()
    }

    #[test]
    fn rejects_empty_and_mismatched_buffers() {
        assert!(matches!(
            LabelImage::new(0, 3, vec![]),
            Err(Error::EmptyImage { .. })
        ));
        assert!(matches!(
            LabelImage::new(2, 2, vec![1; 3]),
            Err(Error::BufferSize { .. })
        ));
    }

    #[test]
    fn single_pixel_region() {
        let img = LabelImage::filled(1, 1, 1).unwrap();
        let regions = extract_regions(&img, &RegionOptions::default());
        assert_eq!(regions.len(), 1);
        let r = &regions[0];
        assert_eq!((r.area(), r.hole_count(), r.filled_area()), (1, 0, 1));
        assert_eq!(r.cross_aura_lengths(), (4, 4));
        assert_eq!(r.outer_boundary(), vec![(0, 0)]);
    }

    #[test]
    fn donut_has_one_hole() {
        let regions = extract_regions(&donut(), &RegionOptions::default());
        assert_eq!(regions.len(), 1);
        let r = &regions[0];
        assert_eq!(r.area(), 8);
        assert_eq!(r.filled_area(), 9);
        assert_eq!(r.hole_count(), 1);
        assert_eq!(r.cross_aura_lengths(), (12, 16));
        assert_eq!(r.hole_boundaries(), vec![vec![(1, 1)]]);
    }

    #[test]
    fn checkerboard_splits_into_single_pixels_under_four_connectivity() {
        let img = LabelImage::from_fn(4, 4, |r, c| 1 + ((r + c) % 2) as u32).unwrap();
        let opts = RegionOptions {
            connectivity: Connectivity::Four,
            background: Some(0),
        };
        let regions = extract_regions(&img, &opts);
        assert_eq!(regions.len(), 16);
        assert!(regions.iter().all(|r| r.area() == 1));
        // 8-connectivity joins the diagonals instead.
        assert_eq!(extract_regions(&img, &RegionOptions::default()).len(), 2);
    }

    #[test]
    fn background_can_be_a_population() {
        let opts = RegionOptions {
            background: None,
            ..Default::default()
        };
        let regions = extract_regions(&donut(), &opts);
        assert_eq!(regions.len(), 2);
        assert_eq!(regions[0].label(), 0);
    }

    #[test]
    fn hole_touching_the_frame_is_exterior() {
        // A U shape: the gap reaches the top of the image.
        let img = LabelImage::from_fn(3, 3, |r, c| if r < 2 && c == 1 { 0 } else { 1 }).unwrap();
        let r = &extract_regions(&img, &RegionOptions::default())[0];
        assert_eq!(r.hole_count(), 0);
        assert_eq!(r.pl_external(), r.pl_total());
    }

    #[test]
    fn diagonal_gap_depends_on_connectivity_pairing() {
        // Ring with the hole leaking through a diagonal corner.
        let img = LabelImage::from_fn(4, 4, |r, c| {
            let ring = r <= 2 && c <= 2 && (r, c) != (1, 1);
            let leak = (r, c) == (2, 2);
            u32::from(ring && !leak)
        })
        .unwrap();
        // 8-connected regions pair with 4-connected holes, so the diagonal
        // does not leak; 4-connected regions pair with 8-connected holes.
        let eight = &extract_regions(&img, &RegionOptions::default())[0];
        assert_eq!(eight.hole_count(), 1);
        let four_opts = RegionOptions {
            connectivity: Connectivity::Four,
            ..Default::default()
        };
        let four = extract_regions(&img, &four_opts);
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].hole_count(), 0);
    }

    #[test]
    fn cross_aura_examples() {
        let img = LabelImage::from_fn(6, 4, |r, c| u32::from(r == 1 && (1..5).contains(&c))).unwrap();
        let map = cross_aura(&img);
        let bar = &extract_regions(&img, &RegionOptions::default())[0];
        let sum: usize = bar.pixels().iter().map(|&(r, c)| map.get(r, c) as usize).sum();
        assert_eq!(sum, 10);
        assert_eq!(bar.pl_total(), 10);
        assert_eq!(map.get(0, 0), 2);

        let square = LabelImage::from_fn(4, 4, |r, c| u32::from((1..3).contains(&r) && (1..3).contains(&c))).unwrap();
        let sq = &extract_regions(&square, &RegionOptions::default())[0];
        assert_eq!(sq.cross_aura_lengths(), (8, 8));
    }

    #[test]
    fn trace_square_and_bar() {
        let sq = BinaryMask::from_pixels(3, 3, &(0..9).map(|i| (i / 3, i % 3)).collect::<Vec<_>>());
        let walk = trace_mask_boundary(&sq);
        assert_eq!(walk.len(), 8);
        assert_eq!(walk[0], (0, 0));
        assert_eq!(walk[1], (1, 0), "counter-clockwise: down the left side first");
        let mut distinct = walk.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 8);

        let bar = BinaryMask::from_pixels(4, 1, &[(0, 0), (0, 1), (0, 2), (0, 3)]);
        let walk = trace_mask_boundary(&bar);
        assert_eq!(walk, vec![(0, 0), (0, 1), (0, 2), (0, 3), (0, 2), (0, 1)]);
    }

    #[test]
    fn trace_orientation_is_positive_in_row_col_frame() {
        let pixels: Vec<Pixel> = (0..20).map(|i| (i / 5, i % 5)).collect();
        let walk = trace_mask_boundary(&BinaryMask::from_pixels(5, 4, &pixels));
        let n = walk.len();
        let twice_area: i64 = (0..n)
            .map(|i| {
                let (a, b) = (walk[i], walk[(i + 1) % n]);
                a.0 as i64 * b.1 as i64 - b.0 as i64 * a.1 as i64
            })
            .sum();
        assert!(twice_area > 0);
    }

    #[test]
    fn dihedral_round_trips() {
        for t in Dihedral::all() {
            let inv = t.inverse();
            let (w, h) = (5, 3);
            let (tw, th) = t.map_dims(w, h);
            for r in 0..h {
                for c in 0..w {
                    let q = t.map_pixel((r, c), w, h);
                    assert!(q.0 < th && q.1 < tw);
                    assert_eq!(inv.map_pixel(q, tw, th), (r, c));
                }
            }
            let v = (2, -7);
            assert_eq!(inv.map_vector(t.map_vector(v)), v);
        }
    }

    #[test]
    fn from_pixels_rejects_disconnected_sets() {
        assert!(Region::from_pixels(1, &[(0, 0), (0, 2)], Connectivity::Eight).is_err());
        assert!(Region::from_pixels(1, &[(0, 0), (1, 1)], Connectivity::Four).is_err());
        assert!(Region::from_pixels(1, &[(0, 0), (1, 1)], Connectivity::Eight).is_ok());
    }
}
