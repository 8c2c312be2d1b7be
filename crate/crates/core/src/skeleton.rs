//! Exact Euclidean distance transform and a filtered Euclidean skeleton.
//!
//! The skeleton is built in three stages:
//!
//! 1. the λ-medial axis: pixels whose extended projection onto the nearest
//!    background has a smallest enclosing circle of radius at least
//!    `medial_radius`;
//! 2. homotopic thinning guided by the distance map, which removes simple,
//!    non-terminal pixels in increasing distance order while keeping the
//!    medial axis;
//! 3. one cycle of directional parallel thinning, which leaves an
//!    8-connected, one-pixel-thin set, followed by removal of short terminal
//!    branches (`filter_param`).
//!
//! Topology is (8, 4): the skeleton is 8-connected and the background
//! 4-connected, so each region yields one skeleton component and one cycle
//! per hole.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::sync::OnceLock;

use crate::geometry::Point;
use crate::raster::{BinaryMask, Pixel};

/// Squared Euclidean distance from each mask pixel to the nearest pixel
/// outside the mask, plus one such nearest pixel. Pixels beyond the mask
/// frame count as outside. Zero outside the mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    width: usize,
    height: usize,
    sq: Vec<u64>,
    nearest: Vec<Point>,
}

impl DistanceField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn squared(&self, row: usize, col: usize) -> u64 {
        self.sq[row * self.width + col]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        (self.squared(row, col) as f64).sqrt()
    }

    /// A nearest outside pixel in mask coordinates (may lie one step beyond
    /// the frame). Outside pixels return themselves.
    pub fn nearest(&self, row: usize, col: usize) -> Point {
        self.nearest[row * self.width + col]
    }

    fn sq_at(&self, p: Point) -> u64 {
        if p.0 < 0 || p.1 < 0 || p.0 as usize >= self.height || p.1 as usize >= self.width {
            0
        } else {
            self.squared(p.0 as usize, p.1 as usize)
        }
    }

    fn nearest_at(&self, p: Point) -> Point {
        if p.0 < 0 || p.1 < 0 || p.0 as usize >= self.height || p.1 as usize >= self.width {
            p
        } else {
            self.nearest(p.0 as usize, p.1 as usize)
        }
    }
}

/// Meijster's two-pass linear-time transform, tracking the nearest outside
/// pixel alongside the squared distance.
pub fn distance_transform(mask: &BinaryMask) -> DistanceField {
    // One ring of padding makes the frame explicit background.
    let (h, w) = (mask.height() + 2, mask.width() + 2);
    let inside = |r: usize, c: usize| r >= 1 && c >= 1 && r <= mask.height() && c <= mask.width() && mask.get(r - 1, c - 1);

    // Column pass: vertical distance and the row it reaches.
    let mut g = vec![0i64; h * w];
    let mut grow = vec![0i64; h * w];
    for c in 0..w {
        for r in 0..h {
            let i = r * w + c;
            if !inside(r, c) {
                g[i] = 0;
                grow[i] = r as i64;
            } else {
                g[i] = g[i - w] + 1;
                grow[i] = grow[i - w];
            }
        }
        for r in (0..h - 1).rev() {
            let (i, j) = (r * w + c, (r + 1) * w + c);
            if g[j] + 1 < g[i] {
                g[i] = g[j] + 1;
                grow[i] = grow[j];
            }
        }
    }

    let mut sq = vec![0u64; mask.width() * mask.height()];
    let mut nearest = vec![(0i64, 0i64); mask.width() * mask.height()];
    let mut s = vec![0i64; w];
    let mut t = vec![0i64; w];
    for r in 1..h - 1 {
        let gr = |u: i64| g[r * w + u as usize];
        let f = |x: i64, u: i64| (x - u) * (x - u) + gr(u) * gr(u);
        let sep = |u: i64, v: i64| (v * v - u * u + gr(v) * gr(v) - gr(u) * gr(u)).div_euclid(2 * (v - u));
        let mut q: isize = 0;
        s[0] = 0;
        t[0] = 0;
        for u in 1..w as i64 {
            while q >= 0 && f(t[q as usize], s[q as usize]) > f(t[q as usize], u) {
                q -= 1;
            }
            if q < 0 {
                q = 0;
                s[0] = u;
            } else {
                let x = 1 + sep(s[q as usize], u);
                if x < w as i64 {
                    q += 1;
                    s[q as usize] = u;
                    t[q as usize] = x;
                }
            }
        }
        for x in (0..w as i64).rev() {
            let u = s[q as usize];
            if 1 <= x && x < w as i64 - 1 {
                let (lr, lc) = (r - 1, x as usize - 1);
                let li = lr * mask.width() + lc;
                if mask.get(lr, lc) {
                    sq[li] = f(x, u) as u64;
                    nearest[li] = (grow[r * w + u as usize] - 1, u - 1);
                } else {
                    nearest[li] = (lr as i64, lc as i64);
                }
            }
            if x == t[q as usize] {
                q -= 1;
            }
        }
    }
    DistanceField {
        width: mask.width(),
        height: mask.height(),
        sq,
        nearest,
    }
}

/// Parameters of [`euclidean_skeleton`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkeletonConfig {
    /// Terminal branches of at most this many pixels are pruned.
    pub filter_param: f64,
    /// λ of the λ-medial axis that anchors the thinning.
    pub medial_radius: f64,
}

impl Default for SkeletonConfig {
    fn default() -> Self {
        Self {
            filter_param: 1.0,
            medial_radius: 2.0,
        }
    }
}

/// A set of skeleton pixels in the coordinates of the source mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeleton {
    mask: BinaryMask,
    filter_param: f64,
}

impl Skeleton {
    pub fn from_mask(mask: BinaryMask, filter_param: f64) -> Self {
        Self { mask, filter_param }
    }

    /// Skeleton given directly as pixels, on the tightest grid holding them.
    pub fn from_pixels(pixels: &[Pixel]) -> Self {
        let w = pixels.iter().map(|p| p.1 + 1).max().unwrap_or(0);
        let h = pixels.iter().map(|p| p.0 + 1).max().unwrap_or(0);
        Self::from_mask(BinaryMask::from_pixels(w, h, pixels), 0.0)
    }

    pub fn mask(&self) -> &BinaryMask {
        &self.mask
    }

    pub fn filter_param(&self) -> f64 {
        self.filter_param
    }

    pub fn pixels(&self) -> Vec<Pixel> {
        self.mask.pixels().collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    /// Number of 8-connected components.
    pub fn component_count(&self) -> usize {
        SkeletonGraph::new(&self.mask).components()
    }

    /// Independent cycles of the skeleton graph (edges − vertices + components).
    pub fn cycle_count(&self) -> usize {
        let g = SkeletonGraph::new(&self.mask);
        g.edge_count() + g.components() - g.nodes.len()
    }
}

// Neighbours in circular order starting north, clockwise on screen.
const RING: [(isize, isize); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

fn ring_bits(mask: &BinaryMask, r: usize, c: usize) -> u8 {
    let mut bits = 0u8;
    for (k, (dr, dc)) in RING.iter().enumerate() {
        if mask.contains(r as isize + dr, c as isize + dc) {
            bits |= 1 << k;
        }
    }
    bits
}

/// Whether removing the centre of a 3x3 configuration preserves (8, 4)
/// topology: one 8-component of set neighbours, one 4-component of unset
/// neighbours touching the centre.
fn simple_table() -> &'static [bool; 256] {
    static TABLE: OnceLock<[bool; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [false; 256];
        for (bits, slot) in table.iter_mut().enumerate() {
            let set = |k: usize| bits & (1 << k) != 0;
            let adjacent = |a: usize, b: usize, eight: bool| {
                let (pa, pb) = (RING[a], RING[b]);
                let (dr, dc) = ((pa.0 - pb.0).abs(), (pa.1 - pb.1).abs());
                if eight {
                    dr <= 1 && dc <= 1
                } else {
                    dr + dc == 1
                }
            };
            let count = |want: bool, eight: bool, need_four_touch: bool| {
                let mut seen = [false; 8];
                let mut comps = 0;
                for start in 0..8 {
                    if set(start) != want || seen[start] {
                        continue;
                    }
                    let mut stack = vec![start];
                    seen[start] = true;
                    let mut touches = false;
                    while let Some(a) = stack.pop() {
                        if a % 2 == 0 {
                            touches = true;
                        }
                        #[allow(clippy::needless_range_loop)]
                        for b in 0..8 {
                            if set(b) == want && !seen[b] && adjacent(a, b, eight) {
                                seen[b] = true;
                                stack.push(b);
                            }
                        }
                    }
                    if !need_four_touch || touches {
                        comps += 1;
                    }
                }
                comps
            };
            *slot = count(true, true, false) == 1 && count(false, false, true) == 1;
        }
        table
    })
}

fn is_simple(mask: &BinaryMask, r: usize, c: usize) -> bool {
    simple_table()[ring_bits(mask, r, c) as usize]
}

fn neighbour_count(mask: &BinaryMask, r: usize, c: usize) -> u32 {
    ring_bits(mask, r, c).count_ones()
}

/// Smallest enclosing circle radius of a small point set, squared.
fn enclosing_radius_sq(pts: &[(f64, f64)]) -> f64 {
    let d2 = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2);
    let inside = |c: (f64, f64), r2: f64, p: (f64, f64)| d2(c, p) <= r2 * (1.0 + 1e-12) + 1e-12;
    let mut c = pts[0];
    let mut r2 = 0.0;
    for i in 1..pts.len() {
        if inside(c, r2, pts[i]) {
            continue;
        }
        c = pts[i];
        r2 = 0.0;
        for j in 0..i {
            if inside(c, r2, pts[j]) {
                continue;
            }
            c = ((pts[i].0 + pts[j].0) / 2.0, (pts[i].1 + pts[j].1) / 2.0);
            r2 = d2(c, pts[i]);
            for k in 0..j {
                if inside(c, r2, pts[k]) {
                    continue;
                }
                let (a, b, p) = (pts[i], pts[j], pts[k]);
                let det = 2.0 * ((b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0));
                if det.abs() < 1e-12 {
                    // Collinear: the farthest pair spans the circle.
                    let pairs = [(a, b), (a, p), (b, p)];
                    let &(u, v) = pairs
                        .iter()
                        .max_by(|x, y| d2(x.0, x.1).total_cmp(&d2(y.0, y.1)))
                        .unwrap();
                    c = ((u.0 + v.0) / 2.0, (u.1 + v.1) / 2.0);
                    r2 = d2(c, u);
                    continue;
                }
                let (bb, pp) = (d2(b, (0.0, 0.0)) - d2(a, (0.0, 0.0)), d2(p, (0.0, 0.0)) - d2(a, (0.0, 0.0)));
                let x = (bb * (p.1 - a.1) - pp * (b.1 - a.1)) / det;
                let y = ((b.0 - a.0) * pp - (p.0 - a.0) * bb) / det;
                c = (x, y);
                r2 = d2(c, a);
            }
        }
    }
    r2
}

/// Nearest outside pixels of `p` gathered from `p` and its 8-neighbours,
/// keeping those at exactly the distance of `p`.
fn projection(df: &DistanceField, p: Point, out: &mut Vec<Point>) {
    let d = df.sq_at(p);
    if d == 0 {
        out.push(p);
        return;
    }
    for (dr, dc) in std::iter::once((0, 0)).chain(RING.iter().map(|&(a, b)| (a as i64, b as i64))) {
        let q = df.nearest_at((p.0 + dr, p.1 + dc));
        let e = ((q.0 - p.0).pow(2) + (q.1 - p.1).pow(2)) as u64;
        if e == d && !out.contains(&q) {
            out.push(q);
        }
    }
}

/// The λ-medial axis of the mask, as a boolean map.
pub fn lambda_medial_axis(mask: &BinaryMask, df: &DistanceField, lambda: f64) -> BinaryMask {
    let mut out = BinaryMask::new(mask.width(), mask.height());
    let mut proj = Vec::with_capacity(16);
    let mut pts = Vec::with_capacity(16);
    for (r, c) in mask.pixels() {
        let x = (r as i64, c as i64);
        let dx = df.sq_at(x);
        proj.clear();
        for (dr, dc) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let y = (x.0 + dr, x.1 + dc);
            if df.sq_at(y) <= dx {
                projection(df, y, &mut proj);
            }
        }
        pts.clear();
        pts.extend(proj.iter().map(|&(a, b)| (a as f64, b as f64)));
        if enclosing_radius_sq(&pts) >= lambda * lambda - 1e-9 {
            out.set(r, c, true);
        }
    }
    out
}

/// Filtered Euclidean skeleton of `mask` (see the module documentation).
///
/// `df` must be the distance transform of the same mask.
pub fn euclidean_skeleton(mask: &BinaryMask, df: &DistanceField, cfg: &SkeletonConfig) -> Skeleton {
    let keep = lambda_medial_axis(mask, df, cfg.medial_radius);
    let mut x = mask.clone();
    let (w, h) = (mask.width(), mask.height());

    let mut queued = vec![false; w * h];
    let mut heap = BinaryHeap::new();
    for (r, c) in mask.pixels() {
        if !keep.get(r, c) {
            heap.push(Reverse((df.squared(r, c), r * w + c)));
            queued[r * w + c] = true;
        }
    }
    while let Some(Reverse((_, i))) = heap.pop() {
        queued[i] = false;
        let (r, c) = (i / w, i % w);
        if !x.get(r, c) || !is_simple(&x, r, c) || neighbour_count(&x, r, c) == 1 {
            continue;
        }
        x.set(r, c, false);
        for (dr, dc) in RING {
            let (nr, nc) = (r as isize + dr, c as isize + dc);
            if x.contains(nr, nc) {
                let j = nr as usize * w + nc as usize;
                if !keep.get(nr as usize, nc as usize) && !queued[j] {
                    queued[j] = true;
                    heap.push(Reverse((df.squared(nr as usize, nc as usize), j)));
                }
            }
        }
    }

    // One parallel cycle over north, south, east and west border points.
    for dir in [(-1isize, 0isize), (1, 0), (0, 1), (0, -1)] {
        let removable: Vec<Pixel> = x
            .pixels()
            .filter(|&(r, c)| {
                !x.contains(r as isize + dir.0, c as isize + dir.1)
                    && neighbour_count(&x, r, c) > 1
                    && is_simple(&x, r, c)
            })
            .collect();
        for (r, c) in removable {
            x.set(r, c, false);
        }
    }

    prune_spurs(&mut x, cfg.filter_param);
    Skeleton::from_mask(x, cfg.filter_param)
}

/// Removes every terminal branch (endpoint up to, excluding, the first
/// junction) of at most `max_len` pixels, in a single pass.
fn prune_spurs(x: &mut BinaryMask, max_len: f64) {
    let g = SkeletonGraph::new(x);
    let mut doomed = Vec::new();
    for start in 0..g.nodes.len() {
        if g.adj[start].len() != 1 {
            continue;
        }
        let mut branch = vec![start];
        let (mut prev, mut cur) = (start, g.adj[start][0]);
        let reached_junction = loop {
            match g.adj[cur].len() {
                2 => {
                    let next = if g.adj[cur][0] == prev { g.adj[cur][1] } else { g.adj[cur][0] };
                    branch.push(cur);
                    prev = cur;
                    cur = next;
                }
                1 => break false,
                _ => break true,
            }
            if branch.len() as f64 > max_len {
                break false;
            }
        };
        if reached_junction && branch.len() as f64 <= max_len {
            doomed.extend(branch.iter().map(|&i| g.nodes[i]));
        }
    }
    for (r, c) in doomed {
        x.set(r, c, false);
    }
}

/// Skeleton pixels as a graph: 4-adjacent pixels are linked, diagonal pixels
/// only when they share no 4-neighbour in the set (so staircases do not form
/// triangles).
struct SkeletonGraph {
    nodes: Vec<Pixel>,
    adj: Vec<Vec<usize>>,
}

impl SkeletonGraph {
    fn new(mask: &BinaryMask) -> Self {
        let nodes: Vec<Pixel> = mask.pixels().collect();
        let w = mask.width();
        let mut index = vec![usize::MAX; w * mask.height()];
        for (i, &(r, c)) in nodes.iter().enumerate() {
            index[r * w + c] = i;
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        for (i, &(r, c)) in nodes.iter().enumerate() {
            for (dr, dc) in RING {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if !mask.contains(nr, nc) {
                    continue;
                }
                if dr != 0 && dc != 0 && (mask.contains(r as isize + dr, c as isize) || mask.contains(r as isize, c as isize + dc)) {
                    continue;
                }
                adj[i].push(index[nr as usize * w + nc as usize]);
            }
        }
        Self { nodes, adj }
    }

    fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn components(&self) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut comps = 0;
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            comps += 1;
            self.bfs(s, &mut seen);
        }
        comps
    }

    /// Breadth-first search from `s`; returns parents and the farthest node
    /// (first reached among the farthest).
    fn bfs(&self, s: usize, seen: &mut [bool]) -> (Vec<usize>, usize) {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut dist = vec![0usize; self.nodes.len()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        let mut far = s;
        while let Some(a) = queue.pop_front() {
            if dist[a] > dist[far] {
                far = a;
            }
            for &b in &self.adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = a;
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        (parent, far)
    }
}

/// A longest path through the skeleton, by two breadth-first sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonPath {
    pub pixels: Vec<Pixel>,
    /// The skeleton has cycles, so the double sweep is not guaranteed to find
    /// the longest simple path.
    pub heuristic: bool,
}

pub fn longest_skeleton_path(skel: &Skeleton) -> SkeletonPath {
    let g = SkeletonGraph::new(&skel.mask);
    if g.nodes.is_empty() {
        return SkeletonPath {
            pixels: Vec::new(),
            heuristic: false,
        };
    }
    let heuristic = g.edge_count() + g.components() != g.nodes.len();
    // Sweep the largest component, starting from its first pixel.
    let mut best: Option<Vec<usize>> = None;
    let mut covered = vec![false; g.nodes.len()];
    for s in 0..g.nodes.len() {
        if covered[s] {
            continue;
        }
        let (_, a) = g.bfs(s, &mut covered);
        let mut seen = vec![false; g.nodes.len()];
        let (parent, b) = g.bfs(a, &mut seen);
        let mut path = vec![b];
        let mut v = b;
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        if best.as_ref().is_none_or(|p| path.len() > p.len()) {
            best = Some(path);
        }
    }
    SkeletonPath {
        pixels: best.unwrap().into_iter().map(|i| g.nodes[i]).collect(),
        heuristic,
    }
}

/// Length and width summaries of a skeleton.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonMetrics {
    /// Skeleton pixel count.
    pub l_total: usize,
    /// Mean width `2 d - 1` over skeleton pixels.
    pub w_avg: f64,
    /// Pixel count of the longest path.
    pub l_longest: usize,
    /// Mean width along the longest path.
    pub w_longest_avg: f64,
    /// The longest path came from a skeleton with cycles.
    pub path_heuristic: bool,
}

/// Width of the region across skeleton pixel `(r, c)`.
pub fn width_at(df: &DistanceField, r: usize, c: usize) -> f64 {
    2.0 * df.get(r, c) - 1.0
}

pub fn skeleton_metrics(skel: &Skeleton, df: &DistanceField) -> SkeletonMetrics {
    let pixels = skel.pixels();
    let mean = |ps: &[Pixel]| {
        if ps.is_empty() {
            0.0
        } else {
            ps.iter().map(|&(r, c)| width_at(df, r, c)).sum::<f64>() / ps.len() as f64
        }
    };
    let path = longest_skeleton_path(skel);
    SkeletonMetrics {
        l_total: pixels.len(),
        w_avg: mean(&pixels),
        l_longest: path.pixels.len(),
        w_longest_avg: mean(&path.pixels),
        path_heuristic: path.heuristic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::{Connectivity, Dihedral};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn block(w: usize, h: usize) -> BinaryMask {
        let px: Vec<_> = (0..h).flat_map(|r| (0..w).map(move |c| (r, c))).collect();
        BinaryMask::from_pixels(w, h, &px)
    }

    fn brute_sq(mask: &BinaryMask, r: usize, c: usize) -> u64 {
        if !mask.get(r, c) {
            return 0;
        }
        let mut best = u64::MAX;
        for br in -1..=mask.height() as i64 {
            for bc in -1..=mask.width() as i64 {
                if !mask.contains(br as isize, bc as isize) {
                    best = best.min(((br - r as i64).pow(2) + (bc - c as i64).pow(2)) as u64);
                }
            }
        }
        best
    }

    fn skeleton_of(mask: &BinaryMask) -> Skeleton {
        euclidean_skeleton(mask, &distance_transform(mask), &SkeletonConfig::default())
    }

    #[test]
    fn distance_examples() {
        let df = distance_transform(&block(1, 1));
        assert_eq!(df.get(0, 0), 1.0);
        let df = distance_transform(&block(5, 5));
        assert_eq!(df.get(2, 2), 3.0);
        let df = distance_transform(&block(7, 1));
        assert!((0..7).all(|c| df.get(0, c) == 1.0));
    }

    #[test]
    fn distance_matches_brute_force_on_random_masks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut m = BinaryMask::new(16, 16);
            let density = rng.random_range(0.3..0.95);
            for r in 0..16 {
                for c in 0..16 {
                    m.set(r, c, rng.random_bool(density));
                }
            }
            let df = distance_transform(&m);
            for r in 0..16 {
                for c in 0..16 {
                    assert_eq!(df.squared(r, c), brute_sq(&m, r, c));
                    if m.get(r, c) {
                        let q = df.nearest(r, c);
                        assert!(!m.contains(q.0 as isize, q.1 as isize));
                        let d = ((q.0 - r as i64).pow(2) + (q.1 - c as i64).pow(2)) as u64;
                        assert_eq!(d, df.squared(r, c));
                    }
                }
            }
        }
    }

    #[test]
    fn simple_point_table_spot_checks() {
        let t = simple_table();
        assert!(!t[0], "isolated point");
        assert!(t[1], "end of a line");
        assert!(!t[0b0001_0001], "middle of a vertical line");
        assert!(!t[0xff], "interior point");
        assert!(t[0b0000_0111], "corner of a block");
    }

    #[test]
    fn bar_is_its_own_skeleton() {
        let bar = block(9, 1);
        let s = skeleton_of(&bar);
        assert_eq!(s.mask(), &bar);
        let m = skeleton_metrics(&s, &distance_transform(&bar));
        assert_eq!((m.l_total, m.l_longest), (9, 9));
        assert_eq!((m.w_avg, m.w_longest_avg), (1.0, 1.0));
    }

    #[test]
    fn single_pixel_skeleton() {
        let s = skeleton_of(&block(1, 1));
        assert_eq!(s.pixels(), vec![(0, 0)]);
    }

    #[test]
    fn square_skeleton_is_a_tree() {
        let sq = block(9, 9);
        let s = skeleton_of(&sq);
        assert!(s.mask().get(4, 4));
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.cycle_count(), 0);
        assert!(s.len() > 1);
    }

    #[test]
    fn annulus_skeleton_has_one_cycle() {
        let mut m = block(13, 13);
        for r in 3..10 {
            for c in 3..10 {
                m.set(r, c, false);
            }
        }
        let s = skeleton_of(&m);
        assert_eq!(s.component_count(), 1);
        assert_eq!(s.cycle_count(), 1);
        assert!(s.pixels().iter().all(|&(r, c)| m.get(r, c)));
    }

    #[test]
    fn thick_bar_skeleton_runs_along_the_middle() {
        let bar = block(30, 3);
        let df = distance_transform(&bar);
        let s = skeleton_of(&bar);
        let m = skeleton_metrics(&s, &df);
        assert!((28..=30).contains(&m.l_total), "{}", m.l_total);
        let ratio = m.l_total as f64 / m.w_avg;
        assert!((ratio / 10.0 - 1.0).abs() <= 0.2, "{ratio}");
    }

    #[test]
    fn straight_and_cross_paths() {
        let line = Skeleton::from_pixels(&(0..12).map(|c| (0, c)).collect::<Vec<_>>());
        assert_eq!(longest_skeleton_path(&line).pixels.len(), 12);

        let mut cross: Vec<Pixel> = (0..8).map(|c| (2, c)).collect();
        cross.extend([(0, 3), (1, 3), (3, 3), (4, 3)]);
        let s = Skeleton::from_pixels(&cross);
        assert_eq!(s.len(), 12);
        let p = longest_skeleton_path(&s);
        assert_eq!(p.pixels.len(), 8);
        assert!(!p.heuristic);
    }

    #[test]
    fn spur_pruning_removes_single_pixel_branches() {
        let mut px: Vec<Pixel> = (0..9).map(|c| (2, c)).collect();
        px.push((1, 4));
        let mut m = BinaryMask::from_pixels(9, 4, &px);
        prune_spurs(&mut m, 1.0);
        assert!(!m.get(1, 4));
        assert_eq!(m.count(), 9, "path ends are not spurs");
    }

    /// Longest simple path by exhaustive depth-first search.
    fn exhaustive_longest(g: &SkeletonGraph) -> usize {
        fn dfs(g: &SkeletonGraph, v: usize, on: &mut Vec<bool>) -> usize {
            on[v] = true;
            let mut best = 0;
            for &u in &g.adj[v] {
                if !on[u] {
                    best = best.max(dfs(g, u, on));
                }
            }
            on[v] = false;
            best + 1
        }
        (0..g.nodes.len())
            .map(|s| dfs(g, s, &mut vec![false; g.nodes.len()]))
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn cyclic_path_is_flagged_and_bounded() {
        // A ring with a tail.
        let mut px: Vec<Pixel> = vec![(0, 1), (0, 2), (1, 3), (2, 3), (3, 2), (3, 1), (2, 0), (1, 0)];
        px.extend([(4, 2), (5, 2), (6, 2)]);
        let s = Skeleton::from_pixels(&px);
        let g = SkeletonGraph::new(s.mask());
        let p = longest_skeleton_path(&s);
        assert!(p.heuristic);
        let mut seen = vec![false; g.nodes.len()];
        let (_, far) = g.bfs(0, &mut seen);
        let mut seen = vec![false; g.nodes.len()];
        let (parent, _) = g.bfs(0, &mut seen);
        let mut ecc = 1;
        let mut v = far;
        while parent[v] != usize::MAX {
            v = parent[v];
            ecc += 1;
        }
        assert!(p.pixels.len() >= ecc);
        assert!(p.pixels.len() <= exhaustive_longest(&g));
    }

    fn blob() -> impl Strategy<Value = BinaryMask> {
        (2usize..14, 2usize..14, proptest::collection::vec(0.0f64..1.0, 196), 0.3f64..0.9).prop_map(|(w, h, u, p)| {
            let mut m = BinaryMask::new(w, h);
            for r in 0..h {
                for c in 0..w {
                    m.set(r, c, u[r * 14 + c] < p);
                }
            }
            let comps = m.components(Connectivity::Eight);
            match comps.iter().max_by_key(|c| c.len()) {
                Some(big) => BinaryMask::from_pixels(w, h, big),
                None => BinaryMask::from_pixels(w, h, &[(0, 0)]),
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn skeleton_preserves_topology(mask in blob()) {
            let s = skeleton_of(&mask);
            prop_assert!(s.pixels().iter().all(|&(r, c)| mask.get(r, c)));
            prop_assert_eq!(s.component_count(), 1);
            let holes = crate::raster::analyze_mask(&mask, Connectivity::Eight).hole_count;
            // Euler number of the (8, 4) skeleton equals that of the region.
            let g = SkeletonGraph::new(s.mask());
            let sk_holes = crate::raster::analyze_mask(s.mask(), Connectivity::Eight).hole_count;
            prop_assert_eq!(sk_holes, holes);
            prop_assert!(g.edge_count() + 1 >= g.nodes.len());
        }

        #[test]
        fn distance_is_lipschitz(mask in blob()) {
            let df = distance_transform(&mask);
            for (r, c) in mask.pixels() {
                for (dr, dc) in RING {
                    let (nr, nc) = (r as isize + dr, c as isize + dc);
                    if nr >= 0 && nc >= 0 && (nr as usize) < mask.height() && (nc as usize) < mask.width() {
                        prop_assert!((df.get(r, c) - df.get(nr as usize, nc as usize)).abs() <= 2f64.sqrt() + 1e-12);
                    }
                }
            }
        }

        #[test]
        fn transform_covariance_of_distances(mask in blob(), k in 0u8..8) {
            let t = Dihedral::all()[k as usize];
            let df = distance_transform(&mask);
            let moved = mask.transformed(t);
            let dm = distance_transform(&moved);
            for (r, c) in mask.pixels() {
                let (mr, mc) = t.map_pixel((r, c), mask.width(), mask.height());
                prop_assert_eq!(df.squared(r, c), dm.squared(mr, mc));
            }
        }
    }
}
