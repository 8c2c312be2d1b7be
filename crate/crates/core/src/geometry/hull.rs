use super::{cross, Point};

/// Convex hull of a boundary walk.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexHullResult {
    /// Strictly convex, counter-clockwise, starting at the lexicographically
    /// smallest vertex.
    pub vertices: Vec<Point>,
    /// Shoelace area of `vertices` (pixel-centre polygon).
    pub algebraic_area: f64,
    /// Fewer than three vertices (collinear or single-point input).
    pub degenerate: bool,
}

/// Convex hull of a closed boundary walk such as the output of
/// [`trace_mask_boundary`](crate::raster::trace_mask_boundary).
///
/// Only the leftmost and rightmost walk point of each row can be a hull
/// vertex, and collecting them row by row yields them already in
/// lexicographic order, so a monotone chain finishes in time linear in the
/// walk length plus the number of rows. Works for any point sequence,
/// including walks that retrace one-pixel-wide parts. Empty input yields an
/// empty, degenerate result.
pub fn convex_hull(boundary: &[Point]) -> ConvexHullResult {
    let mut vertices = andrew_sorted(row_extremes(boundary));
    if let Some(start) = (0..vertices.len()).min_by_key(|&i| vertices[i]) {
        vertices.rotate_left(start);
    }
    let twice = super::PolyChain::closed(vertices.clone()).twice_signed_area();
    ConvexHullResult {
        degenerate: vertices.len() < 3,
        algebraic_area: twice.unsigned_abs() as f64 / 2.0,
        vertices,
    }
}

/// Leftmost and rightmost point per row, in lexicographic order.
fn row_extremes(points: &[Point]) -> Vec<Point> {
    let Some(rmin) = points.iter().map(|p| p.0).min() else {
        return Vec::new();
    };
    let rmax = points.iter().map(|p| p.0).max().unwrap();
    let rows = (rmax - rmin + 1) as usize;
    let mut lo = vec![i64::MAX; rows];
    let mut hi = vec![i64::MIN; rows];
    for &(r, c) in points {
        let i = (r - rmin) as usize;
        lo[i] = lo[i].min(c);
        hi[i] = hi[i].max(c);
    }
    let mut out = Vec::with_capacity(2 * rows);
    for i in 0..rows {
        if lo[i] > hi[i] {
            continue;
        }
        out.push((rmin + i as i64, lo[i]));
        if hi[i] != lo[i] {
            out.push((rmin + i as i64, hi[i]));
        }
    }
    out
}

/// Monotone-chain hull of an arbitrary point set, counter-clockwise and
/// strictly convex.
pub(crate) fn andrew_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    andrew_sorted(pts)
}

/// Monotone chain over points already sorted and deduplicated.
fn andrew_sorted(pts: Vec<Point>) -> Vec<Point> {
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Hull of the unit cells of the hull vertices, in cell-corner coordinates.
/// This is the convex hull of the region's cells as a planar set.
pub fn expanded_cell_hull(hull: &ConvexHullResult) -> Vec<Point> {
    let corners: Vec<Point> = hull
        .vertices
        .iter()
        .flat_map(|&(r, c)| [(r, c), (r + 1, c), (r, c + 1), (r + 1, c + 1)])
        .collect();
    andrew_hull(&corners)
}

type FPoint = (f64, f64);

/// Sutherland-Hodgman clip against `coord[axis] >= bound` (or `<=`).
fn clip_axis(poly: &[FPoint], axis: usize, bound: f64, keep_above: bool) -> Vec<FPoint> {
    let get = |p: &FPoint| if axis == 0 { p.0 } else { p.1 };
    let inside = |p: &FPoint| {
        if keep_above {
            get(p) >= bound
        } else {
            get(p) <= bound
        }
    };
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let (ia, ib) = (inside(&a), inside(&b));
        if ia {
            out.push(a);
        }
        if ia != ib {
            let t = (bound - get(&a)) / (get(&b) - get(&a));
            let mut q = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
            if axis == 0 {
                q.0 = bound;
            } else {
                q.1 = bound;
            }
            out.push(q);
        }
    }
    out
}

fn farea(poly: &[FPoint]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let s: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum();
    s.abs() / 2.0
}

/// Column interval of a convex polygon on the horizontal line `row = y`.
fn row_interval(poly: &[Point], y: i64) -> Option<(f64, f64)> {
    let n = poly.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if a.0 == y {
            lo = lo.min(a.1 as f64);
            hi = hi.max(a.1 as f64);
        }
        if (a.0 < y && y < b.0) || (b.0 < y && y < a.0) {
            let x = a.1 as f64 + (y - a.0) as f64 * (b.1 - a.1) as f64 / (b.0 - a.0) as f64;
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Number of pixel cells whose overlap with the region's convex hull is at
/// least half a cell. Cells overlapping by exactly one half count as inside.
pub fn discretize_hull_area(hull: &ConvexHullResult) -> usize {
    if hull.vertices.is_empty() {
        return 0;
    }
    let poly = expanded_cell_hull(hull);
    let fpoly: Vec<FPoint> = poly.iter().map(|&(r, c)| (r as f64, c as f64)).collect();
    let rmin = poly.iter().map(|p| p.0).min().unwrap();
    let rmax = poly.iter().map(|p| p.0).max().unwrap();
    let mut count = 0usize;
    for r in rmin..rmax {
        let strip = clip_axis(&clip_axis(&fpoly, 0, r as f64, true), 0, (r + 1) as f64, false);
        if strip.len() < 3 {
            continue;
        }
        let cmin = strip.iter().map(|p| p.1).fold(f64::INFINITY, f64::min).floor() as i64;
        let cmax = strip.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max).ceil() as i64;
        // Columns fully covered on both strip edges are fully inside.
        let (full_lo, full_hi) = match (row_interval(&poly, r), row_interval(&poly, r + 1)) {
            (Some(a), Some(b)) => (a.0.max(b.0).ceil() as i64, b.1.min(a.1).floor() as i64),
            _ => (0, -1),
        };
        for c in cmin..cmax {
            if c >= full_lo && c < full_hi {
                count += 1;
                continue;
            }
            let cell = clip_axis(&clip_axis(&strip, 1, c as f64, true), 1, (c + 1) as f64, false);
            if farea(&cell) >= 0.5 - 1e-9 {
                count += 1;
            }
        }
    }
    count
}
