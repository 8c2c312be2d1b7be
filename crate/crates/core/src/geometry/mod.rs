//! Planar geometry on pixel coordinates: convex hulls, discretized hull area,
//! polyline simplification and the oriented minimum enclosing rectangle.
//!
//! Points are integer `(row, col)` pairs. A pixel `(r, c)` stands for the
//! closed unit cell `[r, r + 1] x [c, c + 1]`; hull vertices are pixel
//! positions, while cell-level quantities (discretized hull area, rectangle
//! sides) work on cell corners.

mod hull;
mod mer;
mod rdp;

pub use hull::{convex_hull, discretize_hull_area, expanded_cell_hull, ConvexHullResult};
pub use mer::{direction_angle_deg, min_enclosing_rect, OrientedRect};
pub use rdp::{point_segment_distance, rdp_simplify};

use crate::raster::Pixel;

/// Integer point `(row, col)`.
pub type Point = (i64, i64);

pub(crate) fn to_point(p: Pixel) -> Point {
    (p.0 as i64, p.1 as i64)
}

/// Cross product of `a - o` and `b - o`. Positive when `o, a, b` turn
/// counter-clockwise as displayed.
pub fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ar, ac) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (br, bc) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ar * bc - ac * br
}

/// An ordered vertex list, open or closed. A closed chain does not repeat its
/// first vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyChain {
    pub vertices: Vec<Point>,
    pub closed: bool,
}

impl PolyChain {
    pub fn closed(vertices: Vec<Point>) -> Self {
        Self {
            vertices,
            closed: true,
        }
    }

    pub fn open(vertices: Vec<Point>) -> Self {
        Self {
            vertices,
            closed: false,
        }
    }

    pub fn from_pixels(pixels: &[Pixel], closed: bool) -> Self {
        Self {
            vertices: pixels.iter().map(|&p| to_point(p)).collect(),
            closed,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed shoelace area, treating the chain as closed.
    pub fn twice_signed_area(&self) -> i128 {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return 0;
        }
        (0..n)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
            })
            .sum()
    }
}

/// Absolute shoelace area of a closed polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonArea {
    pub area: f64,
    /// Fewer than three vertices.
    pub degenerate: bool,
}

pub fn surveyor_area(polygon: &PolyChain) -> PolygonArea {
    if polygon.len() < 3 {
        return PolygonArea {
            area: 0.0,
            degenerate: true,
        };
    }
    PolygonArea {
        area: polygon.twice_signed_area().unsigned_abs() as f64 / 2.0,
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shoelace_basics() {
        let unit = PolyChain::closed(vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(surveyor_area(&unit).area, 1.0);
        let line = PolyChain::closed(vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(surveyor_area(&line).area, 0.0);
        assert!(surveyor_area(&PolyChain::closed(vec![(0, 0), (3, 3)])).degenerate);
    }

    #[test]
    fn pentagon_matches_fan_triangulation() {
        let v = vec![(0, 2), (2, 0), (5, 1), (5, 4), (2, 5)];
        let fan: f64 = (1..v.len() - 1)
            .map(|i| cross(v[0], v[i], v[i + 1]).abs() as f64 / 2.0)
            .sum();
        let got = surveyor_area(&PolyChain::closed(v)).area;
        assert!((got - fan).abs() < 1e-9);
    }
}
