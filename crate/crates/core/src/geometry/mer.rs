use super::hull::{expanded_cell_hull, ConvexHullResult};
use super::{cross, Point};

/// Oriented minimum-area enclosing rectangle of a region's cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect {
    /// Shorter side, in pixels.
    pub width: f64,
    /// Longer side, in pixels.
    pub length: f64,
    /// Orientation of the long side as displayed (columns to the right, rows
    /// upward), degrees in `[0, 180)`.
    pub angle_deg: f64,
    /// Integer `(d_row, d_col)` direction of the long side.
    pub direction: (i64, i64),
    /// Single-pixel input: all fields zero.
    pub degenerate: bool,
    /// Width equals length, so the orientation is only defined modulo 90.
    pub square_tie: bool,
}

impl OrientedRect {
    fn degenerate() -> Self {
        Self {
            width: 0.0,
            length: 0.0,
            angle_deg: 0.0,
            direction: (0, 1),
            degenerate: true,
            square_tie: false,
        }
    }
}

/// Angle in `[0, 180)` of a `(d_row, d_col)` vector, measured from the column
/// axis toward decreasing rows.
///
/// The vector is first turned by quarter turns into the open first quadrant,
/// so vectors that differ by a quarter turn get angles that differ by exactly
/// 90 in floating point.
pub fn direction_angle_deg(v: (i64, i64)) -> f64 {
    let (mut x, mut y) = (v.1, -v.0);
    if x == 0 && y == 0 {
        return 0.0;
    }
    let mut turns = 0;
    while !(x > 0 && y >= 0) {
        (x, y) = (-y, x);
        turns += 1;
    }
    let base = (y as f64).atan2(x as f64).to_degrees();
    if turns % 2 == 1 {
        base + 90.0
    } else {
        base
    }
}

struct Candidate {
    /// Extent along the edge times |u|.
    along: i128,
    /// Extent across the edge times |u|.
    across: i128,
    /// |u|^2.
    norm: i128,
    edge: Point,
}

impl Candidate {
    fn area_num(&self) -> i128 {
        self.along * self.across
    }
}

/// Rotating calipers over the hull of the region's cells. Every candidate
/// rectangle has a side on a hull edge; the smallest area wins, ties going to
/// the smaller orientation angle.
pub fn min_enclosing_rect(hull: &ConvexHullResult) -> OrientedRect {
    if hull.vertices.len() <= 1 {
        return OrientedRect::degenerate();
    }
    let poly = expanded_cell_hull(hull);
    let n = poly.len();
    let at = |i: usize| poly[i % n];
    let dot = |i: usize, j: usize| {
        let (a, b, v) = (at(i), at(i + 1), at(j));
        ((b.0 - a.0) as i128) * ((v.0 - a.0) as i128) + ((b.1 - a.1) as i128) * ((v.1 - a.1) as i128)
    };
    let height = |i: usize, j: usize| cross(at(i), at(i + 1), at(j));

    let (mut jmax, mut kh, mut mmin) = (1usize, 1usize, 1usize);
    let mut best: Option<(Candidate, f64)> = None;
    for i in 0..n {
        if jmax < i + 1 {
            jmax = i + 1;
        }
        while dot(i, jmax + 1) > dot(i, jmax) {
            jmax += 1;
        }
        if kh < jmax {
            kh = jmax;
        }
        while height(i, kh + 1) > height(i, kh) {
            kh += 1;
        }
        if mmin < kh {
            mmin = kh;
        }
        while dot(i, mmin + 1) < dot(i, mmin) {
            mmin += 1;
        }
        let (a, b) = (at(i), at(i + 1));
        let u = (b.0 - a.0, b.1 - a.1);
        let cand = Candidate {
            along: dot(i, jmax) - dot(i, mmin),
            across: height(i, kh),
            norm: (u.0 as i128).pow(2) + (u.1 as i128).pow(2),
            edge: u,
        };
        let angle = direction_angle_deg(long_side(&cand));
        let better = match &best {
            None => true,
            Some((b, b_angle)) => {
                let lhs = cand.area_num() * b.norm;
                let rhs = b.area_num() * cand.norm;
                lhs < rhs || (lhs == rhs && angle < *b_angle)
            }
        };
        if better {
            best = Some((cand, angle));
        }
    }
    let (c, angle_deg) = best.expect("hull has edges");
    let scale = (c.norm as f64).sqrt();
    let (along, across) = (c.along as f64 / scale, c.across as f64 / scale);
    OrientedRect {
        width: along.min(across),
        length: along.max(across),
        angle_deg,
        direction: long_side(&c),
        degenerate: false,
        square_tie: c.along == c.across,
    }
}

fn long_side(c: &Candidate) -> (i64, i64) {
    if c.along >= c.across {
        c.edge
    } else {
        (-c.edge.1, c.edge.0)
    }
}
