use crate::error::{param, Result};
use crate::geometry::{cross, Point};

/// Zadeh S-function rising from 0 at `a` to 1 at `b`.
pub fn s_membership(x: f64, a: f64, b: f64) -> f64 {
    if x <= a {
        0.0
    } else if x >= b {
        1.0
    } else {
        let m = (a + b) / 2.0;
        if x <= m {
            2.0 * ((x - a) / (b - a)).powi(2)
        } else {
            1.0 - 2.0 * ((x - b) / (b - a)).powi(2)
        }
    }
}

/// Complement of [`s_membership`].
pub fn z_membership(x: f64, a: f64, b: f64) -> f64 {
    1.0 - s_membership(x, a, b)
}

/// Trapezoidal Π-function: 1 on `[lo, hi]`, linear to 0 over `shoulder`.
pub fn pi_membership(x: f64, lo: f64, hi: f64, shoulder: f64) -> f64 {
    if x >= lo && x <= hi {
        1.0
    } else if x < lo {
        (1.0 - (lo - x) / shoulder).max(0.0)
    } else {
        (1.0 - (x - hi) / shoulder).max(0.0)
    }
}

/// Parameters of the fuzzy rule-based rectangularity. Angles in degrees,
/// lengths in pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRectConfig {
    /// Interior angles inside this band are fully "near 90".
    pub right_angle_band: (f64, f64),
    /// Width of the linear shoulders around `right_angle_band`.
    pub band_shoulder: f64,
    /// Near-right vertices closer than this are penalized.
    pub separation_min: f64,
    pub target_vertex_count: f64,
    /// Full membership up to this many markedly obtuse vertices, none from
    /// twice as many.
    pub max_obtuse_count: f64,
    pub max_acute_count: f64,
    /// S-function ramp for "much larger than 90".
    pub obtuse_ramp: (f64, f64),
    /// Z-function ramp for "much smaller than 90".
    pub acute_ramp: (f64, f64),
}

impl Default for FuzzyRectConfig {
    fn default() -> Self {
        Self {
            right_angle_band: (60.0, 120.0),
            band_shoulder: 10.0,
            separation_min: 3.0,
            target_vertex_count: 4.0,
            max_obtuse_count: 2.0,
            max_acute_count: 2.0,
            obtuse_ramp: (120.0, 150.0),
            acute_ramp: (30.0, 60.0),
        }
    }
}

impl FuzzyRectConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.right_angle_band;
        if !(lo < 90.0 && 90.0 < hi) {
            return Err(param("right-angle band must contain 90 degrees"));
        }
        if !(self.band_shoulder > 0.0 && self.separation_min > 0.0) {
            return Err(param("band shoulder and minimum separation must be positive"));
        }
        if !(self.max_obtuse_count > 0.0 && self.max_acute_count > 0.0 && self.target_vertex_count > 0.0) {
            return Err(param("vertex counts must be positive"));
        }
        if !(self.obtuse_ramp.0 < self.obtuse_ramp.1 && self.acute_ramp.0 < self.acute_ramp.1) {
            return Err(param("membership ramps must be increasing intervals"));
        }
        Ok(())
    }
}

/// Interior angles, in degrees, of a counter-clockwise polygon (positive
/// shoelace area in `(row, col)` coordinates). Reflex vertices exceed 180.
pub fn interior_angles(polygon: &[Point]) -> Vec<f64> {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let (a, p, b) = (polygon[(i + n - 1) % n], polygon[i], polygon[(i + 1) % n]);
            let (u, v) = ((p.0 - a.0, p.1 - a.1), (b.0 - p.0, b.1 - p.1));
            let turn = (cross((0, 0), u, v) as f64).atan2((u.0 * v.0 + u.1 * v.1) as f64);
            180.0 - turn.to_degrees()
        })
        .collect()
}

/// Fuzzy AND (minimum) of the rules: about four near-right vertices, well
/// separated; few markedly obtuse vertices; few markedly acute vertices.
/// Polygons with fewer than three vertices score 0.
pub fn fuzzy_rectangularity(polygon: &[Point], cfg: &FuzzyRectConfig) -> f64 {
    if polygon.len() < 3 {
        return 0.0;
    }
    let angles = interior_angles(polygon);
    let (lo, hi) = cfg.right_angle_band;
    let right: Vec<f64> = angles.iter().map(|&a| pi_membership(a, lo, hi, cfg.band_shoulder)).collect();
    let count: f64 = right.iter().sum();
    let mu_count = (1.0 - (count - cfg.target_vertex_count).abs() / 2.0).max(0.0);

    let near: Vec<Point> = polygon.iter().zip(&right).filter(|(_, &m)| m > 0.0).map(|(&p, _)| p).collect();
    let mut min_sep = f64::INFINITY;
    for i in 0..near.len() {
        for j in i + 1..near.len() {
            let d = (((near[i].0 - near[j].0).pow(2) + (near[i].1 - near[j].1).pow(2)) as f64).sqrt();
            min_sep = min_sep.min(d);
        }
    }
    let mu_sep = s_membership(min_sep, cfg.separation_min / 2.0, cfg.separation_min);

    let obtuse: f64 = angles.iter().map(|&a| s_membership(a, cfg.obtuse_ramp.0, cfg.obtuse_ramp.1)).sum();
    let acute: f64 = angles.iter().map(|&a| z_membership(a, cfg.acute_ramp.0, cfg.acute_ramp.1)).sum();
    let mu_obtuse = z_membership(obtuse, cfg.max_obtuse_count, 2.0 * cfg.max_obtuse_count);
    let mu_acute = z_membership(acute, cfg.max_acute_count, 2.0 * cfg.max_acute_count);
    mu_count.min(mu_sep).min(mu_obtuse).min(mu_acute)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memberships() {
        assert_eq!(s_membership(120.0, 120.0, 150.0), 0.0);
        assert_eq!(s_membership(135.0, 120.0, 150.0), 0.5);
        assert_eq!(s_membership(150.0, 120.0, 150.0), 1.0);
        assert_eq!(z_membership(45.0, 30.0, 60.0), 0.5);
        assert_eq!(pi_membership(90.0, 60.0, 120.0, 10.0), 1.0);
        assert_eq!(pi_membership(125.0, 60.0, 120.0, 10.0), 0.5);
        assert_eq!(pi_membership(135.0, 60.0, 120.0, 10.0), 0.0);
    }

    #[test]
    fn rectangle_scores_one() {
        let poly = vec![(0, 0), (19, 0), (19, 39), (0, 39)];
        let angles = interior_angles(&poly);
        assert!(angles.iter().all(|a| (a - 90.0).abs() < 1e-9), "{angles:?}");
        assert_eq!(fuzzy_rectangularity(&poly, &FuzzyRectConfig::default()), 1.0);
    }

    #[test]
    fn octagon_and_triangle_score_low() {
        let oct = vec![(0, 4), (4, 0), (10, 0), (14, 4), (14, 10), (10, 14), (4, 14), (0, 10)];
        // Listed clockwise on screen; reverse to the counter-clockwise order.
        let oct: Vec<_> = oct.into_iter().rev().collect();
        assert_eq!(fuzzy_rectangularity(&oct, &FuzzyRectConfig::default()), 0.0);
        let tri = vec![(0, 0), (10, 0), (0, 10)];
        assert!(fuzzy_rectangularity(&tri, &FuzzyRectConfig::default()) <= 0.5);
        assert_eq!(fuzzy_rectangularity(&[(0, 0), (3, 3)], &FuzzyRectConfig::default()), 0.0);
    }

    #[test]
    fn l_shape_reflex_corner_is_obtuse() {
        let l = vec![(0, 0), (20, 0), (20, 20), (10, 20), (10, 10), (0, 10)];
        let angles = interior_angles(&l);
        assert!(angles.iter().filter(|&&a| (a - 270.0).abs() < 1e-9).count() == 1, "{angles:?}");
        let v = fuzzy_rectangularity(&l, &FuzzyRectConfig::default());
        assert!((v - 0.5).abs() < 1e-12, "{v}");
    }

    #[test]
    fn close_corners_are_penalized() {
        let thin = vec![(0, 0), (1, 0), (1, 30), (0, 30)];
        assert_eq!(fuzzy_rectangularity(&thin, &FuzzyRectConfig::default()), 0.0);
    }
}
