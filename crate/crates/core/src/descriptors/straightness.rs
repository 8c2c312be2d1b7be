use crate::error::{param, Result};
use crate::geometry::Point;

/// Parameters of the multiscale boundary straightness.
#[derive(Debug, Clone, PartialEq)]
pub struct StraightnessConfig {
    /// A boundary pixel is straight when its turning angle is at most this.
    pub angle_threshold_deg: f64,
    /// Step sizes, positive and strictly increasing.
    pub scales: Vec<u32>,
}

impl Default for StraightnessConfig {
    fn default() -> Self {
        Self {
            angle_threshold_deg: 15.0,
            scales: vec![1, 2, 4, 8, 16, 32],
        }
    }
}

impl StraightnessConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.angle_threshold_deg > 0.0 && self.angle_threshold_deg < 180.0) {
            return Err(param(format!(
                "straightness angle must lie in (0, 180) degrees, got {}",
                self.angle_threshold_deg
            )));
        }
        if self.scales.is_empty() || self.scales[0] == 0 || self.scales.windows(2).any(|w| w[0] >= w[1]) {
            return Err(param("straightness scales must be positive and strictly increasing"));
        }
        Ok(())
    }
}

/// Straightness of a closed boundary walk at each usable scale.
#[derive(Debug, Clone, PartialEq)]
pub struct StraightnessResult {
    /// `(s, straightness_s)` for every scale that was not skipped.
    pub per_scale: Vec<(u32, f64)>,
    /// Maximum over `per_scale`, or 0 when every scale was skipped.
    pub value: f64,
    /// Scale reaching `value` (smallest on ties); 1 when all were skipped.
    pub best_scale: u32,
    /// The walk was too short for every configured scale.
    pub all_skipped: bool,
}

/// Whether the turn from `u` to `v` is at most the angle with cosine `cos_a`.
/// Zero vectors are never straight.
fn within_angle(u: Point, v: Point, cos_a: f64) -> bool {
    let dot = (u.0 * v.0 + u.1 * v.1) as f64;
    let uu = (u.0 * u.0 + u.1 * u.1) as f64;
    let vv = (v.0 * v.0 + v.1 * v.1) as f64;
    if uu == 0.0 || vv == 0.0 {
        return false;
    }
    let bound = uu * vv * cos_a * cos_a;
    if cos_a >= 0.0 {
        dot >= 0.0 && dot * dot >= bound
    } else {
        dot >= 0.0 || dot * dot <= bound
    }
}

/// Fraction of walk pixels whose chords to the pixels `s` steps behind and
/// ahead (indices modulo the walk length) turn by at most the threshold.
/// Scales with a walk shorter than `2 s + 2` are skipped.
pub fn straightness(walk: &[Point], cfg: &StraightnessConfig) -> StraightnessResult {
    let n = walk.len();
    let cos_a = cfg.angle_threshold_deg.to_radians().cos();
    let mut per_scale = Vec::new();
    for &s in &cfg.scales {
        let s = s as usize;
        if n < 2 * s + 2 {
            continue;
        }
        let straight = (0..n)
            .filter(|&i| {
                let (a, p, b) = (walk[(i + n - s) % n], walk[i], walk[(i + s) % n]);
                within_angle((p.0 - a.0, p.1 - a.1), (b.0 - p.0, b.1 - p.1), cos_a)
            })
            .count();
        per_scale.push((s as u32, straight as f64 / n as f64));
    }
    let mut best = None::<(u32, f64)>;
    for &(s, v) in &per_scale {
        if best.is_none_or(|(_, bv)| v > bv) {
            best = Some((s, v));
        }
    }
    match best {
        Some((s, v)) => StraightnessResult {
            per_scale,
            value: v,
            best_scale: s,
            all_skipped: false,
        },
        None => StraightnessResult {
            per_scale,
            value: 0.0,
            best_scale: 1,
            all_skipped: true,
        },
    }
}
