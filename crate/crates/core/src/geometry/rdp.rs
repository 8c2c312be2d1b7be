use super::{Point, PolyChain};
use crate::error::{param, Result};

/// Euclidean distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (ur, uc) = ((b.0 - a.0) as f64, (b.1 - a.1) as f64);
    let (pr, pc) = ((p.0 - a.0) as f64, (p.1 - a.1) as f64);
    let len2 = ur * ur + uc * uc;
    if len2 == 0.0 {
        return (pr * pr + pc * pc).sqrt();
    }
    let t = ((pr * ur + pc * uc) / len2).clamp(0.0, 1.0);
    let (dr, dc) = (pr - t * ur, pc - t * uc);
    (dr * dr + dc * dc).sqrt()
}

/// Marks the vertices of `v[lo..=hi]` kept by Ramer-Douglas-Peucker.
fn rdp_mark(v: &[Point], lo: usize, hi: usize, epsilon: f64, keep: &mut [bool]) {
    keep[lo] = true;
    keep[hi] = true;
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        if b <= a + 1 {
            continue;
        }
        let mut far = a;
        let mut far_d = -1.0;
        for i in a + 1..b {
            let d = point_segment_distance(v[i], v[a], v[b]);
            if d > far_d {
                far = i;
                far_d = d;
            }
        }
        if far_d > epsilon {
            keep[far] = true;
            stack.push((a, far));
            stack.push((far, b));
        }
    }
}

/// Ramer-Douglas-Peucker simplification. Output vertices are a subset of the
/// input in the original order; every dropped vertex lies within `epsilon`
/// of the output chain.
///
/// A closed chain is split at its first vertex and the vertex farthest from
/// it, and both halves are simplified as open chains.
pub fn rdp_simplify(chain: &PolyChain, epsilon: f64) -> Result<PolyChain> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(param(format!("epsilon must be non-negative, got {epsilon}")));
    }
    let v = &chain.vertices;
    let n = v.len();
    if n <= 2 {
        return Ok(chain.clone());
    }
    let kept: Vec<Point> = if chain.closed {
        let d2 = |p: Point| (p.0 - v[0].0).pow(2) + (p.1 - v[0].1).pow(2);
        let far = (1..n).fold(0, |best, i| if d2(v[i]) > d2(v[best]) { i } else { best });
        if far == 0 {
            return Ok(PolyChain::closed(vec![v[0]]));
        }
        let mut ext = v.clone();
        ext.push(v[0]);
        let mut keep = vec![false; n + 1];
        rdp_mark(&ext, 0, far, epsilon, &mut keep);
        rdp_mark(&ext, far, n, epsilon, &mut keep);
        (0..n).filter(|&i| keep[i]).map(|i| v[i]).collect()
    } else {
        let mut keep = vec![false; n];
        rdp_mark(v, 0, n - 1, epsilon, &mut keep);
        (0..n).filter(|&i| keep[i]).map(|i| v[i]).collect()
    };
    Ok(PolyChain {
        vertices: kept,
        closed: chain.closed,
    })
}
