//! Local non-monotonicity witnesses: triples `(R, E1, E2)` showing that
//! neither feature is a monotone function of the other around `R`.

/// A witness triple of sample indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub r: usize,
    pub e1: usize,
    pub e2: usize,
}

/// Outcome of [`find_nonmonotone_triple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<Witness>,
    /// The evaluation budget ran out before the search finished.
    pub capped: bool,
}

/// Default evaluation budget.
pub const DEFAULT_WITNESS_CAP: u64 = 1_000_000;

fn a_first(x: &[f64], y: &[f64], r: usize, e: usize) -> bool {
    x[e] > x[r] && y[e] >= y[r]
}

fn a_second(x: &[f64], y: &[f64], r: usize, e: usize) -> bool {
    (x[e] >= x[r] && y[e] < y[r]) || (x[e] <= x[r] && y[e] > y[r])
}

fn b_first(x: &[f64], y: &[f64], r: usize, e: usize) -> bool {
    x[e] < x[r] && y[e] <= y[r]
}

fn b_second(x: &[f64], y: &[f64], r: usize, e: usize) -> bool {
    (x[e] <= x[r] && y[e] > y[r]) || (x[e] > x[r] && y[e] <= y[r])
}

/// Condition A or condition B for the triple.
pub fn is_witness(x: &[f64], y: &[f64], w: Witness) -> bool {
    let Witness { r, e1, e2 } = w;
    (a_first(x, y, r, e1) && a_second(x, y, r, e2)) || (b_first(x, y, r, e1) && b_second(x, y, r, e2))
}

/// The lexicographically smallest witness `(R, E1, E2)`, if any.
///
/// With `R` fixed each condition splits into independent tests on `E1` and
/// `E2`, so the smallest qualifying index for each role is found in one
/// scan and the search costs `O(N²)` evaluations of `(R, E)` pairs. The
/// search stops once `cap` pair evaluations have been made.
pub fn find_nonmonotone_triple(x: &[f64], y: &[f64], cap: u64) -> WitnessSearch {
    assert_eq!(x.len(), y.len(), "feature columns differ in length");
    let n = x.len();
    let mut used = 0u64;
    for r in 0..n {
        let (mut a1, mut a2, mut b1, mut b2) = (None, None, None, None);
        for e in 0..n {
            if used >= cap {
                return WitnessSearch {
                    witness: None,
                    capped: true,
                };
            }
            used += 1;
            if a1.is_none() && a_first(x, y, r, e) {
                a1 = Some(e);
            }
            if a2.is_none() && a_second(x, y, r, e) {
                a2 = Some(e);
            }
            if b1.is_none() && b_first(x, y, r, e) {
                b1 = Some(e);
            }
            if b2.is_none() && b_second(x, y, r, e) {
                b2 = Some(e);
            }
        }
        let a = a1.zip(a2);
        let b = b1.zip(b2);
        let best = match (a, b) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        };
        if let Some((e1, e2)) = best {
            return WitnessSearch {
                witness: Some(Witness { r, e1, e2 }),
                capped: false,
            };
        }
    }
    WitnessSearch {
        witness: None,
        capped: false,
    }
}
