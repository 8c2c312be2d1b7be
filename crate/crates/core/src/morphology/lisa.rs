use crate::error::{param, Error, Result};

/// Symmetric, non-negative spatial weights with an empty diagonal, stored as
/// per-unit neighbour lists.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialWeights {
    neighbours: Vec<Vec<(usize, f64)>>,
}

impl SpatialWeights {
    /// Builds weights from unordered pairs `(i, j, w)`; each pair is stored
    /// in both directions.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize, f64)]) -> Result<Self> {
        let mut neighbours = vec![Vec::new(); n];
        for &(i, j, w) in pairs {
            if i >= n || j >= n {
                return Err(param(format!("weight pair ({i}, {j}) out of range for {n} units")));
            }
            if i == j {
                return Err(param("spatial weights must have an empty diagonal"));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(param(format!("weight {w} is not a finite non-negative number")));
            }
            neighbours[i].push((j, w));
            neighbours[j].push((i, w));
        }
        Ok(Self { neighbours })
    }

    /// Binary 4-adjacency weights over a `width` x `height` grid of units in
    /// row-major order.
    pub fn rook(width: usize, height: usize) -> Self {
        let mut pairs = Vec::new();
        for r in 0..height {
            for c in 0..width {
                let i = r * width + c;
                if c + 1 < width {
                    pairs.push((i, i + 1, 1.0));
                }
                if r + 1 < height {
                    pairs.push((i, i + width, 1.0));
                }
            }
        }
        Self::from_pairs(width * height, &pairs).expect("grid pairs are valid")
    }

    pub fn len(&self) -> usize {
        self.neighbours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbours.is_empty()
    }

    /// Sum of all `w_ij` over ordered pairs.
    pub fn total(&self) -> f64 {
        self.neighbours.iter().flatten().map(|&(_, w)| w).sum()
    }

    pub fn neighbours(&self, i: usize) -> &[(usize, f64)] {
        &self.neighbours[i]
    }
}

/// Global value and one local value per unit.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialStatistic {
    pub global: f64,
    pub local: Vec<f64>,
}

/// Deviations from the mean and their sum of squares.
fn centred(values: &[f64], w: &SpatialWeights) -> Result<(Vec<f64>, f64, f64)> {
    if values.len() != w.len() {
        return Err(param(format!("{} values for {} spatial units", values.len(), w.len())));
    }
    if values.len() < 2 {
        return Err(param("need at least two spatial units"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(param("values must be finite"));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let z: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let ss: f64 = z.iter().map(|d| d * d).sum();
    if ss == 0.0 {
        return Err(Error::Undefined("zero variance"));
    }
    let s0 = w.total();
    if s0 == 0.0 {
        return Err(Error::Undefined("all spatial weights are zero"));
    }
    Ok((z, ss, s0))
}

/// Moran's I: `(N / S0) * Σ w_ij z_i z_j / Σ z_i²`, with local values
/// `Σ_j w_ij z_i z_j / (Σ_j w_ij · Σ z²)`. Units without neighbours get 0.
pub fn morans_i(values: &[f64], w: &SpatialWeights) -> Result<SpatialStatistic> {
    let (z, ss, s0) = centred(values, w)?;
    let mut cross = 0.0;
    let mut local = Vec::with_capacity(z.len());
    for (i, zi) in z.iter().enumerate() {
        let (mut num, mut wi) = (0.0, 0.0);
        for &(j, wij) in w.neighbours(i) {
            num += wij * zi * z[j];
            wi += wij;
        }
        cross += num;
        local.push(if wi > 0.0 { num / (wi * ss) } else { 0.0 });
    }
    Ok(SpatialStatistic {
        global: z.len() as f64 / s0 * cross / ss,
        local,
    })
}

/// Geary's C: `(N / 2 S0) * Σ w_ij (x_i - x_j)² / Σ z_i²`, with local values
/// `Σ_j w_ij (x_i - x_j)² / (2 Σ_j w_ij · Σ z²)`.
pub fn gearys_c(values: &[f64], w: &SpatialWeights) -> Result<SpatialStatistic> {
    let (_, ss, s0) = centred(values, w)?;
    let mut total = 0.0;
    let mut local = Vec::with_capacity(values.len());
    for (i, xi) in values.iter().enumerate() {
        let (mut num, mut wi) = (0.0, 0.0);
        for &(j, wij) in w.neighbours(i) {
            num += wij * (xi - values[j]).powi(2);
            wi += wij;
        }
        total += num;
        local.push(if wi > 0.0 { num / (2.0 * wi * ss) } else { 0.0 });
    }
    Ok(SpatialStatistic {
        global: values.len() as f64 / (2.0 * s0) * total / ss,
        local,
    })
}

/// `1 - min(C, 2)`: 1 for perfect positive association, 0 for none.
pub fn reversed_gearys_c(c: f64) -> f64 {
    1.0 - c.min(2.0)
}
