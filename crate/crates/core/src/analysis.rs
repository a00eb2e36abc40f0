//! Finite-range negligibility checks, the Cauchy density, and the
//! normalization integral of `1/(x^2+x+1)` over the real line.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// A named real function. Non-finite values are reported as evaluation errors.
#[derive(Clone)]
pub struct RealFunction {
    description: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RealFunction {
    pub fn new(description: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RealFunction { description: description.into(), eval: Arc::new(f) }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let y = (self.eval)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation(format!("{} is not finite at {x}: {y}", self.description)))
        }
    }
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealFunction({})", self.description)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NegligibleOnRange,
    NotNegligibleOnRange,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegligibilityReport {
    pub grid: Vec<u64>,
    pub products: Vec<f64>,
    pub verdict: Verdict,
}

/// Final product must fall below this for a negligible verdict.
pub const NEGLIGIBLE_THRESHOLD: f64 = 1e-6;
/// The products must be non-increasing over this many trailing grid points.
pub const TAIL_POINTS: usize = 4;

/// Geometric grid `round(2^(k/density))` for `k = 0, 1, ...`, deduplicated,
/// up to and including `n_max`.
pub fn doubling_grid(n_max: u64, density: u32) -> Vec<u64> {
    let density = density.max(1);
    let mut grid: Vec<u64> = Vec::new();
    for k in 0.. {
        let n = 2f64.powf(k as f64 / density as f64).round() as u64;
        if n > n_max {
            break;
        }
        if grid.last() != Some(&n) {
            grid.push(n);
        }
    }
    grid
}

/// Evaluates `p(n) * n^poly_degree` on the doubling grid up to `n_max`.
pub fn negligibility_check(p: &RealFunction, poly_degree: u32, n_max: u64) -> Result<NegligibilityReport> {
    negligibility_check_with_density(p, poly_degree, n_max, 1)
}

/// As [`negligibility_check`] with `density` grid points per doubling.
pub fn negligibility_check_with_density(
    p: &RealFunction,
    poly_degree: u32,
    n_max: u64,
    density: u32,
) -> Result<NegligibilityReport> {
    if n_max < 8 {
        return Err(Error::domain("n_max must be at least 8"));
    }
    if poly_degree == 0 {
        return Err(Error::domain("polynomial degree must be at least 1"));
    }
    let grid = doubling_grid(n_max, density);
    let products = grid
        .iter()
        .map(|&n| Ok(p.eval(n as f64)? * (n as f64).powi(poly_degree as i32)))
        .collect::<Result<Vec<f64>>>()?;
    let tail = &products[products.len().saturating_sub(TAIL_POINTS)..];
    let decreasing = tail.windows(2).all(|w| w[1] <= w[0]);
    let last = *products.last().expect("grid has at least four points");
    let verdict = if decreasing && last.abs() < NEGLIGIBLE_THRESHOLD {
        Verdict::NegligibleOnRange
    } else {
        Verdict::NotNegligibleOnRange
    };
    Ok(NegligibilityReport { grid, products, verdict })
}

/// `(1/pi) * alpha / ((x - mu)^2 + alpha^2)`.
pub fn cauchy_pdf(x: f64, mu: f64, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::domain(format!("scale alpha must be positive, got {alpha}")));
    }
    let d = x - mu;
    Ok(alpha / (PI * (d * d + alpha * alpha)))
}

/// `1 / (x^2 + x + 1)`.
pub fn reciprocal_poly(x: f64) -> f64 {
    1.0 / (x * x + x + 1.0)
}

/// `2 pi / sqrt 3`, the integral of `1/(x^2+x+1)` over the real line.
pub fn normalizing_constant() -> f64 {
    2.0 * PI * (1.0f64 / 3.0).sqrt()
}

/// Upper bound on `int_T^inf dx/(x^2+x+1)` and on `int_-inf^-T`, valid for `T > 1`.
pub fn tail_bound(t: f64) -> f64 {
    1.0 / (t - 1.0)
}

const PANELS_PER_CHUNK: usize = 4096;

/// Composite Simpson over `[lo, hi]` with `steps` sub-intervals (rounded up
/// to even). Panels are summed in fixed chunks and the chunk sums combined
/// pairwise, so the result is bit-identical with or without threads.
pub fn simpson(f: impl Fn(f64) -> f64 + Sync, lo: f64, hi: f64, steps: usize) -> f64 {
    let steps = (steps.max(2) + 1) & !1;
    let pairs = steps / 2;
    let h = (hi - lo) / steps as f64;
    let chunk_sum = |chunk: usize| -> f64 {
        let start = chunk * PANELS_PER_CHUNK;
        let end = (start + PANELS_PER_CHUNK).min(pairs);
        (start..end)
            .map(|k| {
                let x0 = lo + (2 * k) as f64 * h;
                f(x0) + 4.0 * f(x0 + h) + f(x0 + 2.0 * h)
            })
            .sum()
    };
    let chunks = pairs.div_ceil(PANELS_PER_CHUNK);
    #[cfg(feature = "parallel")]
    let partials: Vec<f64> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(chunk_sum).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<f64> = (0..chunks).map(chunk_sum).collect();
    pairwise_sum(&partials) * h / 3.0
}

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub steps: usize,
    /// Quadrature over `[-T, T]` plus both tail bounds.
    pub integral: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub normalized: f64,
    /// Integral over `(-inf, -1/2]`: quadrature on `[-T, -1/2]` plus the left tail bound.
    pub lower_half: f64,
}

/// Integrates `1/(x^2+x+1)` over `[-T, T]` by Simpson, adds the tail bounds
/// and divides by `N = 2 pi sqrt(1/3)`.
pub fn reciprocal_poly_normalization(t: f64, steps: usize) -> Result<NormalizationReport> {
    if !t.is_finite() || t < 100.0 {
        return Err(Error::domain(format!("truncation bound {t} must be at least 100")));
    }
    if steps < 10_000 {
        return Err(Error::domain(format!("{steps} steps is below the 10^4 minimum")));
    }
    let n = normalizing_constant();
    let tail = tail_bound(t);
    let integral = simpson(reciprocal_poly, -t, t, steps) + 2.0 * tail;
    // half the panels cover [-T, -1/2], which is just under half the interval
    let lower_half = simpson(reciprocal_poly, -t, -0.5, steps / 2) + tail;
    Ok(NormalizationReport { t, steps, integral, n, normalized: integral / n, lower_half })
}
