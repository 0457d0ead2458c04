//! Exponential timescale fits.
//!
//! Fits are unweighted least squares on log residuals, which keeps them
//! implementation-independent and deterministic. Double-exponential decays
//! are separated by peeling: fit the slow component on the tail where the
//! fast one has died, subtract it, and fit the fast component on the early
//! residuals.

/// y(x) ≈ amplitude · exp(−rate · x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpFit {
    pub amplitude: f64,
    pub rate: f64,
}

impl ExpFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.amplitude * (-self.rate * x).exp()
    }

    /// 1/rate, infinite for a flat fit.
    pub fn timescale(&self) -> f64 {
        1.0 / self.rate
    }
}

/// Least-squares line through (x, ln y) over points with y > 0. Returns
/// (intercept, slope) or None if fewer than two usable points remain or the
/// x values are degenerate.
fn log_linear(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| x.is_finite() && *y > 0.0 && y.is_finite())
        .map(|&(x, y)| (x, y.ln()))
        .collect();
    let n = usable.len() as f64;
    if usable.len() < 2 {
        return None;
    }
    let sx: f64 = usable.iter().map(|(x, _)| x).sum();
    let sy: f64 = usable.iter().map(|(_, y)| y).sum();
    let sxx: f64 = usable.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = usable.iter().map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < f64::EPSILON * (n * sxx).abs().max(1.0) {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    Some((intercept, slope))
}

/// Fit a single decaying exponential to all points with y > 0.
pub fn fit_exponential(points: &[(f64, f64)]) -> Option<ExpFit> {
    let (intercept, slope) = log_linear(points)?;
    Some(ExpFit {
        amplitude: intercept.exp(),
        rate: -slope,
    })
}

/// Fit a single exponential to the tail region x > tail_start.
pub fn fit_exponential_tail(points: &[(f64, f64)], tail_start: f64) -> Option<ExpFit> {
    let tail: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, _)| *x > tail_start)
        .collect();
    fit_exponential(&tail)
}

/// A two-exponential decomposition y ≈ fast + slow (rates in 1/x units,
/// fast.rate > slow.rate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleExpFit {
    pub fast: ExpFit,
    pub slow: ExpFit,
}

/// Peel a double exponential: the slow component is fitted on x ≥
/// slow_start (where the fast one is assumed dead), subtracted, and the
/// fast component fitted on the residuals at x ≤ fast_end. Returns None
/// when either region lacks usable points.
pub fn fit_double_exponential(
    points: &[(f64, f64)],
    fast_end: f64,
    slow_start: f64,
) -> Option<DoubleExpFit> {
    let slow_pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, _)| *x >= slow_start)
        .collect();
    let slow = fit_exponential(&slow_pts)?;

    let residuals: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, _)| *x <= fast_end)
        .map(|&(x, y)| (x, y - slow.eval(x)))
        .collect();
    let fast = fit_exponential(&residuals)?;
    if !(fast.rate.is_finite() && slow.rate.is_finite()) {
        return None;
    }
    Some(DoubleExpFit { fast, slow })
}
