//! Power-law fitting and coarsening scaling predictions.
//!
//! Coarsening with a single length scale `xi(t) ~ t^gamma` in `d` dimensions
//! gives `N_d/N ~ t^(-d gamma)`, `N_w/N - 1 ~ t^(-gamma)`,
//! `1 - S ~ t^(-gamma)` and a consensus time `t_c ~ N^(1/(d gamma))`.
//! Shortcuts at density `p` cut the coarsening off at
//! `t_x ~ p^(-1/(d gamma))`.

use crate::error::{Error, Result};

/// Log-log least-squares fit `y = amplitude * x^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub amplitude: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub point_count: usize,
}

/// Ordinary least squares on `(ln x, ln y)` over points with positive
/// coordinates and `x` inside the closed window.
pub fn fit_power_law(points: &[(f64, f64)], window: (f64, f64)) -> Result<FitResult> {
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::Fit(format!("empty window [{lo}, {hi}]")));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0 && x >= lo && x <= hi && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return Err(Error::Fit(format!("{} usable points in [{lo}, {hi}], need 2", logs.len())));
    }
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(lx, ly) in &logs {
        let (dx, dy) = (lx - mx, ly - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx <= f64::EPSILON * k * (mx.abs() + 1.0) {
        return Err(Error::Fit("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs.iter().map(|&(lx, ly)| (ly - intercept - slope * lx).powi(2)).sum();
    // a perfectly flat series is fit exactly
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(FitResult { exponent: slope, amplitude: intercept.exp(), window, r_squared, point_count: logs.len() })
}

/// Exponents implied by a coarsening length `xi ~ t^gamma` in `d` dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPrediction {
    gamma: f64,
    dimension: u32,
}

impl ScalingPrediction {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Slope of `N_d / N` against `t`.
    pub fn nd_slope(&self) -> f64 {
        -f64::from(self.dimension) * self.gamma
    }

    /// Slope of `N_w / N - 1` against `t`.
    pub fn nw_slope(&self) -> f64 {
        -self.gamma
    }

    /// Slope of `1 - S` against `t`.
    pub fn failure_slope(&self) -> f64 {
        -self.gamma
    }

    /// Exponent of `t_c` against `N`.
    pub fn tc_exponent(&self) -> f64 {
        1.0 / (f64::from(self.dimension) * self.gamma)
    }
}

pub fn predict_scaling(gamma: f64, dimension: u32) -> Result<ScalingPrediction> {
    if !(gamma > 0.0) || !gamma.is_finite() || dimension == 0 {
        return Err(Error::param(format!("need gamma > 0 and d >= 1, got ({gamma}, {dimension})")));
    }
    Ok(ScalingPrediction { gamma, dimension })
}

/// Crossover time `p^(-1/(d gamma))` (unit amplitude).
pub fn predict_crossover(p: f64, gamma: f64, dimension: u32) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::param(format!("shortcut density must be positive, got {p}")));
    }
    let pred = predict_scaling(gamma, dimension)?;
    Ok(p.powf(-pred.tc_exponent()))
}

pub const SW_ONSET_THRESHOLD: f64 = 10.0;

/// Whether `n * p` is large enough for shortcuts to matter.
pub fn sw_onset_check(n: usize, p: f64) -> bool {
    sw_onset_check_with(n, p, SW_ONSET_THRESHOLD)
}

pub fn sw_onset_check_with(n: usize, p: f64, threshold: f64) -> bool {
    n as f64 * p >= threshold
}
