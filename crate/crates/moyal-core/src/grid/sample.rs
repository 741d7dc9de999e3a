//! Closed-form sample functions for the numeric layer.

use num_complex::Complex64;

use crate::error::GridError;

use super::{GridFunction, GridSpec};

/// Descriptors for the supported closed-form functions.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleExpr {
    /// `(2 pi sigma^2)^{-m/2} exp(-|x - center|^2 / (2 sigma^2))`,
    /// normalized to unit integral; peak value `(2 pi)^{-m/2} sigma^{-m}`.
    Gaussian { sigma: f64, center: Vec<f64> },
    /// `exp(i k . x)`, multiplied by a centered unit-peak Gaussian window
    /// when `window_sigma` is set.
    PlaneWave {
        momentum: Vec<f64>,
        window_sigma: Option<f64>,
    },
    /// Product of one-dimensional Hermite functions
    /// `h_n(x) = (2^n n! sqrt(pi) sigma)^{-1/2} H_n(x/sigma) exp(-x^2/(2 sigma^2))`.
    Hermite { orders: Vec<u32>, sigma: f64 },
}

/// Physicists' Hermite polynomial `H_n(t)`.
pub fn hermite_poly(n: u32, t: f64) -> f64 {
    let mut h0 = 1.0;
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * t;
    for k in 1..n {
        let next = 2.0 * t * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = next;
    }
    h1
}

fn hermite_function(n: u32, sigma: f64, x: f64) -> f64 {
    let t = x / sigma;
    let mut log_norm = 0.0f64;
    for k in 1..=n {
        log_norm += (k as f64).ln();
    }
    let norm = ((2.0f64).powi(n as i32) * log_norm.exp() * std::f64::consts::PI.sqrt() * sigma)
        .sqrt()
        .recip();
    norm * hermite_poly(n, t) * (-0.5 * t * t).exp()
}

/// Samples a closed-form descriptor on the grid.
pub fn sample(spec: &GridSpec, expr: &SampleExpr) -> Result<GridFunction, GridError> {
    let m = spec.dim();
    match expr {
        SampleExpr::Gaussian { sigma, center } => {
            if center.len() != m || *sigma <= 0.0 {
                return Err(GridError::UnsupportedDescriptor(format!("{:?}", expr)));
            }
            let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-(m as f64) / 2.0);
            let two_sigma_sq = 2.0 * sigma * sigma;
            Ok(GridFunction::from_fn(*spec, |x| {
                let r2: f64 = x
                    .iter()
                    .zip(center)
                    .map(|(xi, ci)| (xi - ci) * (xi - ci))
                    .sum();
                Complex64::new(norm * (-r2 / two_sigma_sq).exp(), 0.0)
            }))
        }
        SampleExpr::PlaneWave {
            momentum,
            window_sigma,
        } => {
            if momentum.len() != m {
                return Err(GridError::UnsupportedDescriptor(format!("{:?}", expr)));
            }
            if let Some(s) = window_sigma {
                if *s <= 0.0 {
                    return Err(GridError::UnsupportedDescriptor(format!("{:?}", expr)));
                }
            }
            let k = momentum.clone();
            let win = *window_sigma;
            Ok(GridFunction::from_fn(*spec, move |x| {
                let angle: f64 = x.iter().zip(&k).map(|(xi, ki)| xi * ki).sum();
                let amp = match win {
                    Some(s) => {
                        let r2: f64 = x.iter().map(|xi| xi * xi).sum();
                        (-r2 / (2.0 * s * s)).exp()
                    }
                    None => 1.0,
                };
                Complex64::from_polar(amp, angle)
            }))
        }
        SampleExpr::Hermite { orders, sigma } => {
            if orders.len() != m || *sigma <= 0.0 {
                return Err(GridError::UnsupportedDescriptor(format!("{:?}", expr)));
            }
            let orders = orders.clone();
            let sigma = *sigma;
            Ok(GridFunction::from_fn(*spec, move |x| {
                let mut v = 1.0;
                for (axis, &n) in orders.iter().enumerate() {
                    v *= hermite_function(n, sigma, x[axis]);
                }
                Complex64::new(v, 0.0)
            }))
        }
    }
}
