use std::f64::consts::PI;

use crate::error::{out_of_range, Result};
use crate::numeric::chebyshev::{chebyshev_eval, ChebKind};
use crate::numeric::roots::{bisect, log_grid};
use crate::numeric::C64;
use crate::Family;

const GW_SAMPLES: usize = 2048;

/// `sup_φ |V(e^{iφ}) - β_GW[(1-v)z + (1+v)/z]|` with `V` the E or H
/// potential at `β = β_GW/t`.
pub fn gw_limit_deviation(family: Family, t: f64, beta_gw: f64, v: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    let beta = beta_gw / t;
    let s = family.sign();
    let mut worst: f64 = 0.0;
    for k in 0..GW_SAMPLES {
        let z = C64::from_polar(1.0, -PI + 2.0 * PI * k as f64 / GW_SAMPLES as f64);
        let pot = s * beta * ((1.0 - v) * (1.0 + s * t * z).ln() + (1.0 + v) * (1.0 + s * t / z).ln());
        let gw = beta_gw * ((1.0 - v) * z + (1.0 + v) / z);
        worst = worst.max((pot - gw).norm());
    }
    Ok(worst)
}

/// Real locus `Im V = 0` traced ray by ray.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourTrace {
    pub phis: Vec<f64>,
    /// Root nearest `|z| = 1` on each ray, `None` where there is none.
    pub radii: Vec<Option<f64>>,
}

impl ContourTrace {
    /// `true` when every ray carries a root.
    pub fn is_connected(&self) -> bool {
        self.radii.iter().all(Option::is_some)
    }

    /// Closed polyline through the traced points (only rays with a root).
    pub fn points(&self) -> Vec<C64> {
        self.phis
            .iter()
            .zip(&self.radii)
            .filter_map(|(&p, r)| r.map(|r| C64::from_polar(r, p)))
            .collect()
    }

    /// Rays without a root.
    pub fn gaps(&self) -> Vec<f64> {
        self.phis
            .iter()
            .zip(&self.radii)
            .filter(|(_, r)| r.is_none())
            .map(|(&p, _)| p)
            .collect()
    }
}

fn trace(f: impl Fn(f64, f64) -> f64, resolution: usize) -> ContourTrace {
    let grid = log_grid(1e-4, 1e4, 4001);
    let mut phis = Vec::with_capacity(resolution);
    let mut radii = Vec::with_capacity(resolution);
    for k in 0..resolution {
        let phi = -PI + 2.0 * PI * (k as f64 + 0.5) / resolution as f64;
        let g = |r: f64| f(r, phi);
        let vals: Vec<f64> = grid.iter().map(|&r| g(r)).collect();
        let mut best: Option<f64> = None;
        for i in 0..grid.len() - 1 {
            if vals[i] == 0.0 {
                best = nearest(best, grid[i]);
            } else if vals[i].is_finite() && vals[i + 1].is_finite() && vals[i].signum() == -vals[i + 1].signum() {
                if let Ok(r) = bisect(g, grid[i], grid[i + 1], 1e-15) {
                    if g(r).abs() < 1e-8 * (1.0 + vals[i].abs().min(vals[i + 1].abs())) {
                        best = nearest(best, r);
                    }
                }
            }
        }
        phis.push(phi);
        radii.push(best);
    }
    ContourTrace { phis, radii }
}

fn nearest(best: Option<f64>, r: f64) -> Option<f64> {
    match best {
        Some(b) if b.ln().abs() <= r.ln().abs() => Some(b),
        _ => Some(r),
    }
}

/// Traces `Im V(z) = 0` for `V(z) = Σ_k c_k [(1-v) z^k + (1+v) z^{-k}]`.
///
/// On the ray `z = r e^{iφ}`, `Im V / sin φ = Σ_k c_k U_{k-1}(cos φ)[(1-v) r^k - (1+v) r^{-k}]`.
pub fn deformed_contour(coeffs: &[f64], v: f64, resolution: usize) -> Result<ContourTrace> {
    if !(v > -1.0 && v < 1.0) {
        return Err(out_of_range("v", v, "(-1, 1)"));
    }
    if resolution == 0 {
        return Err(out_of_range("resolution", resolution, "[1, inf)"));
    }
    let f = |r: f64, phi: f64| {
        let c = phi.cos();
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &ck)| {
                let k = i as i32 + 1;
                ck * chebyshev_eval(ChebKind::U, (k - 1) as usize, &c) * ((1.0 - v) * r.powi(k) - (1.0 + v) * r.powi(-k))
            })
            .sum::<f64>()
    };
    Ok(trace(f, resolution))
}

/// Laurent potential evaluated at `z`.
pub fn laurent_potential(coeffs: &[f64], v: f64, z: C64) -> C64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &ck)| {
            let k = i as i32 + 1;
            ck * ((1.0 - v) * z.powi(k) + (1.0 + v) * z.powi(-k))
        })
        .sum()
}

/// Traces `Im V = 0` for the E or H logarithmic potential
/// `±[(1-v) log(1 ± tz) + (1+v) log(1 ± t/z)]`; gaps mark rays where the
/// locus is disconnected.
pub fn log_potential_contour(family: Family, t: f64, v: f64, resolution: usize) -> Result<ContourTrace> {
    if !(t > 0.0 && t < 1.0) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    let s = family.sign();
    let f = move |r: f64, phi: f64| {
        let z = C64::from_polar(r, phi);
        let pot = (1.0 - v) * (1.0 + s * t * z).ln() + (1.0 + v) * (1.0 + s * t / z).ln();
        pot.im / phi.sin()
    };
    Ok(trace(f, resolution))
}
