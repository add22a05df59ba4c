//! Large-K saddle points of the E and H unitary models on the unit circle.

mod density;
mod free_energy;
mod gw;
mod solver;

pub use density::{density_circle, printed_strong_density, saddle_residual, saddle_residual_with, support_boundary, weak_density, Density, DensityProfile};
pub use free_energy::{dfdt, dfdt_density, free_energy_closed, free_energy_quadrature, phase_order, PhaseOrder};
pub use gw::{deformed_contour, gw_limit_deviation, laurent_potential, log_potential_contour, ContourTrace};
pub use solver::{Arc, OneCut};

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Result};
use crate::Family;

/// Gapless (`Weak`) or gapped (`Strong`) eigenvalue support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Weak,
    Strong,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Weak => "weak",
            Phase::Strong => "strong",
        })
    }
}

/// Which large-K solution to use away from `v = 0`.
///
/// `Exact` solves the one-cut problem for every `v`; `Printed` uses the
/// closed-form strong-coupling densities, the v-independent critical curve
/// and the `v²` free-energy corrections in reference form. Both agree at `v = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    #[default]
    Exact,
    Printed,
}

/// A point `(t, γ, v)` of the phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub family: Family,
    pub t: f64,
    pub gamma: f64,
    pub v: f64,
    pub model: Model,
}

impl PhasePoint {
    pub fn new(family: Family, t: f64, gamma: f64, v: f64) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(out_of_range("t", t, "(0, 1)"));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(out_of_range("gamma", gamma, "[0, inf)"));
        }
        if !(v > -1.0 && v < 1.0) {
            return Err(out_of_range("v", v, "(-1, 1)"));
        }
        Ok(Self {
            family,
            t,
            gamma,
            v,
            model: Model::Exact,
        })
    }

    pub fn with_model(mut self, model: Model) -> Self {
        self.model = model;
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// Critical coupling at this `(t, v)` for the selected model.
    pub fn gamma_c(&self) -> f64 {
        match self.model {
            Model::Exact => critical_gamma_v(self.family, self.t, self.v),
            Model::Printed => critical_gamma_unchecked(self.family, self.t),
        }
    }

    pub fn phase(&self) -> Phase {
        if self.gamma <= self.gamma_c() {
            Phase::Weak
        } else {
            Phase::Strong
        }
    }

    /// Critical `t` at this `(γ, v)`: weak below, strong above. `None` when
    /// the line of constant `γ` never enters the strong phase.
    pub fn t_c(&self) -> Option<f64> {
        match self.model {
            Model::Exact => critical_t(self.family, self.gamma, self.v),
            Model::Printed => critical_t(self.family, self.gamma, 0.0),
        }
    }
}

fn critical_gamma_unchecked(family: Family, t: f64) -> f64 {
    match family {
        Family::H => (1.0 + t) / (2.0 * t),
        Family::E => (1.0 - t) / (2.0 * t),
    }
}

/// Critical coupling `(1 ± t)/(2t)` of the symmetric models.
pub fn critical_gamma(family: Family, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    Ok(critical_gamma_unchecked(family, t))
}

/// Critical coupling for asymmetry `v`, where the weak density first
/// develops a double zero (or, for H at large `t`, where the wall stops
/// truncating the Cauchy sum).
pub fn critical_gamma_v(family: Family, t: f64, v: f64) -> f64 {
    let s = (1.0 - v * v).sqrt();
    match family {
        Family::E => (1.0 - t * t) / (2.0 * t * (s + t)),
        Family::H => {
            let av = v.abs();
            if t <= ((1.0 - av) / (1.0 + av)).sqrt() {
                (1.0 - t * t) / (2.0 * t * (s - t))
            } else {
                1.0 / (1.0 - av)
            }
        }
    }
}

/// Inverse of [`critical_gamma_v`] in `t`.
pub fn critical_t(family: Family, gamma: f64, v: f64) -> Option<f64> {
    let s = (1.0 - v * v).sqrt();
    match family {
        Family::E => {
            if gamma <= 0.0 {
                return None;
            }
            Some((-gamma * s + (gamma * gamma * s * s + 2.0 * gamma + 1.0).sqrt()) / (2.0 * gamma + 1.0))
        }
        Family::H => {
            let av = v.abs();
            if gamma <= 1.0 / (1.0 - av) {
                return None;
            }
            let a = 2.0 * gamma - 1.0;
            let disc = gamma * gamma * s * s - a;
            let t = (gamma * s - disc.max(0.0).sqrt()) / a;
            (t > 0.0 && t <= ((1.0 - av) / (1.0 + av)).sqrt() + 1e-15).then_some(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn critical_values() {
        assert_relative_eq!(critical_gamma(Family::H, 0.5).unwrap(), 1.5);
        assert_relative_eq!(critical_gamma(Family::E, 0.5).unwrap(), 0.5);
        assert!(critical_gamma(Family::E, 1.0 - 1e-12).unwrap() < 1e-11);
        assert!(critical_gamma(Family::E, 1.0).is_err());
        for fam in [Family::E, Family::H] {
            for &t in &[0.1, 0.5, 0.9] {
                assert_relative_eq!(critical_gamma_v(fam, t, 0.0), critical_gamma(fam, t).unwrap(), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn critical_t_inverts() {
        for fam in [Family::E, Family::H] {
            for &v in &[0.0, 0.25, 0.5, -0.5] {
                for &t in &[0.1, 0.3, 0.5] {
                    let g = critical_gamma_v(fam, t, v);
                    if let Some(tc) = critical_t(fam, g, v) {
                        assert_relative_eq!(tc, t, max_relative = 1e-10);
                    } else {
                        panic!("{fam} {v} {t}");
                    }
                }
            }
        }
        assert_eq!(critical_t(Family::H, 1.5, 0.5), None);
        assert_relative_eq!(critical_t(Family::H, 2.0, 0.0).unwrap(), 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn h_boundary_is_continuous() {
        let v: f64 = 0.5;
        let ts = ((1.0 - v) / (1.0 + v)).sqrt();
        let lo = critical_gamma_v(Family::H, ts - 1e-9, v);
        let hi = critical_gamma_v(Family::H, ts + 1e-9, v);
        assert!((lo - hi).abs() < 1e-6);
    }

    #[test]
    fn phases() {
        let p = PhasePoint::new(Family::H, 0.5, 1.0, 0.0).unwrap();
        assert_eq!(p.phase(), Phase::Weak);
        let p = PhasePoint::new(Family::H, 0.5, 2.0, 0.0).unwrap();
        assert_eq!(p.phase(), Phase::Strong);
        assert!(PhasePoint::new(Family::H, 1.0, 2.0, 0.0).is_err());
        assert!(PhasePoint::new(Family::H, 0.5, -1.0, 0.0).is_err());
        assert!(PhasePoint::new(Family::H, 0.5, 1.0, 1.0).is_err());
    }
}
