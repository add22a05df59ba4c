use std::f64::consts::PI;

use super::solver::{sin2_half_phi0_symmetric, Arc, OneCut};
use super::{Model, Phase, PhasePoint};
use crate::error::{out_of_range, Error, Result};
use crate::numeric::pv::{cauchy_pv_on_contour, Contour};
use crate::numeric::quadrature::integrate_edges;
use crate::numeric::C64;
use crate::Family;

const PERIODIC_NODES: usize = 2048;
const CONTOUR_NODES: usize = 1500;

/// Eigenvalue density for one phase-diagram point, ready for repeated
/// evaluation. On a gapped support the argument is the angle `α` along the
/// support arc (the polar angle when the arc is centred at the origin).
#[derive(Debug, Clone)]
pub struct Density {
    point: PhasePoint,
    branch: Branch,
}

#[derive(Debug, Clone)]
enum Branch {
    Weak,
    Strong(Box<OneCut>),
    Printed { s2: f64 },
}

impl Density {
    pub fn new(p: &PhasePoint) -> Result<Self> {
        let branch = match (p.phase(), p.model) {
            (Phase::Weak, _) => Branch::Weak,
            (Phase::Strong, Model::Exact) => Branch::Strong(Box::new(OneCut::solve(p.family, p.t, p.gamma, p.v)?)),
            (Phase::Strong, Model::Printed) => Branch::Printed {
                s2: sin2_half_phi0_symmetric(p.family, p.t, p.gamma),
            },
        };
        Ok(Self { point: *p, branch })
    }

    pub fn point(&self) -> &PhasePoint {
        &self.point
    }

    pub fn phase(&self) -> Phase {
        match self.branch {
            Branch::Weak => Phase::Weak,
            _ => Phase::Strong,
        }
    }

    /// The one-cut solution, on the exact strong branch.
    pub fn one_cut(&self) -> Option<&OneCut> {
        match &self.branch {
            Branch::Strong(s) => Some(s),
            _ => None,
        }
    }

    /// Support contour; the full unit circle in the weak phase.
    pub fn arc(&self) -> Arc {
        match &self.branch {
            Branch::Weak => Arc::unit(PI),
            Branch::Strong(s) => s.arc,
            Branch::Printed { s2 } => Arc::unit(2.0 * s2.sqrt().asin()),
        }
    }

    /// Half-width of the parameter range of the support.
    pub fn half_width(&self) -> f64 {
        self.arc().alpha0
    }

    /// Density per unit parameter, without range checks.
    pub fn eval_unchecked(&self, phi: f64) -> C64 {
        let p = &self.point;
        match &self.branch {
            Branch::Weak => weak_density(p.family, p.t, p.gamma, p.v, phi),
            Branch::Strong(s) => s.density(phi),
            Branch::Printed { s2 } => printed_strong_density(p.family, p.t, p.gamma, p.v, *s2, phi),
        }
    }

    pub fn eval(&self, phi: f64) -> Result<C64> {
        let half = self.half_width();
        if phi.abs() > half * (1.0 + 1e-14) {
            return Err(match self.phase() {
                Phase::Weak => out_of_range("phi", phi, "[-pi, pi]"),
                Phase::Strong => Error::OutsideSupport(phi),
            });
        }
        Ok(self.eval_unchecked(phi.clamp(-half, half)))
    }

    /// Point of the complex plane at parameter `phi`.
    pub fn position(&self, phi: f64) -> C64 {
        self.arc().point(phi)
    }

    /// `∫ ρ` over the support.
    pub fn integrate(&self, f: impl Fn(C64) -> C64) -> C64 {
        let arc = self.arc();
        match self.branch {
            Branch::Weak => periodic_sum(|phi| self.eval_unchecked(phi) * f(arc.point(phi)), 0.0),
            _ => integrate_edges(
                |a| self.eval_unchecked(a) * f(arc.point(a)),
                -arc.alpha0,
                arc.alpha0,
                CONTOUR_NODES,
            ),
        }
    }

    /// Samples the density on `n` equispaced parameters across the support.
    pub fn profile(&self, n: usize) -> DensityProfile {
        let half = self.half_width();
        let phis: Vec<f64> = if n < 2 {
            vec![0.0]
        } else {
            (0..n).map(|k| -half + 2.0 * half * k as f64 / (n - 1) as f64).collect()
        };
        let values = phis.iter().map(|&x| self.eval_unchecked(x)).collect();
        let arc = self.arc();
        DensityProfile {
            point: self.point,
            phase: self.phase(),
            phis,
            values,
            support_half_width: half,
            endpoint_angle: match &self.branch {
                Branch::Strong(s) => s.phi0(),
                _ => half,
            },
            centre: arc.centre,
            radius: arc.radius,
        }
    }
}

/// Sampled density with its support geometry. For a gapped support the
/// samples are per unit angle along a circle of the given `centre` and
/// `radius`; `endpoint_angle` is the polar angle of the support endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub point: PhasePoint,
    pub phase: Phase,
    pub phis: Vec<f64>,
    pub values: Vec<C64>,
    pub support_half_width: f64,
    pub endpoint_angle: f64,
    pub centre: f64,
    pub radius: f64,
}

/// Midpoint rule on a full period, offset so that no node hits `shift`.
fn periodic_sum(f: impl Fn(f64) -> C64, shift: f64) -> C64 {
    let n = PERIODIC_NODES;
    let h = 2.0 * PI / n as f64;
    (0..n).map(|k| f(shift - PI + (k as f64 + 0.5) * h)).sum::<C64>() * h
}

/// Gapless density `(1/2π)[1 + γ(1-v) tz/(1∓tz) + γ(1+v)(t/z)/(1∓t/z)]`.
pub fn weak_density(family: Family, t: f64, gamma: f64, v: f64, phi: f64) -> C64 {
    let z = C64::from_polar(1.0, phi);
    let s = -family.sign();
    let a = t * z / (1.0 - s * t * z);
    let b = t / z / (1.0 - s * t / z);
    (1.0 + gamma * (1.0 - v) * a + gamma * (1.0 + v) * b) / (2.0 * PI)
}

/// The closed-form gapped density with a v-dependent imaginary part (reference form).
pub fn printed_strong_density(family: Family, t: f64, gamma: f64, v: f64, s2: f64, phi: f64) -> C64 {
    let (c, sn) = ((phi / 2.0).cos(), (phi / 2.0).sin());
    let root = (s2 - sn * sn).max(0.0).sqrt();
    match family {
        Family::H => {
            let num = C64::new((1.0 - t) * c, -v * (1.0 + t) * sn);
            num * (2.0 * t * (gamma - 1.0) / (PI * (1.0 - t)) * root / ((1.0 - t).powi(2) + 4.0 * t * sn * sn))
        }
        Family::E => {
            let num = C64::new((1.0 + t) * c, -v * (1.0 - t) * sn);
            num * (2.0 * t * (gamma + 1.0) / (PI * (1.0 + t)) * root / ((1.0 + t).powi(2) - 4.0 * t * sn * sn))
        }
    }
}

/// `ρ(φ)` at one point; see [`Density`] for the meaning of `phi` on a
/// gapped support.
pub fn density_circle(p: &PhasePoint, phi: f64) -> Result<C64> {
    Density::new(p)?.eval(phi)
}

/// Polar angle `φ₀` of the support endpoints.
pub fn support_boundary(p: &PhasePoint) -> Result<f64> {
    if p.phase() != Phase::Strong {
        return Err(Error::WrongPhase { expected: "strong" });
    }
    if p.model == Model::Printed || p.v == 0.0 {
        let s2 = sin2_half_phi0_symmetric(p.family, p.t, p.gamma).min(1.0);
        return Ok(2.0 * s2.sqrt().asin());
    }
    Ok(OneCut::solve(p.family, p.t, p.gamma, p.v)?.phi0())
}

/// Left-hand side of the saddle-point equation at `z`.
pub(crate) fn saddle_lhs(family: Family, t: f64, gamma: f64, v: f64, z: C64) -> C64 {
    let s = family.sign();
    C64::new(0.0, -gamma * t) * ((1.0 - v) * z / (1.0 + s * t * z) - (1.0 + v) / (z + s * t))
}

/// `|LHS(z) - P∫ μ(w) i(z+w)/(z-w) dw|` at the support point with parameter
/// `phi`, where `μ dw = ρ dφ`. On the unit circle the kernel is `cot((φ-θ)/2)`.
pub fn saddle_residual(p: &PhasePoint, phi: f64) -> Result<f64> {
    let d = Density::new(p)?;
    saddle_residual_with(&d, phi)
}

/// [`saddle_residual`] for a prepared density.
pub fn saddle_residual_with(d: &Density, phi: f64) -> Result<f64> {
    let p = d.point();
    let half = d.half_width();
    let arc = d.arc();
    let z = arc.point(phi);
    let lhs = saddle_lhs(p.family, p.t, p.gamma, p.v, z);
    let rhs = match d.phase() {
        Phase::Weak => {
            if phi.abs() > PI {
                return Err(out_of_range("phi", phi, "[-pi, pi]"));
            }
            let r0 = d.eval_unchecked(phi);
            // P∫ cot((φ-θ)/2) dθ vanishes over a full period.
            periodic_sum(
                |th| (d.eval_unchecked(th) - r0) / ((phi - th) / 2.0).tan(),
                phi,
            )
        }
        Phase::Strong => {
            if phi.abs() >= half {
                return Err(out_of_range("phi", phi, "the open support"));
            }
            let mu = |a: f64| d.eval_unchecked(a) / arc.tangent(a);
            let cpv = cauchy_pv_on_contour(&arc, mu, phi, CONTOUR_NODES)?;
            let total = integrate_edges(|a| d.eval_unchecked(a), -half, half, CONTOUR_NODES);
            C64::new(0.0, -1.0) * total - C64::new(0.0, 2.0) * z * cpv
        }
    };
    Ok((lhs - rhs).norm())
}
