use serde::Serialize;

use super::density::Density;
use super::solver::OneCut;
use super::{Model, Phase, PhasePoint};
use crate::error::{Error, Result};
use crate::numeric::quadrature::integrate_legendre_adaptive;
use crate::Family;

const FD_STEP: f64 = 1e-3;

fn weak_f(p: &PhasePoint, t: f64) -> f64 {
    -p.gamma * p.gamma * (1.0 - p.v * p.v) * (1.0 - t * t).ln()
}

/// Antiderivative of the closed-form gapped `dF/dt` (up to a constant).
fn strong_antiderivative(p: &PhasePoint, t: f64) -> f64 {
    let v2 = p.v * p.v;
    match p.family {
        Family::H => -(2.0 * p.gamma - 1.0) * (1.0 - t).ln() - 0.5 * t.ln() + v2 * ((1.0 - t).ln() - 0.5 * t.ln()),
        Family::E => (2.0 * p.gamma + 1.0) * (1.0 + t).ln() - 0.5 * t.ln() + v2 * ((1.0 + t).ln() - 0.5 * t.ln()),
    }
}

fn closed_strong_dfdt(p: &PhasePoint, t: f64) -> f64 {
    let v2 = p.v * p.v;
    match p.family {
        Family::H => (2.0 * p.gamma - 1.0) / (1.0 - t) - 0.5 / t + v2 * (-1.0 / (1.0 - t) - 0.5 / t),
        Family::E => (2.0 * p.gamma + 1.0) / (1.0 + t) - 0.5 / t + v2 * (1.0 / (1.0 + t) - 0.5 / t),
    }
}

/// `dF/dt` in closed or algebraic form: `2γ²t(1-v²)/(1-t²)` when gapless,
/// the resolvent formula (exact model) or the reference expression
/// (printed model) when gapped.
pub fn dfdt(p: &PhasePoint) -> Result<f64> {
    Ok(match p.phase() {
        Phase::Weak => 2.0 * p.gamma * p.gamma * p.t * (1.0 - p.v * p.v) / (1.0 - p.t * p.t),
        Phase::Strong => match p.model {
            Model::Printed => closed_strong_dfdt(p, p.t),
            Model::Exact if p.v == 0.0 => closed_strong_dfdt(p, p.t),
            Model::Exact => OneCut::solve(p.family, p.t, p.gamma, p.v)?.dfdt(),
        },
    })
}

/// `dF/dt = γ ∫ ρ [(1-v) z/(1 ∓ tz) + (1+v)/(z ∓ t)]` by quadrature over the support.
pub fn dfdt_density(p: &PhasePoint) -> Result<f64> {
    let d = Density::new(p)?;
    let (t, g, v) = (p.t, p.gamma, p.v);
    let s = p.family.sign();
    let val = d.integrate(|z| g * ((1.0 - v) * z / (1.0 + s * t * z) + (1.0 + v) / (z + s * t)));
    Ok(val.re)
}

/// Planar free energy `F = lim K⁻² log Z`.
///
/// Gapless: `-γ²(1-v²) log(1-t²)`. Gapped: continuity at the critical `t_c`
/// plus the integral of `dF/dt` from `t_c`, in closed form where available
/// and by Gauss-Legendre quadrature of the algebraic derivative otherwise.
pub fn free_energy_closed(p: &PhasePoint) -> Result<f64> {
    if p.gamma == 0.0 {
        return Ok(0.0);
    }
    if p.phase() == Phase::Weak {
        return Ok(weak_f(p, p.t));
    }
    let tc = p.t_c().ok_or(Error::WrongPhase { expected: "weak" })?;
    let base = weak_f(p, tc);
    if p.model == Model::Printed || p.v == 0.0 {
        return Ok(base + strong_antiderivative(p, p.t) - strong_antiderivative(p, tc));
    }
    let f = |t: f64| dfdt(&p.with_t(t)).unwrap_or(f64::NAN);
    Ok(base + integrate_legendre_adaptive(f, tc, p.t, 16, 1e-11)?)
}

/// Planar free energy as `∫₀ᵗ dF/dt'` with the density-weighted derivative
/// evaluated on the correct branch at every `t'`.
pub fn free_energy_quadrature(p: &PhasePoint) -> Result<f64> {
    if p.gamma == 0.0 {
        return Ok(0.0);
    }
    let f = |t: f64| dfdt_density(&p.with_t(t)).unwrap_or(f64::NAN);
    let split = p.t_c().filter(|&tc| tc < p.t);
    let check = |x: f64| {
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::NoConvergence("density-weighted dF/dt".into()))
        }
    };
    match split {
        None => check(integrate_legendre_adaptive(f, 0.0, p.t, 8, 1e-11)?),
        Some(tc) => {
            let weak = integrate_legendre_adaptive(f, 0.0, tc, 8, 1e-11)?;
            let strong = integrate_legendre_adaptive(f, tc, p.t, 8, 1e-10)?;
            check(weak + strong)
        }
    }
}

/// Order of the transition and the size of the discontinuity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseOrder {
    pub family: Family,
    pub model: Model,
    pub t_c: f64,
    pub gamma_c: f64,
    pub v: f64,
    /// 2 if `d²F/dt²` jumps, else 3.
    pub order: u8,
    /// Jump of the discontinuous derivative, weak side minus strong side.
    pub jump: f64,
    pub f2_weak: f64,
    pub f2_strong: f64,
    pub f3_weak: f64,
    pub f3_strong: f64,
}

/// Second and third derivatives of `F` at `t_c` from one side, extrapolated
/// from a cubic through `F'(t_c ± kδ)`, `k = 1..4`, with one Richardson step.
fn one_sided(fp: &impl Fn(f64) -> Result<f64>, tc: f64, dir: f64) -> Result<(f64, f64)> {
    let at = |h: f64| -> Result<(f64, f64)> {
        let y: Vec<f64> = (1..=4).map(|k| fp(tc + dir * k as f64 * h)).collect::<Result<_>>()?;
        // Derivatives at 0 of the cubic through (k, y_k), k = 1..4.
        let d1 = (-26.0 * y[0] + 57.0 * y[1] - 42.0 * y[2] + 11.0 * y[3]) / 6.0;
        let d2 = 3.0 * y[0] - 8.0 * y[1] + 7.0 * y[2] - 2.0 * y[3];
        Ok((dir * d1 / h, d2 / (h * h)))
    };
    let (a1, a2) = at(FD_STEP)?;
    let (b1, b2) = at(0.5 * FD_STEP)?;
    Ok(((8.0 * b1 - a1) / 7.0, (4.0 * b2 - a2) / 3.0))
}

/// Detects the order of the transition crossed at fixed `γ = γ_c(t, v)` by
/// sweeping through `t`.
pub fn phase_order(family: Family, t: f64, v: f64, model: Model) -> Result<PhaseOrder> {
    let probe = PhasePoint::new(family, t, 1.0, v)?.with_model(model);
    let gamma = probe.gamma_c();
    let base = PhasePoint { gamma, ..probe };
    let tc = base.t_c().ok_or(Error::WrongPhase { expected: "strong" })?;
    let fp = |s: f64| dfdt(&base.with_t(s));
    let (f2w, f3w) = one_sided(&fp, tc, -1.0)?;
    let (f2s, f3s) = one_sided(&fp, tc, 1.0)?;
    let jump2 = f2w - f2s;
    let jump3 = f3w - f3s;
    let second = jump2.abs() > 1e-3 * f2w.abs().max(1.0);
    if !(jump2.is_finite() && jump3.is_finite()) {
        return Err(Error::NoConvergence("finite-difference stencil".into()));
    }
    Ok(PhaseOrder {
        family,
        model,
        t_c: tc,
        gamma_c: gamma,
        v,
        order: if second { 2 } else { 3 },
        jump: if second { jump2 } else { jump3 },
        f2_weak: f2w,
        f2_strong: f2s,
        f3_weak: f3w,
        f3_strong: f3s,
    })
}
