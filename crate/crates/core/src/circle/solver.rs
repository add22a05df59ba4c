//! One-cut solution of the circle saddle-point equation for general `v`.
//!
//! The resolvent has simple poles at `0` and at the two zeros/poles of the
//! symbol. With `h(z)² = z² - 2rCz + r²` (endpoints `r e^{±iφ₀}`, `C = cos φ₀`),
//! the one-cut ansatz reduces to `Σ c_p/h(p) = 0` and `Σ c_p p/h(p) = Σ c_p - 2`.
//! Taking `h(0) = -r`, both conditions are linear in `1/h(p₁)`, `1/h(p₂)`; the
//! two resulting expressions for `rC` must agree, which is a scalar equation
//! in `r` solved by scan and bisection.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::pv::Contour;
use crate::numeric::roots::{bisect, log_grid};
use crate::numeric::C64;
use crate::Family;

const SCAN_POINTS: usize = 200_001;

/// Circular arc centred on the real axis, through `x_c` and `r e^{±iφ₀}`,
/// parameterised by the angle `α ∈ [-α₀, α₀]` seen from its centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub centre: f64,
    pub radius: f64,
    /// `+1` if the arc bulges to the right of its centre, `-1` otherwise.
    pub orientation: f64,
    pub alpha0: f64,
}

impl Arc {
    fn through(x_c: f64, r: f64, cos_phi0: f64) -> Self {
        let centre = if (x_c - r).abs() < 1e-14 * r {
            0.0
        } else {
            (x_c * x_c - r * r) / (2.0 * (x_c - r * cos_phi0))
        };
        let radius = (x_c - centre).abs();
        let orientation = if x_c >= centre { 1.0 } else { -1.0 };
        let w_plus = C64::from_polar(r, cos_phi0.acos());
        let alpha0 = orientation * ((w_plus - centre) * orientation).arg();
        Self {
            centre,
            radius,
            orientation,
            alpha0,
        }
    }

    /// Arc of the unit circle between `e^{±iφ₀}`.
    pub fn unit(phi0: f64) -> Self {
        Self {
            centre: 0.0,
            radius: 1.0,
            orientation: 1.0,
            alpha0: phi0,
        }
    }
}

impl Contour for Arc {
    fn point(&self, alpha: f64) -> C64 {
        let o = self.orientation;
        self.centre + C64::from_polar(self.radius, o * alpha) * o
    }

    fn tangent(&self, alpha: f64) -> C64 {
        C64::from_polar(self.radius, self.orientation * alpha) * C64::i()
    }

    fn range(&self) -> (f64, f64) {
        (-self.alpha0, self.alpha0)
    }
}

/// Pole positions and residues of the resolvent's rational part.
pub(crate) fn pole_model(family: Family, t: f64, gamma: f64, v: f64) -> [(f64, f64); 3] {
    match family {
        Family::H => [(0.0, 1.0 - gamma * (1.0 + v)), (t, gamma * (1.0 + v)), (1.0 / t, gamma * (1.0 - v))],
        Family::E => [(0.0, 1.0 + gamma * (1.0 + v)), (-t, -gamma * (1.0 + v)), (-1.0 / t, -gamma * (1.0 - v))],
    }
}

/// `sin²(φ₀/2)` of the symmetric (`v = 0`) strong phase.
pub(crate) fn sin2_half_phi0_symmetric(family: Family, t: f64, gamma: f64) -> f64 {
    match family {
        Family::H => (1.0 - t).powi(2) * (2.0 * gamma - 1.0) / (4.0 * t * (gamma - 1.0).powi(2)),
        Family::E => (1.0 + t).powi(2) * (2.0 * gamma + 1.0) / (4.0 * t * (gamma + 1.0).powi(2)),
    }
}

/// Strong-phase solution: support endpoints, contour and resolvent data.
#[derive(Debug, Clone, PartialEq)]
pub struct OneCut {
    pub family: Family,
    pub t: f64,
    pub gamma: f64,
    pub v: f64,
    /// `|z|` of the support endpoints.
    pub r: f64,
    /// `cos φ₀`, with endpoints `r e^{±iφ₀}`.
    pub cos_phi0: f64,
    /// Real-axis crossing of the support contour.
    pub x_c: f64,
    pub arc: Arc,
    poles: [(f64, f64); 3],
    h_poles: [f64; 3],
    psi0: f64,
    side: f64,
}

struct Candidate {
    r: f64,
    cos_phi0: f64,
    h: [f64; 3],
}

impl OneCut {
    /// Solves the one-cut problem; fails if no consistent branch exists
    /// (in particular in the weak phase).
    pub fn solve(family: Family, t: f64, gamma: f64, v: f64) -> Result<Self> {
        let poles = pole_model(family, t, gamma, v);
        let cand = if v == 0.0 {
            symmetric_candidate(family, t, gamma, &poles)?
        } else {
            scan_candidates(&poles)
                .into_iter()
                .min_by(|a, b| a.r.ln().abs().total_cmp(&b.r.ln().abs()))
                .ok_or(Error::WrongPhase { expected: "strong" })?
        };
        let x_c = crossing_point(&poles, &cand.h, cand.r).ok_or(Error::WrongPhase { expected: "strong" })?;
        let arc = Arc::through(x_c, cand.r, cand.cos_phi0);
        let mut sol = Self {
            family,
            t,
            gamma,
            v,
            r: cand.r,
            cos_phi0: cand.cos_phi0,
            x_c,
            arc,
            poles,
            h_poles: cand.h,
            psi0: 0.0,
            side: 1.0,
        };
        let z = C64::new(x_c, 0.0);
        let mut psi0 = ((z - sol.w_plus()) / (z - sol.w_minus())).arg();
        if psi0 <= 0.0 {
            psi0 += 2.0 * PI;
        }
        sol.psi0 = psi0;
        // Boundary value at the crossing from the origin's side is -|x_c - w₊|.
        sol.side = 1.0;
        if sol.h_left_at(z).re > 0.0 {
            sol.side = -1.0;
        }
        Ok(sol)
    }

    pub fn phi0(&self) -> f64 {
        self.cos_phi0.acos()
    }

    pub fn w_plus(&self) -> C64 {
        C64::from_polar(self.r, self.phi0())
    }

    pub fn w_minus(&self) -> C64 {
        self.w_plus().conj()
    }

    /// `(position, residue)` of the three resolvent poles.
    pub fn poles(&self) -> [(f64, f64); 3] {
        self.poles
    }

    /// `h` at the resolvent poles, as fixed by the one-cut conditions.
    pub fn h_at_poles(&self) -> [f64; 3] {
        self.h_poles
    }

    /// `h(z) = √((z - w₊)(z - w₋))`, cut along the support, `h ~ z` at infinity.
    pub fn h(&self, z: C64) -> C64 {
        let (wp, wm) = (self.w_plus(), self.w_minus());
        let zeta = (z - wp) / (z - wm);
        let rot = C64::from_polar(1.0, self.psi0 - PI);
        (z - wm) * C64::from_polar(1.0, 0.5 * (self.psi0 - PI)) * (zeta / rot).sqrt()
    }

    fn h_left_at(&self, w: C64) -> C64 {
        let zeta = (w - self.w_plus()) / (w - self.w_minus());
        (w - self.w_minus()) * C64::from_polar(1.0, 0.5 * (self.psi0 - PI)) * C64::new(0.0, self.side * zeta.norm().sqrt())
    }

    /// Boundary value of `h` on the support from the origin's side.
    pub fn h_left(&self, alpha: f64) -> C64 {
        self.h_left_at(self.arc.point(alpha))
    }

    fn r_sum(&self, z: C64) -> C64 {
        self.poles
            .iter()
            .zip(self.h_poles.iter())
            .map(|(&(p, c), &hp)| c / (hp * (z - p)))
            .sum()
    }

    /// Line density `μ(w)` with `∫ μ dw = 1` along the support.
    pub fn line_density(&self, alpha: f64) -> C64 {
        let w = self.arc.point(alpha);
        self.h_left_at(w) * self.r_sum(w) / C64::new(0.0, 2.0 * PI)
    }

    /// Density per unit arc parameter, `μ(w(α)) w'(α)`.
    pub fn density(&self, alpha: f64) -> C64 {
        self.line_density(alpha) * self.arc.tangent(alpha)
    }

    /// Regular part of the resolvent at one of its poles.
    fn resolvent_at_pole(&self, q: f64) -> f64 {
        let mut f_reg = 0.0;
        let mut r_reg = 0.0;
        let mut cq = 0.0;
        let mut hq = 0.0;
        for (&(p, c), &hp) in self.poles.iter().zip(self.h_poles.iter()) {
            if p == q {
                cq = c;
                hq = hp;
            } else {
                f_reg += c / (q - p);
                r_reg += c / (hp * (q - p));
            }
        }
        0.5 * f_reg - 0.5 * cq * (q - self.r * self.cos_phi0) / (hq * hq) - 0.5 * hq * r_reg
    }

    /// `dF/dt` from the resolvent at the symbol's singular points.
    pub fn dfdt(&self) -> f64 {
        let (t, g, v) = (self.t, self.gamma, self.v);
        match self.family {
            Family::H => {
                -g * (1.0 - v) / t - g * (1.0 + v) * self.resolvent_at_pole(t)
                    + g * (1.0 - v) * self.resolvent_at_pole(1.0 / t) / (t * t)
            }
            Family::E => {
                g * (1.0 - v) / t - g * (1.0 + v) * self.resolvent_at_pole(-t)
                    + g * (1.0 - v) * self.resolvent_at_pole(-1.0 / t) / (t * t)
            }
        }
    }
}

fn symmetric_candidate(family: Family, t: f64, gamma: f64, poles: &[(f64, f64); 3]) -> Result<Candidate> {
    let s2 = sin2_half_phi0_symmetric(family, t, gamma);
    let strong = match family {
        Family::H => gamma > 1.0,
        Family::E => true,
    };
    if !(strong && s2 > 0.0 && s2 < 1.0) {
        return Err(Error::WrongPhase { expected: "strong" });
    }
    let c = 1.0 - 2.0 * s2;
    let mut h = [0.0; 3];
    for (k, &(p, _)) in poles.iter().enumerate() {
        let mag = (p * p - 2.0 * p * c + 1.0).sqrt();
        h[k] = if p > 1.0 { mag } else { -mag };
    }
    Ok(Candidate { r: 1.0, cos_phi0: c, h })
}

fn scan_candidates(poles: &[(f64, f64); 3]) -> Vec<Candidate> {
    let [(_, c0), (p1, c1), (p2, c2)] = *poles;
    let s_total = c0 + c1 + c2;
    let det = c1 * c2 * (p2 - p1);
    let ys = |r: f64| {
        let y0 = -1.0 / r;
        let y1 = (-c0 * y0 * c2 * p2 - c2 * (s_total - 2.0)) / det;
        let y2 = (c1 * (s_total - 2.0) + c0 * y0 * c1 * p1) / det;
        (y1, y2)
    };
    let rc = |r: f64| {
        let (y1, y2) = ys(r);
        let s1 = (p1 * p1 + r * r - 1.0 / (y1 * y1)) / (2.0 * p1);
        let s2 = (p2 * p2 + r * r - 1.0 / (y2 * y2)) / (2.0 * p2);
        (s1, s2)
    };
    let mismatch = |r: f64| {
        let (s1, s2) = rc(r);
        s1 - s2
    };
    let grid = log_grid(1e-3, 1e3, SCAN_POINTS);
    let vals: Vec<f64> = grid.iter().map(|&r| mismatch(r)).collect();
    let mut out = Vec::new();
    for i in 0..grid.len() - 1 {
        let (fa, fb) = (vals[i], vals[i + 1]);
        if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
            continue;
        }
        let Ok(r) = bisect(mismatch, grid[i], grid[i + 1], 1e-16) else {
            continue;
        };
        let (s1, s2) = rc(r);
        // sign changes through a pole of the mismatch are not roots
        if (s1 - s2).abs() > 1e-7 * (1.0 + s1.abs()) {
            continue;
        }
        let cos_phi0 = 0.5 * (s1 + s2) / r;
        if cos_phi0.abs() >= 1.0 {
            continue;
        }
        let (y1, y2) = ys(r);
        let h = [-r, 1.0 / y1, 1.0 / y2];
        if crossing_point(poles, &h, r).is_none() {
            continue;
        }
        out.push(Candidate { r, cos_phi0, h });
    }
    out
}

/// Where the support may cross the real axis: `h` must be negative at every
/// pole left of the crossing and positive right of it.
fn crossing_point(poles: &[(f64, f64); 3], h: &[f64; 3], r: f64) -> Option<f64> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (&(p, _), &hp) in poles.iter().zip(h.iter()) {
        if hp < 0.0 {
            lo = lo.max(p);
        } else {
            hi = hi.min(p);
        }
    }
    if lo >= hi {
        return None;
    }
    Some(if lo > 0.0 && hi.is_finite() {
        // Stay a quarter of the log-width away from both poles.
        let margin = 0.25 * (hi / lo).ln();
        r.clamp(lo * margin.exp(), hi * (-margin).exp())
    } else if r > lo && r < hi {
        r
    } else if hi.is_infinite() {
        2.0 * lo
    } else if lo > 0.0 {
        (lo * hi).sqrt()
    } else {
        0.5 * hi
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::quadrature::integrate_edges;
    use approx::assert_relative_eq;

    fn norm(sol: &OneCut) -> C64 {
        integrate_edges(|a| sol.density(a), -sol.arc.alpha0, sol.arc.alpha0, 2000)
    }

    #[test]
    fn symmetric_strong_matches_closed_form() {
        let (t, g) = (0.5, 2.0);
        let sol = OneCut::solve(Family::H, t, g, 0.0).unwrap();
        assert_relative_eq!(sol.dfdt(), (2.0 * g - 1.0) / (1.0 - t) - 0.5 / t, max_relative = 1e-12);
        let n = norm(&sol);
        assert_relative_eq!(n.re, 1.0, max_relative = 1e-12);
        assert!(n.im.abs() < 1e-12);
        let s2 = sin2_half_phi0_symmetric(Family::H, t, g);
        let phi = 0.4f64;
        let printed = 2.0 * (g - 1.0) * t / PI * (phi / 2.0).cos() / ((1.0 - t).powi(2) + 4.0 * t * (phi / 2.0).sin().powi(2))
            * (s2 - (phi / 2.0).sin().powi(2)).sqrt();
        assert_relative_eq!(sol.density(phi).re, printed, max_relative = 1e-12);

        let sol = OneCut::solve(Family::E, t, 1.0, 0.0).unwrap();
        assert_relative_eq!(sol.dfdt(), 3.0 / (1.0 + t) - 0.5 / t, max_relative = 1e-12);
        assert_relative_eq!(norm(&sol).re, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn general_solutions_normalised() {
        for &(fam, g, v, t) in &[
            (Family::E, 1.0, 0.5, 0.5),
            (Family::H, 3.0, 0.5, 0.5),
            (Family::H, 2.5, 0.5, 0.75),
            (Family::H, 4.0, 0.5, 0.9),
            (Family::E, 1.0, -0.25, 0.3),
        ] {
            let sol = OneCut::solve(fam, t, g, v).unwrap();
            let n = norm(&sol);
            assert!((n - 1.0).norm() < 1e-10, "{fam} {g} {v} {t}: {n}");
            // h from the Möbius form reproduces the pole values.
            for (&(p, _), &hp) in sol.poles().iter().zip(sol.h_at_poles().iter()) {
                let hz = sol.h(C64::new(p, 0.0));
                assert!((hz - hp).norm() < 1e-9 * (1.0 + hp.abs()), "{fam} {p}: {hz} vs {hp}");
            }
            // Re ρ even, Im ρ odd.
            for a in [0.3 * sol.arc.alpha0, 0.7 * sol.arc.alpha0] {
                let (p, m) = (sol.density(a), sol.density(-a));
                let tol = 1e-12 * (1.0 + p.norm());
                assert!((p.re - m.re).abs() < tol && (p.im + m.im).abs() < tol, "{fam} {g} {v} {t} {a}: {p} {m}");
            }
        }
    }

    #[test]
    fn known_derivatives() {
        // Finite differences of exact Toeplitz determinants give 7.88045 (K=20)
        // and 7.88077 (K=40); 14.2751 (K=20).
        let sol = OneCut::solve(Family::H, 0.5, 3.0, 0.5).unwrap();
        assert!((sol.dfdt() - 7.8808).abs() < 2e-4);
        let sol = OneCut::solve(Family::H, 0.75, 2.5, 0.5).unwrap();
        assert!((sol.dfdt() - 14.2751).abs() < 2e-4);
        assert!(sol.x_c != sol.r);
    }

    #[test]
    fn weak_phase_rejected() {
        assert!(OneCut::solve(Family::H, 0.5, 1.0, 0.0).is_err());
    }
}
