//! Stereographic projection `x = tan(φ/2)` of the circle models onto the
//! real line (Cauchy-Romanovski ensembles).
//!
//! The projected weight has simple poles at `±i` and `±i t₀` (E) or `±i/t₀`
//! (H), with `t₀ = (1+t)/(1-t)`. A one-cut density on `[-A, B]` is
//! `ρ(x) = √((x+A)(B-x)) R(x)/π` with `R(x) = Σ c_p/(h(p)(x-p))` and
//! `h(z) = √(z+A)√(z-B)`; the endpoints are fixed by `Σ c_p/h(p) = 0` and
//! `Σ c_p p/h(p) = Σ c_p - 1`. For `v ≠ 0` the potential is complex and the
//! support leaves the real axis; the density is then the image of the circle
//! solution.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circle::{critical_gamma_v, Density, PhasePoint};
use crate::error::{out_of_range, Error, Result};
use crate::numeric::pv::{cauchy_pv_on_contour, Contour, Segment};
use crate::numeric::quadrature::integrate_edges;
use crate::numeric::C64;
use crate::Family;

const EDGE_NODES: usize = 1500;

/// Parameters of a projected model. `b` is the strength of the monomial
/// shift `e^{2b·arctan x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StereoParams {
    pub family: Family,
    pub t: f64,
    pub gamma: f64,
    pub v: f64,
    pub b: f64,
}

impl StereoParams {
    /// Validates that `(t, γ, v)` lies in the gapped phase, the only one the
    /// projection describes.
    pub fn new(family: Family, t: f64, gamma: f64, v: f64) -> Result<Self> {
        let p = PhasePoint::new(family, t, gamma, v)?;
        if !(gamma > critical_gamma_v(family, t, v)) {
            return Err(Error::WrongPhase { expected: "strong" });
        }
        Ok(Self {
            family: p.family,
            t,
            gamma,
            v,
            b: 0.0,
        })
    }

    pub fn with_shift(mut self, b: f64) -> Self {
        self.b = b;
        self
    }

    /// `t₀ = (1+t)/(1-t)`.
    pub fn t0(&self) -> f64 {
        (1.0 + self.t) / (1.0 - self.t)
    }

    /// Modulus of the symbol pole pair on the imaginary axis.
    fn q(&self) -> f64 {
        match self.family {
            Family::E => self.t0(),
            Family::H => 1.0 / self.t0(),
        }
    }

    /// Poles `p` and residues `c_p` of the potential `W(x) = Σ c_p/(x-p)`.
    pub fn residues(&self) -> [(C64, C64); 4] {
        let (g, v, b) = (self.gamma, self.v, self.b);
        let i = C64::i();
        let q = self.q();
        let (unit, sym) = match self.family {
            Family::E => ((g + 1.0) / 2.0, -g / 2.0),
            Family::H => ((1.0 - g) / 2.0, g / 2.0),
        };
        let dv = self.family.sign() * g * v / 2.0;
        [
            (i, C64::new(unit + dv, b)),
            (-i, C64::new(unit - dv, -b)),
            (i * q, C64::new(sym - dv, 0.0)),
            (-i * q, C64::new(sym + dv, 0.0)),
        ]
    }

    /// Right-hand side `W(x)` of `P∫ ρ(y)/(x-y) dy = W(x)`.
    pub fn potential(&self, x: C64) -> C64 {
        self.residues().iter().map(|&(p, c)| c / (x - p)).sum()
    }

    fn phase_point(&self) -> Result<PhasePoint> {
        PhasePoint::new(self.family, self.t, self.gamma, self.v)
    }

    fn check_gapped(&self) -> Result<()> {
        if !(self.gamma > critical_gamma_v(self.family, self.t, 0.0)) {
            return Err(out_of_range("gamma", self.gamma, "the gapped phase"));
        }
        Ok(())
    }
}

/// `x = tan(φ/2)`, i.e. `e^{iφ} = (1+ix)/(1-ix)`.
pub fn stereo_map(phi: f64) -> Result<f64> {
    if !(phi.abs() < PI) {
        return Err(out_of_range("phi", phi, "(-pi, pi)"));
    }
    Ok((phi / 2.0).tan())
}

/// Inverse of [`stereo_map`], in `(-π, π)`.
pub fn stereo_inverse(x: f64) -> f64 {
    2.0 * x.atan()
}

/// Complex form of the projection, `x(w) = -i(w-1)/(w+1)`.
pub fn stereo_map_complex(w: C64) -> C64 {
    -C64::i() * (w - 1.0) / (w + 1.0)
}

/// Closed form used for the symmetric support half-width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryFormula {
    /// Solution of the normalization condition.
    #[default]
    Corrected,
    /// The reference E-model denominator `(2γ+1-t)(2γ-1+t)`.
    Printed,
}

/// Half-width `A` of the symmetric support (`v` and `b` ignored).
pub fn boundary_a(p: &StereoParams) -> Result<f64> {
    boundary_a_with(p, BoundaryFormula::Corrected)
}

pub fn boundary_a_with(p: &StereoParams, formula: BoundaryFormula) -> Result<f64> {
    p.check_gapped()?;
    let (t, g) = (p.t, p.gamma);
    let a2 = match (p.family, formula) {
        (Family::E, BoundaryFormula::Corrected) => {
            (2.0 * g + 1.0) * (1.0 + t).powi(2) / ((2.0 * g + 1.0 - t) * ((2.0 * g + 1.0) * t - 1.0))
        }
        (Family::E, BoundaryFormula::Printed) => {
            (2.0 * g + 1.0) * (1.0 + t).powi(2) / ((2.0 * g + 1.0 - t) * (2.0 * g - 1.0 + t))
        }
        (Family::H, BoundaryFormula::Corrected) => {
            (1.0 - t).powi(2) * (2.0 * g - 1.0) / ((2.0 * g * t - 1.0 - t) * (2.0 * g - 1.0 - t))
        }
        (Family::H, BoundaryFormula::Printed) => {
            return Err(Error::InvalidInput("no reference boundary for the H family".into()))
        }
    };
    if !(a2 > 0.0 && a2.is_finite()) {
        return Err(Error::NoConvergence(format!("A² = {a2} is not positive")));
    }
    Ok(a2.sqrt())
}

/// Order-`z¹` normalization residual `Σ c_p p/h(p)` at symmetric support
/// `[-a, a]` with `v = b = 0`; it vanishes at the true half-width.
pub fn normalization_residual(p: &StereoParams, a: f64) -> f64 {
    let sym = StereoParams { v: 0.0, b: 0.0, ..*p };
    let [_, s1] = conditions(&sym.residues(), C64::new(a, 0.0), C64::new(a, 0.0));
    s1.re
}

/// `h(z) = √(z+A)√(z-B)`, analytic off `[-A, B]` and `~ z` at infinity.
fn h(a: C64, b: C64, z: C64) -> C64 {
    (z + a).sqrt() * (z - b).sqrt()
}

/// `[Σ c/h(p), Σ c·p/h(p) - Σ c + 1]`; both vanish for a normalized
/// one-cut solution.
fn conditions(poles: &[(C64, C64); 4], a: C64, b: C64) -> [C64; 2] {
    let mut s0 = C64::new(0.0, 0.0);
    let mut s1 = C64::new(1.0, 0.0);
    for &(p, c) in poles {
        let hp = h(a, b, p);
        s0 += c / hp;
        s1 += c * p / hp - c;
    }
    [s0, s1]
}

/// `R(x) = Σ c_p/(h(p)(x-p))`.
fn reduced(poles: &[(C64, C64); 4], a: C64, b: C64, x: C64) -> C64 {
    poles.iter().map(|&(p, c)| c / (h(a, b, p) * (x - p))).sum()
}

/// Closed-form density on the symmetric support `[-A, A]`: for E the
/// reference expression `(√(A²-x²)/π)[((1+γ)+ivγx)/(√(A²+1)(x²+1)) -
/// (γt₀+ivγx)/(√(A²+t₀²)(x²+t₀²))]`, for H the same residue construction.
/// A solution of the saddle-point equation only when `v = 0`.
pub fn density_real(p: &StereoParams, x: f64) -> Result<C64> {
    if p.b != 0.0 {
        return Err(Error::InvalidInput("density_real requires b = 0".into()));
    }
    let a = boundary_a(p)?;
    if x.abs() > a {
        return Err(Error::OutsideSupport(x));
    }
    let root = (a * a - x * x).max(0.0).sqrt() / PI;
    let (g, v) = (p.gamma, p.v);
    match p.family {
        Family::E => {
            let t0 = p.t0();
            let first = C64::new(1.0 + g, v * g * x) / ((a * a + 1.0).sqrt() * (x * x + 1.0));
            let second = C64::new(g * t0, v * g * x) / ((a * a + t0 * t0).sqrt() * (x * x + t0 * t0));
            Ok((first - second) * root)
        }
        Family::H => {
            let ac = C64::new(a, 0.0);
            Ok(reduced(&p.residues(), ac, ac, C64::new(x, 0.0)) * root)
        }
    }
}

/// Damped Newton settings for [`asymmetric_support_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Largest accepted `|b|`.
    pub max_shift: f64,
    pub tolerance: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            max_shift: 1.0,
            tolerance: 1e-13,
        }
    }
}

/// Endpoints `(A, B)` of the support `[-A, B]` for the shifted symmetric
/// model (`v = 0`).
pub fn asymmetric_support(p: &StereoParams) -> Result<(f64, f64)> {
    asymmetric_support_with(p, &NewtonOptions::default())
}

pub fn asymmetric_support_with(p: &StereoParams, opts: &NewtonOptions) -> Result<(f64, f64)> {
    if p.v != 0.0 {
        return Err(Error::InvalidInput("a real support requires v = 0".into()));
    }
    if !(p.b.abs() <= opts.max_shift) {
        return Err(out_of_range("b", p.b, "the configured shift bound"));
    }
    let poles = p.residues();
    let f = |x: [f64; 2]| -> [f64; 2] {
        let [s0, s1] = conditions(&poles, C64::new(x[0], 0.0), C64::new(x[1], 0.0));
        // both conditions decay at infinite support; the scale keeps Newton away from it
        let scale = 0.5 * (x[0] + x[1]);
        [s0.re * scale, s1.re * scale]
    };
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let a0 = boundary_a(p)?;
    let mut x = [a0, a0];
    let mut r = f(x);
    for _ in 0..opts.max_iterations {
        if norm(r) < opts.tolerance {
            return Ok((x[0], x[1]));
        }
        let mut jac = [[0.0; 2]; 2];
        for k in 0..2 {
            let step = 1e-7 * x[k];
            let (mut hi, mut lo) = (x, x);
            hi[k] += step;
            lo[k] -= step;
            let (fh, fl) = (f(hi), f(lo));
            jac[0][k] = (fh[0] - fl[0]) / (2.0 * step);
            jac[1][k] = (fh[1] - fl[1]) / (2.0 * step);
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = [
            (jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
            (jac[0][0] * r[1] - jac[1][0] * r[0]) / det,
        ];
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = [x[0] - lambda * dx[0], x[1] - lambda * dx[1]];
            if trial[0] > 0.0 && trial[1] > 0.0 {
                let rt = f(trial);
                if norm(rt) < norm(r) {
                    x = trial;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if norm(r) < 1e3 * opts.tolerance {
        return Ok((x[0], x[1]));
    }
    Err(Error::NoConvergence(format!(
        "support endpoints at A = {}, B = {}: residuals {:e}, {:e}",
        x[0], x[1], r[0], r[1]
    )))
}

/// The two reference endpoint constraints for the shifted E model, evaluated
/// at `(A, B)`. They reduce to the symmetric normalization at `b = 0` but
/// depend on the endpoints only through `AB` and `A² + B²`.
pub fn printed_constraints(p: &StereoParams, a: f64, b: f64) -> Result<[f64; 2]> {
    if p.family != Family::E {
        return Err(Error::InvalidInput("reference constraints cover the E family only".into()));
    }
    let (g, s, t0) = (p.gamma, p.b, p.t0());
    let ht = |x: f64| (x.powi(4) + a * a * b * b + x * x * (a * a + b * b)).powf(0.25);
    let (h0, h1) = (ht(t0), ht(1.0));
    let c0 = (t0 * t0 + a * b) / (h0 * h0);
    let c1 = (1.0 + a * b) / (h1 * h1);
    let first = g / (2.0 * h0) * (c0 - 1.0) - (c1 * (2.0 * s - g - 1.0) + 2.0 * s + g + 1.0) / (2.0 * h1);
    let second = g * t0 / (2.0 * h0) * (c0 + 1.0) - (c1 * (2.0 * s + g + 1.0) - 2.0 * s + g + 1.0) / (2.0 * h1);
    Ok([first, second])
}

/// Sampled density on the real support `[-a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLineDensity {
    pub params: StereoParams,
    pub a: f64,
    pub b: f64,
    pub xs: Vec<f64>,
    pub values: Vec<C64>,
}

/// One-cut density of a projected model.
#[derive(Debug, Clone)]
pub enum StereoDensity {
    /// Real support `[-a, b]`, parameterised by `x` itself (`v = 0`).
    Segment { params: StereoParams, a: f64, b: f64 },
    /// Image of the circle arc, parameterised by the arc angle (`v ≠ 0`).
    Curve { params: StereoParams, circle: Box<Density> },
}

impl StereoDensity {
    pub fn solve(p: &StereoParams) -> Result<Self> {
        if p.v == 0.0 {
            let (a, b) = if p.b == 0.0 {
                let a = boundary_a(p)?;
                (a, a)
            } else {
                asymmetric_support(p)?
            };
            return Ok(StereoDensity::Segment { params: *p, a, b });
        }
        if p.b != 0.0 {
            return Err(Error::InvalidInput("shift and asymmetry together are not supported".into()));
        }
        let circle = Density::new(&p.phase_point()?)?;
        Ok(StereoDensity::Curve {
            params: *p,
            circle: Box::new(circle),
        })
    }

    pub fn params(&self) -> &StereoParams {
        match self {
            StereoDensity::Segment { params, .. } | StereoDensity::Curve { params, .. } => params,
        }
    }

    /// Parameter interval of the support.
    pub fn range(&self) -> (f64, f64) {
        match self {
            StereoDensity::Segment { a, b, .. } => (-a, *b),
            StereoDensity::Curve { circle, .. } => {
                let h = circle.half_width();
                (-h, h)
            }
        }
    }

    /// Support endpoints in the complex `x` plane.
    pub fn endpoints(&self) -> (C64, C64) {
        let (lo, hi) = self.range();
        (self.position(lo), self.position(hi))
    }

    /// Point of the support at parameter `s`.
    pub fn position(&self, s: f64) -> C64 {
        match self {
            StereoDensity::Segment { .. } => C64::new(s, 0.0),
            StereoDensity::Curve { circle, .. } => stereo_map_complex(circle.position(s)),
        }
    }

    /// `dx/ds` along the support.
    pub fn tangent(&self, s: f64) -> C64 {
        match self {
            StereoDensity::Segment { .. } => C64::new(1.0, 0.0),
            StereoDensity::Curve { circle, .. } => {
                let arc = circle.arc();
                let w = arc.point(s);
                C64::new(0.0, -2.0) / ((w + 1.0) * (w + 1.0)) * arc.tangent(s)
            }
        }
    }

    /// Density per unit parameter.
    pub fn eval(&self, s: f64) -> C64 {
        match self {
            StereoDensity::Segment { params, a, b } => {
                let (ac, bc) = (C64::new(*a, 0.0), C64::new(*b, 0.0));
                let root = ((s + a) * (b - s)).max(0.0).sqrt() / PI;
                reduced(&params.residues(), ac, bc, C64::new(s, 0.0)) * root
            }
            StereoDensity::Curve { circle, .. } => circle.eval_unchecked(s),
        }
    }

    /// Density per unit `dx` (complex along a curved support).
    pub fn eval_per_dx(&self, s: f64) -> C64 {
        self.eval(s) / self.tangent(s)
    }

    /// `∫ f(x) ρ(x) dx` over the support.
    pub fn integrate(&self, f: impl Fn(C64) -> C64) -> C64 {
        let (lo, hi) = self.range();
        integrate_edges(|s| self.eval(s) * f(self.position(s)), lo, hi, EDGE_NODES)
    }

    /// `|P∫ ρ(y)/(x-y) dy - W(x)|` at the support point with parameter `s`.
    pub fn saddle_residual(&self, s: f64) -> Result<f64> {
        let (lo, hi) = self.range();
        if !(s > lo && s < hi) {
            return Err(out_of_range("s", s, "the open support"));
        }
        let x = self.position(s);
        let cpv = match self {
            StereoDensity::Segment { a, b, .. } => {
                cauchy_pv_on_contour(&Segment { a: -a, b: *b }, |y| self.eval(y), s, EDGE_NODES)?
            }
            StereoDensity::Curve { .. } => {
                let image = Image(self);
                cauchy_pv_on_contour(&image, |y| self.eval_per_dx(y), s, EDGE_NODES)?
            }
        };
        Ok((-cpv - self.params().potential(x)).norm())
    }

    /// Samples `n` equispaced parameters; only real supports are sampled.
    pub fn sample(&self, n: usize) -> Result<RealLineDensity> {
        let StereoDensity::Segment { params, a, b } = self else {
            return Err(Error::InvalidInput("the support is not a real interval".into()));
        };
        let xs: Vec<f64> = if n < 2 {
            vec![0.5 * (b - a)]
        } else {
            (0..n).map(|k| -a + (a + b) * k as f64 / (n - 1) as f64).collect()
        };
        let values = xs.iter().map(|&x| self.eval(x)).collect();
        Ok(RealLineDensity {
            params: *params,
            a: *a,
            b: *b,
            xs,
            values,
        })
    }
}

struct Image<'a>(&'a StereoDensity);

impl Contour for Image<'_> {
    fn point(&self, s: f64) -> C64 {
        self.0.position(s)
    }
    fn tangent(&self, s: f64) -> C64 {
        self.0.tangent(s)
    }
    fn range(&self) -> (f64, f64) {
        self.0.range()
    }
}

/// Both sides of `Π|e^{iφⱼ}-e^{iφₖ}|² dφ = 2^{K²} Π(xⱼ-xₖ)² Π(1+xⱼ²)^{-K} dx`,
/// as densities in `x`.
pub fn vandermonde_pushforward(phis: &[f64]) -> Result<(f64, f64)> {
    let xs = phis.iter().map(|&p| stereo_map(p)).collect::<Result<Vec<_>>>()?;
    let k = phis.len() as i32;
    let mut lhs = 1.0;
    let mut rhs = 2f64.powi(k * k);
    for j in 0..phis.len() {
        for l in j + 1..phis.len() {
            lhs *= (C64::from_polar(1.0, phis[j]) - C64::from_polar(1.0, phis[l])).norm_sqr();
            rhs *= (xs[j] - xs[l]).powi(2);
        }
        lhs *= 2.0 / (1.0 + xs[j] * xs[j]);
        rhs /= (1.0 + xs[j] * xs[j]).powi(k);
    }
    Ok((lhs, rhs))
}
