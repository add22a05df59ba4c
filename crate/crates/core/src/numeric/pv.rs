//! Principal-value integrals by singularity subtraction.

use std::f64::consts::PI;

use super::quadrature::{edge_nodes, QuadratureRule, RuleKind};
use super::C64;
use crate::error::{out_of_range, Error, Result};

/// Chebyshev weights on `(-1, 1)` with closed-form Hilbert transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ChebWeight {
    /// `1/√(1-y²)`
    FirstKind,
    /// `√(1-y²)`
    SecondKind,
}

impl ChebWeight {
    fn eval(self, y: f64) -> f64 {
        match self {
            ChebWeight::FirstKind => 1.0 / (1.0 - y * y).sqrt(),
            ChebWeight::SecondKind => (1.0 - y * y).sqrt(),
        }
    }

    /// `P∫ w(y)/(y-x) dy`.
    fn hilbert(self, x: f64) -> f64 {
        match self {
            ChebWeight::FirstKind => 0.0,
            ChebWeight::SecondKind => -PI * x,
        }
    }

    fn native_rule(self) -> RuleKind {
        match self {
            ChebWeight::FirstKind => RuleKind::GaussChebyshev1,
            ChebWeight::SecondKind => RuleKind::GaussChebyshev2,
        }
    }
}

/// `P∫_{-1}^{1} f(y) w(y) / (y - x) dy`.
///
/// `f(y) - f(x)` is integrated with `rule` (any kind; the weight ratio is
/// applied when the rule's measure differs from `w`) and `f(x)` times the
/// closed-form transform of `w` is added back.
pub fn pv_integral(f: impl Fn(f64) -> f64, weight: ChebWeight, x: f64, rule: &QuadratureRule) -> Result<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(out_of_range("x", x, "the open interval (-1, 1)"));
    }
    let fx = f(x);
    let h = 1e-6 * (1.0 - x.abs()).min(1.0);
    let regular = rule.integrate(|y| {
        let ratio = if rule.kind == weight.native_rule() {
            1.0
        } else {
            weight.eval(y) / rule.kind.weight(y)
        };
        let d = y - x;
        let q = if d.abs() < 1e-13 {
            (f(x + h) - f(x - h)) / (2.0 * h)
        } else {
            (f(y) - fx) / d
        };
        q * ratio
    });
    Ok(regular + fx * weight.hilbert(x))
}

/// [`pv_integral`] with the weight's own Gauss-Chebyshev rule, starting at 256
/// nodes and doubling until successive values differ by less than 1e-10.
pub fn pv_integral_adaptive(f: impl Fn(f64) -> f64, weight: ChebWeight, x: f64) -> Result<f64> {
    let mut n = 256;
    let mut prev = pv_integral(&f, weight, x, &QuadratureRule::new(weight.native_rule(), n)?)?;
    for _ in 0..8 {
        n *= 2;
        let cur = pv_integral(&f, weight, x, &QuadratureRule::new(weight.native_rule(), n)?)?;
        if (cur - prev).abs() < 1e-10 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence(format!("principal value at x = {x} with {n} nodes")))
}

/// A smooth oriented curve `w(s)`, `s ∈ [s₀, s₁]`.
pub trait Contour {
    fn point(&self, s: f64) -> C64;
    fn tangent(&self, s: f64) -> C64;
    fn range(&self) -> (f64, f64);
}

/// Cauchy principal value `P∫_Γ μ(w)/(w - z) dw` at `z = w(s₀)` on the curve.
///
/// `mu(s)` is the line density `μ(w(s))`. The regular part uses
/// [`edge_nodes`] in `s` with one Richardson step; the singular part is `μ(z)` times the closed form
/// `log|(w₁-z)/(w₀-z)| + i·Δarg`, where the argument change is tracked
/// continuously on each side of `z`.
pub fn cauchy_pv_on_contour<K: Contour + ?Sized>(curve: &K, mu: impl Fn(f64) -> C64, s0: f64, n: usize) -> Result<C64> {
    let (a, b) = curve.range();
    if !(s0 > a && s0 < b) {
        return Err(out_of_range("s", s0, "the open parameter range"));
    }
    let z = curve.point(s0);
    let m0 = mu(s0);
    let scale = (curve.point(b) - curve.point(a)).norm().max(curve.tangent(s0).norm());
    let regular_sum = |n: usize| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (s, w) in edge_nodes(a, b, n) {
            let d = curve.point(s) - z;
            let q = if d.norm() < 1e-12 * scale {
                let h = 1e-6 * (b - a);
                (mu(s + h) - mu(s - h)) / (2.0 * h)
            } else {
                (mu(s) - m0) / d * curve.tangent(s)
            };
            acc += q * w;
        }
        acc
    };
    // the subtracted constant breaks the edge symmetry, leaving an O(n^-2) error
    let regular = (regular_sum(2 * n) * 4.0 - regular_sum(n)) / 3.0;
    let t0 = curve.tangent(s0);
    let forward = arg_sweep(curve, z, s0, b, t0.arg());
    let backward = arg_sweep(curve, z, s0, a, (-t0).arg());
    let modulus = ((curve.point(b) - z).norm() / (curve.point(a) - z).norm()).ln();
    let singular = C64::new(modulus, forward - backward);
    Ok(regular + m0 * singular)
}

/// Continuous change of `arg(w(s) - z)` from `s₀` (where it starts at
/// `start`) to `s_end`.
fn arg_sweep<K: Contour + ?Sized>(curve: &K, z: C64, s0: f64, s_end: f64, start: f64) -> f64 {
    const SAMPLES: usize = 400;
    let mut prev = start;
    let mut total = 0.0;
    for j in 1..=SAMPLES {
        let frac = (j as f64 / SAMPLES as f64).powi(2);
        let s = s0 + (s_end - s0) * frac;
        let ang = (curve.point(s) - z).arg();
        let mut d = ang - prev;
        while d > PI {
            d -= 2.0 * PI;
        }
        while d < -PI {
            d += 2.0 * PI;
        }
        total += d;
        prev = ang;
    }
    total
}

/// Straight segment `[a, b]` of the real axis.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
}

impl Contour for Segment {
    fn point(&self, s: f64) -> C64 {
        C64::new(s, 0.0)
    }
    fn tangent(&self, _s: f64) -> C64 {
        C64::new(1.0, 0.0)
    }
    fn range(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::chebyshev::{chebyshev_eval, ChebKind};
    use approx::assert_relative_eq;

    #[test]
    fn hilbert_pairs() {
        let r1 = QuadratureRule::gauss_chebyshev_1(256).unwrap();
        let r2 = QuadratureRule::gauss_chebyshev_2(256).unwrap();
        for n in 1..=8 {
            for &x in &[-0.83, -0.2, 0.0, 0.3, 0.77] {
                let lhs = pv_integral(|y| chebyshev_eval(ChebKind::T, n, &y), ChebWeight::FirstKind, x, &r1).unwrap();
                let rhs = PI * chebyshev_eval(ChebKind::U, n - 1, &x);
                assert!((lhs - rhs).abs() < 1e-7, "T{n} at {x}");
                let lhs = pv_integral(|y| chebyshev_eval(ChebKind::U, n - 1, &y), ChebWeight::SecondKind, x, &r2).unwrap();
                let rhs = -PI * chebyshev_eval(ChebKind::T, n, &x);
                assert!((lhs - rhs).abs() < 1e-7, "U{} at {x}", n - 1);
            }
        }
    }

    #[test]
    fn spec_examples() {
        let r1 = QuadratureRule::gauss_chebyshev_1(256).unwrap();
        let r2 = QuadratureRule::gauss_chebyshev_2(256).unwrap();
        assert_relative_eq!(pv_integral(|y| y, ChebWeight::FirstKind, 0.41, &r1).unwrap(), PI, max_relative = 1e-8);
        let u1 = pv_integral(|y| 2.0 * y, ChebWeight::SecondKind, 0.3, &r2).unwrap();
        assert!((u1 - (-PI * (2.0 * 0.09 - 1.0))).abs() < 1e-8);
        assert!(pv_integral(|_| 1.0, ChebWeight::FirstKind, 0.0, &r1).unwrap().abs() < 1e-14);
    }

    #[test]
    fn rejects_boundary() {
        let r = QuadratureRule::gauss_chebyshev_1(16).unwrap();
        assert!(pv_integral(|y| y, ChebWeight::FirstKind, 1.0, &r).is_err());
        assert!(pv_integral(|y| y, ChebWeight::FirstKind, -1.0, &r).is_err());
    }

    #[test]
    fn mismatched_rule_and_adaptive() {
        let gl = QuadratureRule::gauss_legendre(400).unwrap();
        let v = pv_integral(|y| y * y, ChebWeight::SecondKind, 0.25, &gl).unwrap();
        let exact = pv_integral_adaptive(|y| y * y, ChebWeight::SecondKind, 0.25).unwrap();
        assert!((v - exact).abs() < 1e-4);
        // y²√(1-y²)/(y-x): (y+x)√ part plus x²·(-πx)
        let want = 0.25 * PI / 2.0 + 0.0625 * (-PI * 0.25);
        assert!((exact - want).abs() < 1e-10);
    }

    #[test]
    fn segment_cauchy_pv() {
        // P∫_{-1}^{1} √(1-y²)/(y-x) dy = -πx
        let seg = Segment { a: -1.0, b: 1.0 };
        let v = cauchy_pv_on_contour(&seg, |s| C64::new((1.0 - s * s).sqrt(), 0.0), 0.35, 2000).unwrap();
        assert!((v.re + PI * 0.35).abs() < 1e-9, "{v}");
        assert!(v.im.abs() < 1e-12);
    }
}
