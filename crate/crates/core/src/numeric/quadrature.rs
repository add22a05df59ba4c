use std::f64::consts::PI;

use super::C64;
use crate::error::{out_of_range, Error, Result};

/// Measure a rule integrates against on `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RuleKind {
    /// Weight `1/√(1-x²)`.
    GaussChebyshev1,
    /// Weight `√(1-x²)`.
    GaussChebyshev2,
    /// Weight `1`.
    GaussLegendre,
}

impl RuleKind {
    /// Value of the weight at `x`.
    pub fn weight(self, x: f64) -> f64 {
        match self {
            RuleKind::GaussChebyshev1 => 1.0 / (1.0 - x * x).sqrt(),
            RuleKind::GaussChebyshev2 => (1.0 - x * x).sqrt(),
            RuleKind::GaussLegendre => 1.0,
        }
    }

    /// Total mass of the weight.
    pub fn mass(self) -> f64 {
        match self {
            RuleKind::GaussChebyshev1 => PI,
            RuleKind::GaussChebyshev2 => PI / 2.0,
            RuleKind::GaussLegendre => 2.0,
        }
    }
}

/// Nodes (strictly increasing, inside `(-1, 1)`) and positive weights.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn new(kind: RuleKind, n: usize) -> Result<Self> {
        match kind {
            RuleKind::GaussChebyshev1 => Self::gauss_chebyshev_1(n),
            RuleKind::GaussChebyshev2 => Self::gauss_chebyshev_2(n),
            RuleKind::GaussLegendre => Self::gauss_legendre(n),
        }
    }

    pub fn gauss_chebyshev_1(n: usize) -> Result<Self> {
        check_count(n)?;
        let nodes = (0..n)
            .map(|k| -((2 * k + 1) as f64 * PI / (2 * n) as f64).cos())
            .collect();
        Ok(Self {
            nodes,
            weights: vec![PI / n as f64; n],
            kind: RuleKind::GaussChebyshev1,
        })
    }

    pub fn gauss_chebyshev_2(n: usize) -> Result<Self> {
        check_count(n)?;
        let h = PI / (n + 1) as f64;
        let (nodes, weights) = (1..=n)
            .map(|k| {
                let a = k as f64 * h;
                (-a.cos(), h * a.sin().powi(2))
            })
            .unzip();
        Ok(Self {
            nodes,
            weights,
            kind: RuleKind::GaussChebyshev2,
        })
    }

    /// Gauss-Legendre by Newton iteration on `P_n`.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        check_count(n)?;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = -(PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            weights[i] = w;
            nodes[n - 1 - i] = -x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self {
            nodes,
            weights,
            kind: RuleKind::GaussLegendre,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ f(x) w(x) dx` for the rule's own weight `w`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Nodes and weights mapped affinely to `[a, b]` (Legendre rules only make
    /// sense here, but any rule maps its weighted measure).
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (mid + half * x, half * w))
            .collect()
    }
}

fn check_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(out_of_range("node count", n, "n >= 2"));
    }
    Ok(())
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∫_a^b f(x) dx` for integrands with square-root edge behaviour, via
/// `x = c + h cos u` and the midpoint rule in `u` (spectrally accurate for
/// `f = √((b-x)(x-a)) · smooth`).
pub fn integrate_edges(f: impl Fn(f64) -> C64, a: f64, b: f64, n: usize) -> C64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let du = PI / n as f64;
    (0..n)
        .map(|k| {
            let u = (k as f64 + 0.5) * du;
            f(c - h * u.cos()) * (h * u.sin() * du)
        })
        .sum()
}

/// Nodes `x_k` and weights of [`integrate_edges`], ascending in `x`.
pub fn edge_nodes(a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let du = PI / n as f64;
    (0..n)
        .map(|k| {
            let u = (k as f64 + 0.5) * du;
            (c - h * u.cos(), h * u.sin() * du)
        })
        .collect()
}

/// Gauss-Legendre integral on `[a, b]`, doubling from `n0` nodes until
/// successive estimates agree to `tol` (absolute plus relative).
pub fn integrate_legendre_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, n0: usize, tol: f64) -> Result<f64> {
    let mut n = n0.max(2);
    let mut prev = QuadratureRule::gauss_legendre(n)?
        .mapped(a, b)
        .iter()
        .map(|&(x, w)| w * f(x))
        .sum::<f64>();
    for _ in 0..8 {
        n *= 2;
        let cur = QuadratureRule::gauss_legendre(n)?
            .mapped(a, b)
            .iter()
            .map(|&(x, w)| w * f(x))
            .sum::<f64>();
        if (cur - prev).abs() <= tol * (1.0 + cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence(format!("Gauss-Legendre on [{a}, {b}] with {n} nodes")))
}
