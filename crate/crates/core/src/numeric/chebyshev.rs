use num::{BigInt, BigRational, Num, One, Zero};

/// The four classical Chebyshev families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ChebKind {
    /// First kind, `T₁ = x`.
    T,
    /// Second kind, `U₁ = 2x`.
    U,
    /// Third kind, `V₁ = 2x - 1`.
    V,
    /// Fourth kind, `W₁ = 2x + 1`.
    W,
}

impl ChebKind {
    pub const ALL: [ChebKind; 4] = [ChebKind::T, ChebKind::U, ChebKind::V, ChebKind::W];

    /// Coefficients `(a, b)` with `P₁(x) = a·x + b`.
    fn first(self) -> (i64, i64) {
        match self {
            ChebKind::T => (1, 0),
            ChebKind::U => (2, 0),
            ChebKind::V => (2, -1),
            ChebKind::W => (2, 1),
        }
    }
}

impl std::fmt::Display for ChebKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Evaluates `P_n(x)` with the recurrence `P_{n+1} = 2x P_n - P_{n-1}`.
pub fn chebyshev_eval<S: Clone + Num>(kind: ChebKind, n: usize, x: &S) -> S {
    let int = |k: i64| -> S {
        let one = S::one();
        let mut acc = S::zero();
        for _ in 0..k.unsigned_abs() {
            acc = acc + one.clone();
        }
        if k < 0 {
            S::zero() - acc
        } else {
            acc
        }
    };
    let (a, b) = kind.first();
    let mut prev = S::one();
    if n == 0 {
        return prev;
    }
    let mut cur = int(a) * x.clone() + int(b);
    let two_x = int(2) * x.clone();
    for _ in 1..n {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Integer coefficients of `P_n`, lowest degree first.
pub fn chebyshev_coeffs(kind: ChebKind, n: usize) -> Vec<BigInt> {
    let (a, b) = kind.first();
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(b), BigInt::from(a)];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact `order`-th derivative of `P_n` at `x`.
pub fn chebyshev_derivative(kind: ChebKind, n: usize, order: usize, x: &BigRational) -> BigRational {
    let mut coeffs = chebyshev_coeffs(kind, n);
    for _ in 0..order {
        if coeffs.len() <= 1 {
            return BigRational::zero();
        }
        coeffs = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
    }
    horner(&coeffs, x)
}

/// `order`-th derivative of `P_n` at a real point.
pub fn chebyshev_derivative_f64(kind: ChebKind, n: usize, order: usize, x: f64) -> f64 {
    let mut coeffs: Vec<f64> = chebyshev_coeffs(kind, n)
        .iter()
        .map(|c| num::ToPrimitive::to_f64(c).unwrap_or(f64::NAN))
        .collect();
    for _ in 0..order {
        if coeffs.len() <= 1 {
            return 0.0;
        }
        coeffs = coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    }
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn horner(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}
