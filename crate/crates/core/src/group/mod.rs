//! Averages over orthogonal, symplectic and unitary groups: Toeplitz±Hankel
//! determinants, their Hankel (Jacobi-weight) form, Chebyshev Wronskian
//! formulas and large-K asymptotics.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{out_of_range, Error, Result};
use crate::exact::{det_rational, int, rpow, toeplitz_det, ExactScalar, SymbolSpec};
use crate::numeric::barnes::{barnes_g_int, log_barnes_g};
use crate::numeric::chebyshev::{chebyshev_derivative, ChebKind};
use crate::numeric::pv::{pv_integral, ChebWeight};
use crate::numeric::quadrature::QuadratureRule;
use crate::Family;

/// Default node count for the Chebyshev-type quadratures.
pub const DEFAULT_NODES: usize = 512;

/// Compact groups whose Haar averages are computed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupTag {
    /// `U(2K)`.
    UEven,
    /// `U(2K+1)`.
    UOdd,
    /// `O⁺(2K)`.
    OPlusEven,
    /// `Sp(2K)`.
    Sp,
    /// `O⁺(2K+1)`.
    OPlusOdd,
    /// `O⁻(2K+1)`.
    OMinusOdd,
}

impl GroupTag {
    /// The four groups with a Toeplitz±Hankel representation.
    pub const CLASSICAL: [GroupTag; 4] = [GroupTag::OPlusEven, GroupTag::Sp, GroupTag::OPlusOdd, GroupTag::OMinusOdd];

    /// Jacobi exponents `(a, b)` of `(1+x)^a (1-x)^b` after `x = cos θ`.
    pub fn jacobi_exponents(self) -> Result<(f64, f64)> {
        match self {
            GroupTag::OPlusEven => Ok((-0.5, -0.5)),
            GroupTag::Sp => Ok((0.5, 0.5)),
            GroupTag::OPlusOdd => Ok((-0.5, 0.5)),
            GroupTag::OMinusOdd => Ok((0.5, -0.5)),
            GroupTag::UEven | GroupTag::UOdd => Err(unitary()),
        }
    }

    /// `log₂` of the Haar normalization `N_{G(K)}`.
    pub fn log2_normalization(self, k: usize) -> Result<f64> {
        let k = k as f64;
        match self {
            GroupTag::OPlusEven => Ok(k * k - k + 1.0),
            GroupTag::Sp => Ok(k * k + k),
            GroupTag::OPlusOdd | GroupTag::OMinusOdd => Ok(k * k),
            GroupTag::UEven | GroupTag::UOdd => Err(unitary()),
        }
    }

    /// Chebyshev family orthogonal for this group's Jacobi weight.
    pub fn chebyshev_kind(self) -> Result<ChebKind> {
        match self {
            GroupTag::OPlusEven => Ok(ChebKind::T),
            GroupTag::Sp => Ok(ChebKind::U),
            GroupTag::OMinusOdd => Ok(ChebKind::V),
            GroupTag::OPlusOdd => Ok(ChebKind::W),
            GroupTag::UEven | GroupTag::UOdd => Err(unitary()),
        }
    }

    /// Matrix size `M` of the unitary group at rank `K`.
    fn unitary_size(self, k: usize) -> Option<usize> {
        match self {
            GroupTag::UEven => Some(2 * k),
            GroupTag::UOdd => Some(2 * k + 1),
            _ => None,
        }
    }
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupTag::UEven => "U(2K)",
            GroupTag::UOdd => "U(2K+1)",
            GroupTag::OPlusEven => "O+(2K)",
            GroupTag::Sp => "Sp(2K)",
            GroupTag::OPlusOdd => "O+(2K+1)",
            GroupTag::OMinusOdd => "O-(2K+1)",
        })
    }
}

impl std::str::FromStr for GroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "u-even" | "u(2k)" => GroupTag::UEven,
            "u-odd" | "u(2k+1)" => GroupTag::UOdd,
            "o-plus-even" | "o+(2k)" | "so-even" => GroupTag::OPlusEven,
            "sp" | "sp(2k)" => GroupTag::Sp,
            "o-plus-odd" | "o+(2k+1)" | "so-odd" => GroupTag::OPlusOdd,
            "o-minus-odd" | "o-(2k+1)" => GroupTag::OMinusOdd,
            _ => return Err(Error::InvalidInput(format!("unknown group '{s}'"))),
        })
    }
}

fn unitary() -> Error {
    Error::InvalidInput("unitary groups have no Toeplitz±Hankel form".into())
}

/// A group together with its rank parameter `K ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupKind {
    pub tag: GroupTag,
    pub k: usize,
}

impl GroupKind {
    pub fn new(tag: GroupTag, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(out_of_range("K", k, "K >= 1"));
        }
        Ok(Self { tag, k })
    }
}

/// `∫_{G(K)} σ(U) dU` as a Toeplitz±Hankel determinant:
/// `½det(σ_{j-k}+σ_{j+k-2})` for O⁺(2K), `det(σ_{j-k}-σ_{j+k})` for Sp(2K),
/// `det(σ_{j-k}-σ_{j+k-1})` for O⁺(2K+1) and `det(σ_{j-k}+σ_{j+k-1})` for
/// O⁻(2K+1). Requires a symmetric symbol.
pub fn th_determinant(tag: GroupTag, sym: &SymbolSpec, k: usize) -> Result<ExactScalar> {
    if !sym.is_symmetric() {
        return Err(Error::InvalidInput("Toeplitz±Hankel identities need a symmetric symbol".into()));
    }
    if k == 0 {
        return Ok(int(1));
    }
    let kk = k as i64;
    let coeffs = crate::exact::fourier_coeffs(sym, -kk, 2 * kk)?;
    th_determinant_from(tag, |j| coeffs[(j + kk) as usize].clone(), k)
}

/// [`th_determinant`] for arbitrary coefficients `σ_j`, `-K ≤ j ≤ 2K`.
pub(crate) fn th_determinant_from(tag: GroupTag, sigma: impl Fn(i64) -> ExactScalar, k: usize) -> Result<ExactScalar> {
    let (sign, offset) = match tag {
        GroupTag::OPlusEven => (1, 2),
        GroupTag::Sp => (-1, 0),
        GroupTag::OPlusOdd => (-1, 1),
        GroupTag::OMinusOdd => (1, 1),
        GroupTag::UEven | GroupTag::UOdd => return Err(unitary()),
    };
    let m: Vec<Vec<ExactScalar>> = (1..=k as i64)
        .map(|j| {
            (1..=k as i64)
                .map(|l| {
                    let h = sigma(j + l - offset);
                    if sign > 0 {
                        sigma(j - l) + h
                    } else {
                        sigma(j - l) - h
                    }
                })
                .collect()
        })
        .collect();
    let d = det_rational(&m)?;
    Ok(if tag == GroupTag::OPlusEven { d / int(2) } else { d })
}

/// Haar average of `Π (2t)^{±β}(ξ ± xⱼ)^{±β}` (upper sign E) over `G(K)`,
/// via Andréief's identity: `N_G/(2π)^K` times the Gram determinant of monic
/// Chebyshev polynomials against the Jacobi weight, each entry computed by
/// Gauss-Chebyshev quadrature in `θ` with `x = cos θ`.
pub fn hankel_via_quadrature(group: GroupKind, family: Family, beta: f64, t: f64) -> Result<f64> {
    hankel_via_quadrature_with(group, family, beta, t, DEFAULT_NODES)
}

pub fn hankel_via_quadrature_with(group: GroupKind, family: Family, beta: f64, t: f64, nodes: usize) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    let (a, b) = group.tag.jacobi_exponents()?;
    let k = group.k;
    let s = family.sign();
    // σ(e^{iθ}) = (1 + t² + 2st cos θ)^{sβ}
    let symbol = |x: f64| (1.0 + t * t + 2.0 * s * t * x).powf(s * beta);
    let jacobi = |theta: f64| {
        // (1+x)^a (1-x)^b dx = w(θ) dθ
        let (c, sn) = (theta.cos(), theta.sin());
        match (a > 0.0, b > 0.0) {
            (false, false) => 1.0,
            (true, true) => sn * sn,
            (false, true) => 1.0 - c,
            (true, false) => 1.0 + c,
        }
    };
    let mut gram = DMatrix::<f64>::zeros(k, k);
    let h = PI / nodes as f64;
    let mut monic = vec![0.0; k];
    for node in 0..nodes {
        let theta = (node as f64 + 0.5) * h;
        let x = theta.cos();
        let w = h * jacobi(theta) * symbol(x);
        for (n, p) in monic.iter_mut().enumerate() {
            *p = if n == 0 { 1.0 } else { (n as f64 * theta).cos() / 2f64.powi(n as i32 - 1) };
        }
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] += w * monic[i] * monic[j];
            }
        }
    }
    let log2n = group.tag.log2_normalization(k)?;
    let value = 2f64.powf(log2n) / (2.0 * PI).powi(k as i32) * gram.determinant();
    if !value.is_finite() {
        return Err(Error::NoConvergence(format!("quadrature for {} at K = {k}", group.tag)));
    }
    Ok(value)
}

/// Selection of consecutive Chebyshev polynomials for a Wronskian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WronskianSpec {
    pub kind: ChebKind,
    pub start_degree: usize,
    pub count: usize,
    #[serde(with = "crate::exact::symbol::rational_str")]
    pub point: ExactScalar,
}

/// `Wr[P_n, …, P_{n+N-1}](x) = det(P_{n+k-1}^{(j-1)}(x))`.
pub fn chebyshev_wronskian(spec: &WronskianSpec) -> Result<ExactScalar> {
    if spec.count == 0 {
        return Err(out_of_range("count", 0, "count >= 1"));
    }
    let m: Vec<Vec<ExactScalar>> = (0..spec.count)
        .map(|order| {
            (0..spec.count)
                .map(|k| chebyshev_derivative(spec.kind, spec.start_degree + k, order, &spec.point))
                .collect()
        })
        .collect();
    det_rational(&m)
}

/// `ξ = (1+t²)/(2t)`.
pub fn xi(t: &ExactScalar) -> ExactScalar {
    (int(1) + t * t) / (int(2) * t)
}

/// A formula value `coefficient · wronskian · π^{pi_power}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub coefficient: ExactScalar,
    pub wronskian: ExactScalar,
    pub pi_power: i32,
}

impl Prediction {
    /// Rational part `coefficient · wronskian`.
    pub fn rational(&self) -> ExactScalar {
        &self.coefficient * &self.wronskian
    }

    pub fn to_f64(&self) -> f64 {
        crate::exact::to_f64(&self.rational()) * PI.powi(self.pi_power)
    }
}

fn wr(kind: ChebKind, start: i64, count: usize, x: &ExactScalar) -> Result<ExactScalar> {
    if start < 0 {
        return Err(out_of_range("start degree", start, "degrees >= 0"));
    }
    chebyshev_wronskian(&WronskianSpec {
        kind,
        start_degree: start as usize,
        count,
        point: x.clone(),
    })
}

fn g_int(n: usize) -> Result<ExactScalar> {
    Ok(ExactScalar::from_integer(barnes_g_int(n as i64 + 1)?))
}

/// Characteristic-polynomial formula for `Z(β=N)/Z(β=0)` in its reference form, with
/// `C_E(N) = (-1)^{N(N-1)/2}/G(N+1)`, `C_H(N) = (4/π)^N/G(N+1)` and, for the
/// unitary groups, the products of two Wronskians.
pub fn charpoly_prediction(tag: GroupTag, family: Family, n: usize, k: usize, t: &ExactScalar) -> Result<Prediction> {
    if n == 0 || k == 0 {
        return Err(out_of_range("N, K", format!("{n}, {k}"), "N >= 1 and K >= 1"));
    }
    if family == Family::H && n >= k {
        return Err(out_of_range("N", n, "N < K for the H family"));
    }
    let x = xi(t);
    let mx = -x.clone();
    let (ni, ki) = (n as i64, k as i64);
    let g = g_int(n)?;
    let sign_n = if n % 2 == 0 { int(1) } else { int(-1) };
    match (family, tag) {
        (Family::E, GroupTag::UEven | GroupTag::UOdd) => {
            let m = tag.unitary_size(k).unwrap_or(0) as i64;
            let w = match tag {
                GroupTag::UOdd => wr(ChebKind::T, ki + 1, n, &mx)? * wr(ChebKind::U, ki, n, &mx)?,
                _ => wr(ChebKind::V, ki, n, &mx)? * wr(ChebKind::W, ki, n, &mx)?,
            };
            Ok(Prediction {
                coefficient: rpow(&(-int(2) * t), ni * m) / (&g * &g),
                wronskian: w,
                pi_power: 0,
            })
        }
        (Family::H, GroupTag::UEven | GroupTag::UOdd) => {
            let m = tag.unitary_size(k).unwrap_or(0) as i64;
            let w = match tag {
                GroupTag::UOdd => wr(ChebKind::T, ki - ni + 1, n, &x)? * wr(ChebKind::U, ki - ni - 1, n, &x)?,
                _ => wr(ChebKind::V, ki - ni, n, &x)? * wr(ChebKind::W, ki - ni, n, &x)?,
            };
            // 1/(G² (2t)^{NM} (π/4)^{2N})
            Ok(Prediction {
                coefficient: sign_n * rpow(&int(16), ni) / (&g * &g * rpow(&(int(2) * t), ni * m)),
                wronskian: w,
                pi_power: -2 * n as i32,
            })
        }
        (Family::E, _) => {
            let kind = tag.chebyshev_kind()?;
            let c_e = if (n * (n - 1) / 2) % 2 == 0 { int(1) } else { int(-1) } / &g;
            Ok(Prediction {
                coefficient: rpow(&(-int(2) * t), ni * ki) * c_e,
                wronskian: wr(kind, ki, n, &mx)?,
                pi_power: 0,
            })
        }
        (Family::H, _) => {
            let (kind, start, sign) = match tag {
                GroupTag::OPlusEven => (ChebKind::U, ki - ni - 1, sign_n),
                GroupTag::Sp => (ChebKind::T, ki - ni + 1, int(1)),
                GroupTag::OMinusOdd => (ChebKind::W, ki - ni, sign_n),
                _ => (ChebKind::V, ki - ni, int(1)),
            };
            Ok(Prediction {
                coefficient: sign * rpow(&int(4), ni) / (g * rpow(&(int(2) * t), ni * ki)),
                wronskian: wr(kind, start, n, &x)?,
                pi_power: -(n as i32),
            })
        }
    }
}

/// Exact `Z(β=N)/Z(β=0)` for the symmetric symbol with `β₁ = β₂ = N`.
pub fn exact_ratio(tag: GroupTag, family: Family, n: usize, k: usize, t: &ExactScalar) -> Result<ExactScalar> {
    let sym = SymbolSpec::integer(family, t.clone(), n as u64, n as u64)?;
    let trivial = SymbolSpec::integer(family, t.clone(), 0, 0)?;
    match tag.unitary_size(k) {
        Some(m) => Ok(toeplitz_det(&sym, m)?.value / toeplitz_det(&trivial, m)?.value),
        None => Ok(th_determinant(tag, &sym, k)? / th_determinant(tag, &trivial, k)?),
    }
}

/// Comparison of a Wronskian formula with the exact ratio over several `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WronskianCheck {
    pub group: GroupTag,
    pub family: Family,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_vec")]
    pub ts: Vec<ExactScalar>,
    #[serde(serialize_with = "ser_vec")]
    pub exact: Vec<ExactScalar>,
    /// Rational part of each prediction divided by the exact ratio.
    #[serde(serialize_with = "ser_vec")]
    pub ratios: Vec<ExactScalar>,
    /// Power of `π` carried by the prediction on top of `ratios`.
    pub pi_power: i32,
}

fn ser_vec<S: serde::Serializer>(v: &[ExactScalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&crate::exact::format_rational(q))?;
    }
    seq.end()
}

impl WronskianCheck {
    /// True when the prediction is a fixed multiple of the exact ratio.
    pub fn is_constant(&self) -> bool {
        self.ratios.windows(2).all(|w| w[0] == w[1])
    }

    /// Largest relative spread of the ratios (zero when constant).
    pub fn relative_spread(&self) -> f64 {
        let vals: Vec<f64> = self.ratios.iter().map(crate::exact::to_f64).collect();
        let first = vals.first().copied().unwrap_or(0.0);
        vals.iter().map(|v| ((v - first) / first).abs()).fold(0.0, f64::max)
    }
}

pub fn wronskian_check(tag: GroupTag, family: Family, n: usize, k: usize, ts: &[ExactScalar]) -> Result<WronskianCheck> {
    let mut exact = Vec::with_capacity(ts.len());
    let mut ratios = Vec::with_capacity(ts.len());
    let mut pi_power = 0;
    for t in ts {
        let e = exact_ratio(tag, family, n, k, t)?;
        let p = charpoly_prediction(tag, family, n, k, t)?;
        pi_power = p.pi_power;
        if e.is_zero() {
            return Err(Error::InvalidInput("exact ratio vanishes".into()));
        }
        ratios.push(p.rational() / &e);
        exact.push(e);
    }
    Ok(WronskianCheck {
        group: tag,
        family,
        n,
        k,
        ts: ts.to_vec(),
        exact,
        ratios,
        pi_power,
    })
}

/// Both sides of the unitary factorizations
/// `det T_{2K} = det(σ_{j-k}+σ_{j+k-1}) det(σ_{j-k}-σ_{j+k-1})` and
/// `det T_{2K+1} = ½det(σ_{j-k}-σ_{j+k})_K det(σ_{j-k}+σ_{j+k-2})_{K+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub even: (ExactScalar, ExactScalar),
    pub odd: (ExactScalar, ExactScalar),
}

pub fn unitary_factorization_check(sym: &SymbolSpec, k: usize) -> Result<Factorization> {
    if !sym.is_symmetric() {
        return Err(Error::InvalidInput("factorization needs a symmetric symbol".into()));
    }
    let even_lhs = toeplitz_det(sym, 2 * k)?.value;
    let even_rhs = th_determinant(GroupTag::OMinusOdd, sym, k)? * th_determinant(GroupTag::OPlusOdd, sym, k)?;
    let odd_lhs = toeplitz_det(sym, 2 * k + 1)?.value;
    let odd_rhs = th_determinant(GroupTag::Sp, sym, k)? * th_determinant(GroupTag::OPlusEven, sym, k + 1)?;
    Ok(Factorization {
        even: (even_lhs, even_rhs),
        odd: (odd_lhs, odd_rhs),
    })
}

/// Terms of the large-K prediction `log Z ≈ Σ` for the Jacobi-weighted
/// Hankel form of a classical group average with `f(x) = (ξ ± x)^{±β}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasorChen {
    pub group: GroupTag,
    pub family: Family,
    pub beta: f64,
    pub t: f64,
    /// K-independent remainder of `N_G (2π)^K/2^{K(K+a+b)}`, in log.
    pub prefactor: f64,
    /// Barnes-G and Gamma block, in log.
    pub barnes: f64,
    /// `(a+b)/(2π) ∫ log f/√(1-x²)`.
    pub single: f64,
    /// `-(a/2) log f(-1) - (b/2) log f(1)`.
    pub endpoint: f64,
    /// `∫ log f/√(1-x²) [P∫ f'√(1-y²)/(f (x-y)) dy/2π] dx/2π`.
    pub double: f64,
    pub log_z: f64,
}

impl BasorChen {
    pub fn value(&self) -> f64 {
        self.log_z.exp()
    }
}

pub fn basor_chen_asymptotic(family: Family, tag: GroupTag, beta: f64, t: f64) -> Result<BasorChen> {
    basor_chen_with(family, tag, beta, t, DEFAULT_NODES)
}

pub fn basor_chen_with(family: Family, tag: GroupTag, beta: f64, t: f64, nodes: usize) -> Result<BasorChen> {
    if !(t > 0.0 && t < 1.0) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    let (a, b) = tag.jacobi_exponents()?;
    let xi = (1.0 + t * t) / (2.0 * t);
    let s = family.sign();
    let log_f = |x: f64| s * beta * (xi + s * x).ln();
    let dlog_f = |y: f64| beta / (xi + s * y);

    let prefactor = if tag == GroupTag::OPlusEven { 2f64.ln() } else { 0.0 };
    let barnes = barnes_block(a, b)?;

    let r1 = QuadratureRule::gauss_chebyshev_1(nodes)?;
    let r2 = QuadratureRule::gauss_chebyshev_2(nodes)?;
    let single = (a + b) / (2.0 * PI) * r1.integrate(log_f);
    let endpoint = -(a / 2.0) * log_f(-1.0) - (b / 2.0) * log_f(1.0);
    let inner_err = std::cell::RefCell::new(None);
    let double = r1.integrate(|x| {
        // kernel 1/(x-y) = -1/(y-x)
        match pv_integral(dlog_f, ChebWeight::SecondKind, x, &r2) {
            Ok(v) => log_f(x) * (-v / (2.0 * PI)),
            Err(e) => {
                *inner_err.borrow_mut() = Some(e);
                0.0
            }
        }
    }) / (2.0 * PI);
    if let Some(e) = inner_err.into_inner() {
        return Err(e);
    }
    let log_z = prefactor + barnes + single + endpoint + double;
    if !log_z.is_finite() {
        return Err(Error::NoConvergence("Basor-Chen quadrature".into()));
    }
    Ok(BasorChen {
        group: tag,
        family,
        beta,
        t,
        prefactor,
        barnes,
        single,
        endpoint,
        double,
        log_z,
    })
}

/// `log[G((a+b+1)/2)² G((a+b+2)/2)² Γ((a+b+1)/2) / (G(a+b+1) G(a+1) G(b+1))]`,
/// continued to `a+b = -1`, where `G(ε)²Γ(ε)/G(2ε) → ½`.
fn barnes_block(a: f64, b: f64) -> Result<f64> {
    let s = a + b;
    let common = 2.0 * log_barnes_g((s + 2.0) / 2.0)? - log_barnes_g(a + 1.0)? - log_barnes_g(b + 1.0)?;
    if (s + 1.0).abs() < 1e-12 {
        return Ok(common - 2f64.ln());
    }
    Ok(common + 2.0 * log_barnes_g((s + 1.0) / 2.0)? + ln_gamma((s + 1.0) / 2.0) - log_barnes_g(s + 1.0)?)
}

/// Partial sums of the reference series
/// `±(β²/4)(1-t²) Σ_{n≥0} (∓t)ⁿ/(n+1) Uₙ(∓ξ)` (upper sign E).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub family: Family,
    pub beta: f64,
    pub t: f64,
    pub partial_sums: Vec<f64>,
    /// Least-squares slope of the partial sums against `ln(n+1)` over the
    /// last decade of terms.
    pub log_slope: f64,
    /// Partial sums still grow like `c·ln n` with `c` near `β²/4`.
    pub divergent: bool,
}

impl SeriesReport {
    /// Whether `value` is within `tol` of any partial sum.
    pub fn matches(&self, value: f64, tol: f64) -> bool {
        self.partial_sums.iter().any(|s| (s - value).abs() <= tol)
    }
}

pub fn printed_series_partial(family: Family, beta: f64, t: f64, n_max: usize) -> Result<SeriesReport> {
    if n_max > 10_000 {
        return Err(out_of_range("n_max", n_max, "n_max <= 10000"));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    let s = family.sign();
    let x = -s * (1.0 + t * t) / (2.0 * t);
    let pref = s * beta * beta / 4.0 * (1.0 - t * t);
    let mut sums = Vec::with_capacity(n_max + 1);
    // a_n = cⁿ Uₙ(x) with c = ∓t, by the scaled three-term recurrence
    let c = -s * t;
    let (mut a_prev, mut a) = (0.0, 1.0);
    let mut acc = 0.0;
    for n in 0..=n_max {
        acc += pref * a / (n as f64 + 1.0);
        sums.push(acc);
        let next = 2.0 * x * c * a - c * c * a_prev;
        a_prev = a;
        a = next;
    }
    let lo = (n_max / 10).max(1);
    let (mut sx, mut sy, mut sxx, mut sxy, mut m) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (n, &y) in sums.iter().enumerate().skip(lo) {
        let lx = (n as f64 + 1.0).ln();
        sx += lx;
        sy += y;
        sxx += lx * lx;
        sxy += lx * y;
        m += 1.0;
    }
    let log_slope = if m >= 2.0 { (m * sxy - sx * sy) / (m * sxx - sx * sx) } else { 0.0 };
    let target = beta * beta / 4.0;
    let divergent = target > 0.0 && n_max >= 10 && (log_slope.abs() - target).abs() < 0.25 * target;
    Ok(SeriesReport {
        family,
        beta,
        t,
        partial_sums: sums,
        log_slope,
        divergent,
    })
}

/// `Σ_{m=0}^{K} t^{2m}`, the Sp(2K) average of the E symbol at `β = 1`.
pub fn sp_e1_closed_form(t: &ExactScalar, k: usize) -> ExactScalar {
    let u = t * t;
    let mut acc = ExactScalar::zero();
    let mut p = ExactScalar::one();
    for _ in 0..=k {
        acc += &p;
        p *= &u;
    }
    acc
}

/// Whether a rational is strictly positive.
pub fn is_positive(q: &ExactScalar) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use approx::assert_relative_eq;

    fn q(s: &str) -> ExactScalar {
        parse_rational(s).unwrap()
    }

    fn sym(f: Family, t: &str, n: u64) -> SymbolSpec {
        SymbolSpec::integer(f, q(t), n, n).unwrap()
    }

    #[test]
    fn th_examples() {
        let t = q("1/3");
        let s = SymbolSpec::integer(Family::E, t.clone(), 1, 1).unwrap();
        assert_eq!(th_determinant(GroupTag::Sp, &s, 1).unwrap(), int(1) + &t * &t);
        for k in 1..=20 {
            assert_eq!(th_determinant(GroupTag::Sp, &s, k).unwrap(), sp_e1_closed_form(&t, k));
        }
        let asym = SymbolSpec::integer(Family::E, t, 1, 2).unwrap();
        assert!(th_determinant(GroupTag::Sp, &asym, 2).is_err());
        for tag in GroupTag::CLASSICAL {
            assert_eq!(th_determinant(tag, &sym(Family::H, "1/2", 0), 3).unwrap(), int(1));
        }
    }

    #[test]
    fn odd_groups_swap_under_sign_flip() {
        for f in [Family::E, Family::H] {
            for k in 1..=4 {
                let s = sym(f, "2/5", 2);
                let c = crate::exact::fourier_coeffs(&s, -(k as i64), 2 * k as i64).unwrap();
                let at = |j: i64| c[(j + k as i64) as usize].clone();
                let flipped = |j: i64| if j.rem_euclid(2) == 1 { -at(j) } else { at(j) };
                let plus = th_determinant_from(GroupTag::OMinusOdd, flipped, k).unwrap();
                assert_eq!(plus, th_determinant(GroupTag::OPlusOdd, &s, k).unwrap());
            }
        }
    }

    #[test]
    fn quadrature_examples() {
        let g = GroupKind::new(GroupTag::Sp, 1).unwrap();
        assert_relative_eq!(hankel_via_quadrature(g, Family::E, 1.0, 0.4).unwrap(), 1.16, max_relative = 1e-10);
        for tag in GroupTag::CLASSICAL {
            for k in 1..=4 {
                let g = GroupKind::new(tag, k).unwrap();
                assert!((hankel_via_quadrature(g, Family::E, 0.0, 0.3).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        assert!(GroupKind::new(GroupTag::Sp, 0).is_err());
    }

    #[test]
    fn hankel_bridge() {
        for tag in GroupTag::CLASSICAL {
            for f in [Family::E, Family::H] {
                for n in 1..=2u64 {
                    for k in 1..=4 {
                        for t in ["1/4", "1/2"] {
                            let exact = crate::exact::to_f64(&th_determinant(tag, &sym(f, t, n), k).unwrap());
                            let g = GroupKind::new(tag, k).unwrap();
                            let quad = hankel_via_quadrature(g, f, n as f64, crate::exact::to_f64(&q(t))).unwrap();
                            assert!((exact - quad).abs() < 1e-9 * exact.abs().max(1.0), "{tag} {f} {n} {k} {t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wronskian_examples() {
        let x = q("3/7");
        let w = |kind, start, count| {
            chebyshev_wronskian(&WronskianSpec {
                kind,
                start_degree: start,
                count,
                point: x.clone(),
            })
            .unwrap()
        };
        assert_eq!(w(ChebKind::U, 1, 1), int(2) * &x);
        assert_eq!(w(ChebKind::T, 1, 2), int(2) * &x * &x + int(1));
        let xi_half = xi(&q("1/2"));
        for k in 0..=6 {
            for n in 1..=3 {
                let v = chebyshev_wronskian(&WronskianSpec {
                    kind: ChebKind::U,
                    start_degree: k,
                    count: n,
                    point: xi_half.clone(),
                })
                .unwrap();
                assert!(v.is_positive(), "K={k} N={n}");
            }
        }
    }

    #[test]
    fn prediction_sp_e_n1() {
        let t = q("1/3");
        let p = charpoly_prediction(GroupTag::Sp, Family::E, 1, 1, &t).unwrap();
        assert_eq!(p.rational(), int(2) * (int(1) + &t * &t));
        let c = wronskian_check(GroupTag::Sp, Family::E, 1, 1, &[q("1/4"), q("1/2"), q("3/4")]).unwrap();
        assert!(c.is_constant());
        assert_eq!(c.ratios[0], int(2));
        assert!(charpoly_prediction(GroupTag::Sp, Family::H, 2, 2, &t).is_err());
    }

    #[test]
    fn wronskian_constants_are_t_independent() {
        let ts = [q("1/4"), q("1/2"), q("3/4")];
        for tag in GroupTag::CLASSICAL {
            for n in 1..=2 {
                for k in 2..=3 {
                    let c = wronskian_check(tag, Family::E, n, k, &ts).unwrap();
                    assert!(c.is_constant(), "{tag} N={n} K={k}: {:?}", c.ratios);
                }
            }
        }
        let c = wronskian_check(GroupTag::UEven, Family::E, 1, 1, &ts).unwrap();
        assert!(c.is_constant(), "{:?}", c.ratios);
    }

    #[test]
    fn duality_of_odd_orthogonal_wronskians() {
        let t = q("2/5");
        for n in 1..=2 {
            for k in 2..=4 {
                let e = charpoly_prediction(GroupTag::OMinusOdd, Family::E, n, k, &t).unwrap();
                let h = charpoly_prediction(GroupTag::OPlusOdd, Family::H, n, k + n, &-t.clone()).unwrap();
                assert_eq!(e.wronskian, h.wronskian);
                if k > 2 * n {
                    let wrong = charpoly_prediction(GroupTag::OPlusOdd, Family::H, n, k - n, &-t.clone()).unwrap();
                    assert_ne!(e.wronskian, wrong.wronskian);
                }
            }
        }
    }

    #[test]
    fn unitary_factorization() {
        let t = q("1/3");
        let s = sym(Family::E, "1/3", 1);
        let f = unitary_factorization_check(&s, 1).unwrap();
        let c = crate::exact::fourier_coeffs(&s, 0, 1).unwrap();
        assert_eq!(f.even.0, (int(1) + &t * &t).pow(2) - &t * &t);
        assert_eq!(f.even.0, (&c[0] + &c[1]) * (&c[0] - &c[1]));
        for (fam, n) in [(Family::E, 2), (Family::H, 1)] {
            for k in 1..=3 {
                let f = unitary_factorization_check(&sym(fam, "1/2", n), k).unwrap();
                assert_eq!(f.even.0, f.even.1);
                assert_eq!(f.odd.0, f.odd.1);
            }
        }
    }

    #[test]
    fn basor_chen_sp_limit() {
        let bc = basor_chen_asymptotic(Family::E, GroupTag::Sp, 1.0, 0.5).unwrap();
        assert!((bc.value() - 4.0 / 3.0).abs() < 1e-6, "{bc:?}");
        let zero = basor_chen_asymptotic(Family::H, GroupTag::OPlusEven, 0.0, 0.3).unwrap();
        assert!(zero.double.abs() < 1e-15 && zero.log_z.abs() < 1e-12);
        let e = basor_chen_asymptotic(Family::E, GroupTag::Sp, 1.5, 0.6).unwrap();
        let h = basor_chen_asymptotic(Family::H, GroupTag::Sp, 1.5, 0.6).unwrap();
        assert!((e.double - h.double).abs() < 1e-8);
        assert!((e.double + 0.5 * 1.5f64.powi(2) * (1.0 - 0.36f64).ln()).abs() < 1e-9);
    }

    #[test]
    fn basor_chen_matches_large_k() {
        for tag in GroupTag::CLASSICAL {
            for f in [Family::E, Family::H] {
                for n in 1..=2u64 {
                    let exact = crate::exact::to_f64(&th_determinant(tag, &sym(f, "1/4", n), 16).unwrap());
                    let bc = basor_chen_asymptotic(f, tag, n as f64, 0.25).unwrap();
                    assert!((exact.ln() - bc.log_z).abs() < 1e-9, "{tag} {f} {n}: {} vs {}", exact.ln(), bc.log_z);
                }
            }
        }
    }

    #[test]
    fn barnes_block_values() {
        assert!((barnes_block(-0.5, -0.5).unwrap() + 2f64.ln()).abs() < 1e-12);
        for (a, b) in [(0.5, 0.5), (-0.5, 0.5), (0.5, -0.5)] {
            assert!(barnes_block(a, b).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn series_diverges() {
        let r = printed_series_partial(Family::E, 1.0, 0.5, 0).unwrap();
        assert_relative_eq!(r.partial_sums[0], 0.75 / 4.0, max_relative = 1e-14);
        let mut last = 0.0;
        for n in [100, 1000, 10000] {
            let r = printed_series_partial(Family::E, 1.0, 0.5, n).unwrap();
            assert!(r.divergent, "{}", r.log_slope);
            let s = *r.partial_sums.last().unwrap();
            assert!(s > last);
            last = s;
            // closed form Σ (1-t^{2n+2})/(4(n+1))
            let want: f64 = (0..=n).map(|m| (1.0 - 0.25f64.powi(m as i32 + 1)) / (4.0 * (m as f64 + 1.0))).sum();
            assert!((s - want).abs() < 1e-9 * want, "{s} {want}");
        }
        assert!(printed_series_partial(Family::E, 1.0, 0.5, 20_000).is_err());
    }
}
