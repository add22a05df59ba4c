use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use super::determinant::det_rational;
use super::partition::{schur_principal, Partition};
use super::symbol::{rational_str, SymbolSpec};
use super::{format_rational, int, rpow, ExactScalar};
use crate::error::{out_of_range, Error, Result};
use crate::numeric::barnes::barnes_g_int;
use crate::numeric::combinatorics::{binomial, factorial};

/// Default cap on the number of enumerated terms.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// How an exact value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Toeplitz,
    SchurSum,
    MeixnerSum,
    ClosedForm,
    ToeplitzHankel,
    Romanovski,
}

/// Exact value tagged with its engine and inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactResult {
    #[serde(with = "rational_str")]
    pub value: ExactScalar,
    pub method: Method,
    pub params: BTreeMap<String, String>,
}

impl ExactResult {
    pub fn new<I, K, V>(value: ExactScalar, method: Method, params: I) -> Self
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: ToString,
    {
        Self {
            value,
            method,
            params: params.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect(),
        }
    }

    pub fn value_string(&self) -> String {
        format_rational(&self.value)
    }
}

/// `det(σ_{j-k})` for `j, k = 1..K`.
pub fn toeplitz_det(sym: &SymbolSpec, k: usize) -> Result<ExactResult> {
    let k_i = k as i64;
    let coeffs = super::symbol::fourier_coeffs(sym, -(k_i - 1).max(0), (k_i - 1).max(0))?;
    let off = (k_i - 1).max(0);
    let m: Vec<Vec<ExactScalar>> = (0..k_i)
        .map(|j| (0..k_i).map(|c| coeffs[(j - c + off) as usize].clone()).collect())
        .collect();
    let value = det_rational(&m)?;
    Ok(ExactResult::new(
        value,
        Method::Toeplitz,
        [
            ("family", sym.family.to_string()),
            ("t", format_rational(&sym.t)),
            ("beta1", format_rational(&sym.beta1)),
            ("beta2", format_rational(&sym.beta2)),
            ("shift", sym.shift.to_string()),
            ("K", k.to_string()),
        ],
    ))
}

fn check_t(t: &ExactScalar) -> Result<()> {
    if !t.is_positive() || *t > int(1) {
        return Err(out_of_range("t", t, "(0, 1]"));
    }
    Ok(())
}

/// `Σ_{λ₁ ≤ K} s_λ(t^{N₁}) s_λ(t^{N₂})` by partition enumeration.
pub fn schur_sum_oracle(n1: u32, n2: u32, k: u32, t: &ExactScalar) -> Result<ExactScalar> {
    schur_sum_oracle_with_budget(n1, n2, k, t, DEFAULT_BUDGET)
}

pub fn schur_sum_oracle_with_budget(n1: u32, n2: u32, k: u32, t: &ExactScalar, budget: u64) -> Result<ExactScalar> {
    check_t(t)?;
    let rows = n1.min(n2) as usize;
    let required = Partition::box_count(rows, k);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(Partition::in_box(rows, k)
        .iter()
        .map(|l| schur_principal(l, t, n1) * schur_principal(l, t, n2))
        .fold(ExactScalar::zero(), |a, b| a + b))
}

/// Discrete log-gas with a hard wall at `N₁+K-1`.
pub fn meixner_sum(n1: u32, n2: u32, k: u32, t: &ExactScalar) -> Result<ExactScalar> {
    meixner_sum_with_budget(n1, n2, k, t, DEFAULT_BUDGET)
}

pub fn meixner_sum_with_budget(n1: u32, n2: u32, k: u32, t: &ExactScalar, budget: u64) -> Result<ExactScalar> {
    check_t(t)?;
    let (n1, n2) = if n1 <= n2 { (n1, n2) } else { (n2, n1) };
    if n1 == 0 {
        return Ok(int(1));
    }
    let (n1u, n2u) = (n1 as u64, n2 as u64);
    let diff = n2u - n1u;
    let t2 = t * t;
    let top = n1u + k as u64;
    let weights: Vec<ExactScalar> = (0..top)
        .map(|h| int(binomial(diff + h, h as i64)) * rpow(&t2, h as i64))
        .collect();

    let enumerate = Partition::box_count(n1 as usize, k);
    let sum = if enumerate <= budget as u128 {
        let mut acc = ExactScalar::zero();
        let mut tuple = Vec::with_capacity(n1 as usize);
        increasing_tuples(top, n1 as usize, 0, &mut tuple, &weights, &mut acc);
        acc * int(factorial(n1u))
    } else {
        let heine = top as u128 * 2 * n1 as u128;
        if heine > budget as u128 {
            return Err(Error::BudgetExceeded {
                required: enumerate,
                budget,
            });
        }
        heine_sum(n1 as usize, &weights)?
    };

    let g = |n: u64| barnes_g_int(n as i64).map(int);
    let prefactor = rpow(t, -((n1u * (n1u - 1)) as i64)) * num::pow(int(factorial(diff)), n1 as usize) * g(diff + 1)?
        / (int(factorial(n1u)) * g(n1u + 1)? * g(n2u + 1)?);
    Ok(prefactor * sum)
}

/// `N₁! det[m_{i+j}]` with `m_p = Σ_h h^p w(h)`.
fn heine_sum(n1: usize, weights: &[ExactScalar]) -> Result<ExactScalar> {
    let moments: Vec<ExactScalar> = (0..2 * n1 - 1)
        .map(|p| {
            weights
                .iter()
                .enumerate()
                .map(|(h, w)| rpow(&int(h as u64), p as i64) * w)
                .fold(ExactScalar::zero(), |a, b| a + b)
        })
        .collect();
    let m: Vec<Vec<ExactScalar>> = (0..n1).map(|i| (0..n1).map(|j| moments[i + j].clone()).collect()).collect();
    Ok(det_rational(&m)? * int(factorial(n1 as u64)))
}

fn increasing_tuples(
    top: u64,
    len: usize,
    start: u64,
    cur: &mut Vec<u64>,
    weights: &[ExactScalar],
    acc: &mut ExactScalar,
) {
    if cur.len() == len {
        let mut v = BigInt::one();
        for i in 0..len {
            for j in i + 1..len {
                let d = BigInt::from(cur[j] - cur[i]);
                v *= &d * &d;
            }
        }
        let w = cur.iter().fold(ExactScalar::one(), |a, &h| a * &weights[h as usize]);
        *acc += int(v) * w;
        return;
    }
    let remaining = (len - cur.len()) as u64;
    for h in start..=top - remaining {
        cur.push(h);
        increasing_tuples(top, len, h + 1, cur, weights, acc);
        cur.pop();
    }
}

/// Probability that `λ₁ ≤ K` under the Schur measure, `(1-t²)^{N₁N₂}` times the box sum.
pub fn prob_lambda1(n1: u32, n2: u32, k: u32, t: &ExactScalar) -> Result<ExactScalar> {
    if *t >= int(1) {
        return Err(out_of_range("t", t, "(0, 1)"));
    }
    let z = schur_sum_oracle(n1, n2, k, t)?;
    Ok(z * rpow(&(int(1) - t * t), n1 as i64 * n2 as i64))
}

/// Barnes-G product for the Toeplitz determinant at `t = 1`.
pub fn bs_closed_form(n1: u32, n2: u32, k: u32) -> ExactScalar {
    let g = |n: u32| int(barnes_g_int(n as i64).expect("argument is at least 1"));
    g(n1 + 1) * g(n2 + 1) * g(n1 + n2 + k + 1) * g(k + 1) / (g(n1 + n2 + 1) * g(n1 + k + 1) * g(n2 + k + 1))
}

/// `bs_closed_form(N+s, N-s, K)`, the `t = 1` value with a monomial shift `s`.
pub fn shifted_closed_form(n: u32, s: i64, k: u32) -> Result<ExactScalar> {
    if s.unsigned_abs() > n as u64 {
        return Err(out_of_range("s", s, "[-N, N]"));
    }
    let s = s as i32;
    let n = n as i32;
    Ok(bs_closed_form((n + s) as u32, (n - s) as u32, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{det_leibniz, parse_rational};
    use crate::Family;

    fn q(s: &str) -> ExactScalar {
        parse_rational(s).unwrap()
    }

    fn toep(f: Family, t: &ExactScalar, n1: u64, n2: u64, k: usize) -> ExactScalar {
        toeplitz_det(&SymbolSpec::integer(f, t.clone(), n1, n2).unwrap(), k).unwrap().value
    }

    #[test]
    fn spec_values() {
        let t = q("1/3");
        let t2 = &t * &t;
        let one = int(1);
        assert_eq!(toep(Family::E, &t, 1, 1, 2), &one + &t2 + &t2 * &t2);
        assert_eq!(toep(Family::E, &t, 2, 1, 2), &one + int(2) * &t2 + int(3) * &t2 * &t2);
        for k in 1..5 {
            assert_eq!(toep(Family::H, &t, 1, 1, k), (&one - &t2).recip());
        }
        assert_eq!(schur_sum_oracle(1, 1, 1, &t).unwrap(), &one + &t2);
        assert_eq!(schur_sum_oracle(1, 1, 2, &t).unwrap(), &one + &t2 + &t2 * &t2);
        assert_eq!(schur_sum_oracle(2, 1, 2, &t).unwrap(), &one + int(2) * &t2 + int(3) * &t2 * &t2);
        assert_eq!(meixner_sum(1, 1, 1, &t).unwrap(), &one + &t2);
        assert_eq!(bs_closed_form(1, 1, 1), int(2));
        assert_eq!(bs_closed_form(2, 1, 2), int(6));
        assert_eq!(bs_closed_form(3, 2, 0), int(1));
        assert_eq!(shifted_closed_form(1, 1, 1).unwrap(), int(1));
        assert!(shifted_closed_form(1, 2, 1).is_err());
        assert_eq!(prob_lambda1(1, 1, 1, &t).unwrap(), (&one + &t2) * (&one - &t2));
    }

    #[test]
    fn meixner_single_variable_is_geometric() {
        let t = q("3/4");
        for k in 0..6u32 {
            let expect = (0..=k as i64).map(|h| rpow(&(&t * &t), h)).fold(int(0), |a, b| a + b);
            assert_eq!(meixner_sum(1, 1, k, &t).unwrap(), expect);
        }
    }

    #[test]
    fn meixner_heine_route_agrees() {
        let t = q("1/2");
        // Budgets sit between the Heine cost and the enumeration count.
        for (n1, n2, k, budget) in [(3, 3, 6, 60), (2, 3, 10, 60), (3, 5, 7, 60), (4, 4, 6, 100)] {
            assert!(Partition::box_count(n1 as usize, k) > budget as u128);
            let direct = meixner_sum(n1, n2, k, &t).unwrap();
            let heine = meixner_sum_with_budget(n1, n2, k, &t, budget).unwrap();
            assert_eq!(direct, heine, "{n1} {n2} {k}");
        }
        assert!(matches!(
            meixner_sum_with_budget(3, 3, 3, &t, 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn triple_equality_small() {
        for t in ["1/4", "1/2", "3/4"] {
            let t = q(t);
            for n1 in 1..=3u32 {
                for n2 in 1..=3u32 {
                    for k in 1..=3u32 {
                        let a = toep(Family::E, &t, n1 as u64, n2 as u64, k as usize);
                        let b = schur_sum_oracle(n1, n2, k, &t).unwrap();
                        let c = meixner_sum(n1, n2, k, &t).unwrap();
                        assert_eq!(a, b, "toeplitz vs schur at {n1} {n2} {k}");
                        assert_eq!(b, c, "schur vs meixner at {n1} {n2} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn toeplitz_matches_expansion() {
        let t = q("2/3");
        for f in [Family::E, Family::H] {
            let s = SymbolSpec::integer(f, t.clone(), 2, 3).unwrap().with_shift(1);
            for k in 1..=5usize {
                let m: Vec<Vec<ExactScalar>> = (0..k as i64)
                    .map(|j| (0..k as i64).map(|c| s.coeff(j - c).unwrap()).collect())
                    .collect();
                assert_eq!(toeplitz_det(&s, k).unwrap().value, det_leibniz(&m).unwrap());
            }
        }
    }

    #[test]
    fn shifted_symbol_at_t_one() {
        for n in 1..=3u32 {
            for s in -(n as i64)..=n as i64 {
                for k in 1..=4usize {
                    let sym = SymbolSpec::integer(Family::E, int(1), n as u64, n as u64).unwrap().with_shift(s);
                    let det = toeplitz_det(&sym, k).unwrap().value;
                    assert_eq!(det, shifted_closed_form(n, s, k as u32).unwrap(), "N={n} s={s} K={k}");
                }
            }
        }
    }
}
