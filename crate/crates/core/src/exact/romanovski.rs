use statrs::function::gamma::ln_gamma;

use super::{int, rpow, ExactScalar};
use crate::error::{out_of_range, Result};
use crate::exact::ensembles::bs_closed_form;
use crate::numeric::combinatorics::factorial;

fn check(n: u64, a1: f64, a2: f64) -> Result<()> {
    if a1 + a2 <= 2.0 * n as f64 + 1.0 {
        return Err(out_of_range("alpha1 + alpha2", a1 + a2, "(2n + 1, inf)"));
    }
    if a1 <= n as f64 || a2 <= n as f64 {
        return Err(out_of_range("min(alpha1, alpha2)", a1.min(a2), "(n, inf)"));
    }
    Ok(())
}

/// Squared norm of the monic Romanovski polynomial of degree `n` for the
/// weight `(1-ix)^{-α₁} (1+ix)^{-α₂}`.
pub fn romanovski_norm(n: u64, alpha1: f64, alpha2: f64) -> Result<f64> {
    check(n, alpha1, alpha2)?;
    let s = alpha1 + alpha2;
    let nf = n as f64;
    let log_base = (1.0 - s) * std::f64::consts::LN_2 + ln_gamma(s - nf)
        - ln_gamma(nf + 1.0)
        - (s - 2.0 * nf - 1.0).ln()
        - ln_gamma(alpha1 - nf)
        - ln_gamma(alpha2 - nf);
    let log_bracket = ln_gamma(nf + 1.0) + nf * std::f64::consts::LN_2 + ln_gamma(s - 2.0 * nf) - ln_gamma(s - nf);
    Ok((log_base + 2.0 * log_bracket).exp())
}

/// Exact norm for integer exponents.
pub fn romanovski_norm_exact(n: u64, alpha1: u64, alpha2: u64) -> Result<ExactScalar> {
    check(n, alpha1 as f64, alpha2 as f64)?;
    let s = alpha1 + alpha2;
    // Γ(m) = (m-1)! for integer m ≥ 1.
    let g = |m: u64| int(factorial(m - 1));
    let base = rpow(&int(2), 1 - s as i64) * g(s - n) / (int(factorial(n)) * int(s - 2 * n - 1) * g(alpha1 - n) * g(alpha2 - n));
    let bracket = int(factorial(n)) * rpow(&int(2), n as i64) * g(s - 2 * n) / g(s - n);
    Ok(base * &bracket * &bracket)
}

/// `2^{K²+2Kβ} Π_{n<K} h_n` at `α₁ = α₂ = K+β`, exactly.
pub fn romanovski_product(beta: u64, k: u64) -> Result<ExactScalar> {
    let a = k + beta;
    let mut prod = rpow(&int(2), (k * k + 2 * k * beta) as i64);
    for n in 0..k {
        prod *= romanovski_norm_exact(n, a, a)?;
    }
    Ok(prod)
}

/// Floating-point counterpart of [`romanovski_product`].
pub fn romanovski_product_f64(beta: f64, k: u64) -> Result<f64> {
    let a = k as f64 + beta;
    let mut log = (k * k) as f64 * std::f64::consts::LN_2 + 2.0 * k as f64 * beta * std::f64::consts::LN_2;
    for n in 0..k {
        log += romanovski_norm(n, a, a)?.ln();
    }
    Ok(log.exp())
}

/// `K! / 2^{K²-2βK}`.
pub fn stereo_bracket(k: u64, beta: u64) -> ExactScalar {
    int(factorial(k)) * rpow(&int(2), 2 * beta as i64 * k as i64 - (k * k) as i64)
}

/// Determinant of the stereographic ensemble with a shifted symbol, as a
/// product of Barnes-G ratios.
pub fn shifted_stereo_det(k: u64, beta: u64, s: i64) -> Result<ExactScalar> {
    if s.unsigned_abs() > beta {
        return Err(out_of_range("s", s, "[-beta, beta]"));
    }
    let hi = (beta as i64 + s) as u32;
    let lo = (beta as i64 - s) as u32;
    Ok(stereo_bracket(k, beta) * bs_closed_form(hi, lo, k as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, to_f64};
    use crate::numeric::barnes::barnes_g_int;

    #[test]
    fn first_norm() {
        assert_eq!(romanovski_norm_exact(0, 2, 2).unwrap(), parse_rational("1/4").unwrap());
        approx::assert_relative_eq!(romanovski_norm(0, 2.0, 2.0).unwrap(), 0.25, max_relative = 1e-14);
        assert_eq!(romanovski_product(1, 1).unwrap(), int(2));
        assert!(romanovski_norm(2, 2.0, 2.0).is_err());
    }

    #[test]
    fn product_matches_closed_form() {
        for beta in 1..=4u64 {
            for k in 1..=4u64 {
                let bs = bs_closed_form(beta as u32, beta as u32, k as u32);
                assert_eq!(romanovski_product(beta, k).unwrap(), bs);
                approx::assert_relative_eq!(
                    romanovski_product_f64(beta as f64, k).unwrap(),
                    to_f64(&bs),
                    max_relative = 1e-10
                );
            }
        }
    }

    #[test]
    fn norms_positive() {
        for n in 0..5 {
            assert!(romanovski_norm(n, 7.3, 5.1).unwrap() > 0.0);
        }
    }

    #[test]
    fn stereo_det_examples() {
        assert_eq!(shifted_stereo_det(1, 1, 0).unwrap(), int(4));
        assert_eq!(shifted_stereo_det(1, 1, 1).unwrap(), stereo_bracket(1, 1) * bs_closed_form(2, 0, 1));
        assert!(shifted_stereo_det(1, 1, 2).is_err());
        // Explicit G-product form.
        let g = |n: i64| int(barnes_g_int(n).unwrap());
        for k in 1..=3i64 {
            for beta in 1..=3i64 {
                for s in -beta..=beta {
                    let direct = stereo_bracket(k as u64, beta as u64) * g(k + 1) * g(beta + s + 1) * g(beta - s + 1)
                        / (g(k + beta + s + 1) * g(k + beta - s + 1))
                        * g(k + 2 * beta + 1)
                        / g(2 * beta + 1);
                    assert_eq!(shifted_stereo_det(k as u64, beta as u64, s).unwrap(), direct);
                }
            }
        }
    }
}
