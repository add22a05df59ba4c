//! Exact rational evaluation of finite-K partition functions.

pub mod determinant;
pub mod ensembles;
pub mod partition;
pub mod romanovski;
pub mod symbol;

use num::{BigInt, BigRational, One, Signed, Zero};

pub use determinant::{det_bareiss, det_leibniz, det_rational};
pub use ensembles::{
    bs_closed_form, meixner_sum, prob_lambda1, schur_sum_oracle, shifted_closed_form, toeplitz_det, ExactResult,
    Method, DEFAULT_BUDGET,
};
pub use partition::{hook_dim, schur_principal, Partition};
pub use romanovski::{romanovski_norm, romanovski_norm_exact, romanovski_product, shifted_stereo_det};
pub use symbol::{fourier_coeffs, SymbolSpec};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms.
pub type ExactScalar = BigRational;

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<ExactScalar> {
    let bad = || Error::InvalidInput(format!("cannot parse '{s}' as a rational"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| bad())?
        };
        let den = num::pow(BigInt::from(10), fp.len());
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let mag = ip.abs() * &den + frac;
        return Ok(BigRational::new(if neg { -mag } else { mag }, den));
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

/// Renders a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(q: &ExactScalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest `f64` to a rational.
pub fn to_f64(q: &ExactScalar) -> f64 {
    num::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// Integer power with negative exponents allowed.
pub(crate) fn rpow(base: &ExactScalar, exp: i64) -> ExactScalar {
    let p = num::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

pub(crate) fn int(n: impl Into<BigInt>) -> ExactScalar {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&parse_rational("10/4").unwrap()), "5/2");
        assert_eq!(format_rational(&int(-3)), "-3");
    }

    #[test]
    fn powers() {
        let h = parse_rational("1/2").unwrap();
        assert_eq!(rpow(&h, -3), int(8));
        assert_eq!(rpow(&h, 0), int(1));
    }
}
