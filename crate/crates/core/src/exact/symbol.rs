use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{int, rpow, ExactScalar};
use crate::error::{out_of_range, Error, Result};
use crate::numeric::combinatorics::binomial;
use crate::Family;

/// Weight on the unit circle: `z^s (1+tz)^β₁ (1+t/z)^β₂` for E and
/// `z^s (1-tz)^-β₁ (1-t/z)^-β₂` for H.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub family: Family,
    #[serde(with = "rational_str")]
    pub t: ExactScalar,
    #[serde(with = "rational_str")]
    pub beta1: ExactScalar,
    #[serde(with = "rational_str")]
    pub beta2: ExactScalar,
    pub shift: i64,
}

impl SymbolSpec {
    pub fn new(family: Family, t: ExactScalar, beta1: ExactScalar, beta2: ExactScalar, shift: i64) -> Result<Self> {
        if !t.is_positive() || t > int(1) {
            return Err(out_of_range("t", &t, "(0, 1]"));
        }
        if family == Family::H && t.is_one() {
            return Err(out_of_range("t", &t, "(0, 1) for the H family"));
        }
        if beta1.is_negative() || beta2.is_negative() {
            return Err(Error::InvalidInput("exponents must be nonnegative".into()));
        }
        Ok(Self {
            family,
            t,
            beta1,
            beta2,
            shift,
        })
    }

    /// Unshifted symbol with integer exponents `(N₁, N₂)`.
    pub fn integer(family: Family, t: ExactScalar, n1: u64, n2: u64) -> Result<Self> {
        Self::new(family, t, int(n1), int(n2), 0)
    }

    pub fn with_shift(mut self, shift: i64) -> Self {
        self.shift = shift;
        self
    }

    /// `β₁ = β₂` and no shift.
    pub fn is_symmetric(&self) -> bool {
        self.beta1 == self.beta2 && self.shift == 0
    }

    /// Exponents as integers, as required by every exact path.
    pub fn integer_exponents(&self) -> Result<(u64, u64)> {
        let conv = |b: &ExactScalar| {
            if b.is_integer() {
                b.to_integer().to_u64().ok_or(Error::NonIntegerExponent)
            } else {
                Err(Error::NonIntegerExponent)
            }
        };
        Ok((conv(&self.beta1)?, conv(&self.beta2)?))
    }

    /// Fourier coefficient of `z^j`.
    pub fn coeff(&self, j: i64) -> Result<ExactScalar> {
        let (b1, b2) = self.integer_exponents()?;
        let j = j - self.shift;
        Ok(match self.family {
            Family::E => e_coeff(b1, b2, j, &self.t),
            Family::H => h_coeff(b1, b2, j, &self.t),
        })
    }
}

/// `σ_j` for `j` in `jmin..=jmax`.
pub fn fourier_coeffs(sym: &SymbolSpec, jmin: i64, jmax: i64) -> Result<Vec<ExactScalar>> {
    (jmin..=jmax).map(|j| sym.coeff(j)).collect()
}

fn e_coeff(b1: u64, b2: u64, j: i64, t: &ExactScalar) -> ExactScalar {
    let lo = (-j).max(0);
    (lo..=b2 as i64)
        .map(|k| {
            let c = binomial(b1, k + j) * binomial(b2, k);
            ExactScalar::from_integer(c) * rpow(t, 2 * k + j)
        })
        .fold(ExactScalar::zero(), |a, b| a + b)
}

fn h_coeff(b1: u64, b2: u64, j: i64, t: &ExactScalar) -> ExactScalar {
    if j < 0 {
        return h_coeff(b2, b1, -j, t);
    }
    let ju = j as u64;
    match (b1, b2) {
        (_, 0) if ju == 0 => int(1),
        (0, _) if ju > 0 => int(0),
        (0, _) => int(1),
        (_, 0) => int(binomial(b1 - 1 + ju, ju as i64)) * rpow(t, j),
        _ => {
            // Σ_k a_k u^k with a_k polynomial in k of degree d equals Q(u)/(1-u)^{d+1}.
            let d = b1 + b2 - 2;
            let a = |k: u64| binomial(b1 - 1 + k + ju, (k + ju) as i64) * binomial(b2 - 1 + k, k as i64);
            let u = t * t;
            let mut q = ExactScalar::zero();
            for n in 0..=d {
                let qn: BigInt = (0..=n)
                    .map(|i| {
                        let c = binomial(d + 1, i as i64) * a(n - i);
                        if i.is_odd() {
                            -c
                        } else {
                            c
                        }
                    })
                    .sum();
                q += int(qn) * rpow(&u, n as i64);
            }
            let denom = rpow(&(int(1) - &u), (d + 1) as i64);
            rpow(t, j) * q / denom
        }
    }
}

pub(crate) mod rational_str {
    use super::ExactScalar;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &ExactScalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::exact::format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactScalar, D::Error> {
        let s = String::deserialize(d)?;
        crate::exact::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
