use num::{BigInt, One};
use statrs::function::gamma::ln_gamma;

use crate::error::{out_of_range, Result};

/// `G(n) = Π_{j=0}^{n-2} j!` for integer `n ≥ 1`.
pub fn barnes_g_int(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(out_of_range("n", n, "n >= 1"));
    }
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for j in 1..(n - 1) {
        fact *= j;
        acc *= &fact;
    }
    Ok(acc)
}

/// Ratio of factorial-built quantities used by closed forms: `G(n)` as `f64`.
pub fn barnes_g_f64(n: i64) -> Result<f64> {
    barnes_g_int(n).map(|g| num::ToPrimitive::to_f64(&g).unwrap_or(f64::INFINITY))
}

const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_929_213_919_6;
const SHIFT_TARGET: f64 = 12.0;
/// `B_{2k+2} / (4k(k+1))` for k = 1..=9.
const ASYMPTOTIC: [f64; 9] = [
    (-1.0 / 30.0) / 8.0,
    (1.0 / 42.0) / 24.0,
    (-1.0 / 30.0) / 48.0,
    (5.0 / 66.0) / 80.0,
    (-691.0 / 2730.0) / 120.0,
    (7.0 / 6.0) / 168.0,
    (-3617.0 / 510.0) / 224.0,
    (43867.0 / 798.0) / 288.0,
    (-174611.0 / 330.0) / 360.0,
];

/// Natural log of the Barnes G-function for real `x > 0`.
///
/// The argument is raised above 12 with `G(z+1) = Γ(z) G(z)` and the
/// large-argument expansion of `log G(z+1)` is summed there.
pub fn log_barnes_g(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(out_of_range("x", x, "x > 0"));
    }
    if x.fract() == 0.0 && x <= 170.0 {
        let n = x as i64;
        // log of Π j! directly, exact to rounding
        return Ok((1..(n - 1)).map(|j| ln_gamma(j as f64 + 1.0)).sum());
    }
    Ok(log_barnes_g_series(x))
}

fn log_barnes_g_series(x: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < SHIFT_TARGET {
        shift += ln_gamma(z);
        z += 1.0;
    }
    // log G(z) = log G(w+1) with w = z - 1
    let w = z - 1.0;
    let lw = w.ln();
    let w2 = w * w;
    let mut series = 0.0;
    let mut pow = w2;
    for c in ASYMPTOTIC {
        series += c / pow;
        pow *= w2;
    }
    let log_g = 0.5 * w2 * lw - 0.75 * w2 + 0.5 * w * (2.0 * std::f64::consts::PI).ln() - lw / 12.0
        + ZETA_PRIME_MINUS_ONE
        + series;
    log_g - shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::combinatorics::factorial;
    use approx::assert_relative_eq;

    #[test]
    fn integer_values() {
        assert_eq!(barnes_g_int(1).unwrap(), BigInt::from(1));
        assert_eq!(barnes_g_int(2).unwrap(), BigInt::from(1));
        assert_eq!(barnes_g_int(4).unwrap(), BigInt::from(2));
        assert_eq!(barnes_g_int(6).unwrap(), BigInt::from(288));
        assert!(barnes_g_int(0).is_err());
    }

    #[test]
    fn functional_equation() {
        for n in 0..=30u64 {
            let lhs = barnes_g_int(n as i64 + 2).unwrap();
            let rhs = factorial(n) * barnes_g_int(n as i64 + 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn log_matches_integers() {
        assert_relative_eq!(log_barnes_g(4.0).unwrap(), 2f64.ln(), max_relative = 1e-12);
        assert_eq!(log_barnes_g(1.0).unwrap(), 0.0);
        for n in 3..25 {
            let exact = num::ToPrimitive::to_f64(&barnes_g_int(n).unwrap()).unwrap().ln();
            assert_relative_eq!(log_barnes_g(n as f64).unwrap(), exact, max_relative = 1e-12);
            assert_relative_eq!(log_barnes_g_series(n as f64), exact, max_relative = 1e-12, epsilon = 1e-13);
        }
    }

    #[test]
    fn half_integer_oracle() {
        // independent multiprecision evaluation
        let cases = [
            (1.5, 0.066_931_888_435_004_704_274_028_69),
            (0.5, -0.505_433_054_489_695_382_797_685),
            (2.5, -0.053_850_349_200_240_518_071_489_76),
            (7.3, 12.228_615_592_899_987_423_906_34),
            (0.1, -2.218_184_611_604_620_920_557_128),
            (13.7, 95.293_265_029_411_073_321_197_26),
        ];
        for (x, want) in cases {
            assert_relative_eq!(log_barnes_g(x).unwrap(), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(log_barnes_g(0.0).is_err());
        assert!(log_barnes_g(-1.5).is_err());
    }
}
