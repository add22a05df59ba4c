use num::{BigInt, One, Zero};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    num::integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `C(n, k)` for a possibly negative upper index, with `C(n, 0) = 1`.
pub fn binomial_general(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
    }
    acc / factorial(k as u64)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
    }

    #[test]
    fn general_binomial_matches_for_nonnegative_upper() {
        for n in 0..12 {
            for k in 0..14 {
                assert_eq!(binomial_general(n, k), binomial(n as u64, k));
            }
        }
        assert_eq!(binomial_general(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_general(-1, 0), BigInt::from(1));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
