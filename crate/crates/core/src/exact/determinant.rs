use num::{BigInt, Integer, One, Zero};

use super::ExactScalar;
use crate::error::{Error, Result};

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    Ok(n)
}

/// Fraction-free Gaussian elimination on an integer matrix, with row pivoting.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    Ok(if negate { -d } else { d })
}

/// Determinant of a rational matrix: rows are scaled to integers, then
/// reduced by [`det_bareiss`].
pub fn det_rational(m: &[Vec<ExactScalar>]) -> Result<ExactScalar> {
    check_square(m)?;
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    Ok(ExactScalar::new(det_bareiss(&rows)?, scale))
}

/// Permutation expansion; exponential cost, used as an independent check.
pub fn det_leibniz(m: &[Vec<ExactScalar>]) -> Result<ExactScalar> {
    let n = check_square(m)?;
    if n > 10 {
        return Err(Error::InvalidInput("expansion limited to 10x10".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ExactScalar::zero();
    permute(m, &mut perm, 0, true, &mut total);
    Ok(total)
}

fn permute(m: &[Vec<ExactScalar>], perm: &mut Vec<usize>, k: usize, even: bool, total: &mut ExactScalar) {
    let n = perm.len();
    if k == n {
        let prod = (0..n).fold(ExactScalar::one(), |acc, i| acc * &m[i][perm[i]]);
        if even {
            *total += prod;
        } else {
            *total -= prod;
        }
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(m, perm, k + 1, if i == k { even } else { !even }, total);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, parse_rational};

    fn mat(v: &[&[&str]]) -> Vec<Vec<ExactScalar>> {
        v.iter().map(|r| r.iter().map(|s| parse_rational(s).unwrap()).collect()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(det_rational(&[]).unwrap(), int(1));
        let m = mat(&[&["1/2", "1/3"], &["1/4", "1/5"]]);
        assert_eq!(det_rational(&m).unwrap(), parse_rational("1/10").unwrap() - parse_rational("1/12").unwrap());
        // zero leading pivot needs a row swap
        let m = mat(&[&["0", "1", "2"], &["3", "0", "1"], &["1", "1", "0"]]);
        assert_eq!(det_rational(&m).unwrap(), det_leibniz(&m).unwrap());
        assert_eq!(det_rational(&m).unwrap(), int(7));
        let sing = mat(&[&["1", "2"], &["2", "4"]]);
        assert_eq!(det_rational(&sing).unwrap(), int(0));
        assert!(det_rational(&mat(&[&["1", "2"]])).is_err());
    }

    #[test]
    fn hilbert_matrix() {
        for n in 1..=6 {
            let m: Vec<Vec<ExactScalar>> = (0..n)
                .map(|i| (0..n).map(|j| ExactScalar::new(1.into(), BigInt::from(i + j + 1))).collect())
                .collect();
            assert_eq!(det_rational(&m).unwrap(), det_leibniz(&m).unwrap());
        }
    }
}
