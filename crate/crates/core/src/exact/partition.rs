use num::{BigInt, BigRational, One};

use super::{int, ExactScalar};
use crate::error::{Error, Result};
use crate::numeric::combinatorics::factorial;

/// Integer partition stored as weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not a partition")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Conjugate partition `λ'`.
    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (0..first)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
            .collect();
        Self { parts }
    }

    /// Cells `(i, j, hook length)`, zero-based.
    pub fn cells_with_hooks(&self) -> Vec<(u32, u32, u32)> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j as usize] - i as u32 - 1;
                out.push((i as u32, j, arm + leg + 1));
            }
        }
        out
    }

    /// All partitions with at most `rows` parts, each at most `cols`.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(rows);
        fill_box(rows, cols, &mut cur, &mut out);
        out
    }

    /// Number of partitions in a `rows × cols` box, `C(rows + cols, rows)`.
    pub fn box_count(rows: usize, cols: u32) -> u128 {
        let n = rows as u128 + cols as u128;
        let k = (rows as u128).min(cols as u128);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc.saturating_mul(n - i) / (i + 1);
        }
        acc
    }
}

fn fill_box(rows: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition { parts: cur.clone() });
    if cur.len() == rows {
        return;
    }
    for p in 1..=cap {
        cur.push(p);
        fill_box(rows, p, cur, out);
        cur.pop();
    }
}

/// Dimension of the symmetric-group irrep, `|λ|! / Π hooks`.
pub fn hook_dim(lambda: &Partition) -> BigInt {
    let hooks = lambda
        .cells_with_hooks()
        .iter()
        .fold(BigInt::one(), |acc, &(_, _, h)| acc * h);
    factorial(lambda.size()) / hooks
}

/// `s_λ(t, …, t)` with `n` equal arguments: `t^{|λ|} Π (n + j - i)/hook`.
pub fn schur_principal(lambda: &Partition, t: &ExactScalar, n: u32) -> ExactScalar {
    if lambda.len() > n as usize {
        return int(0);
    }
    let content = lambda
        .cells_with_hooks()
        .iter()
        .fold(BigRational::one(), |acc, &(i, j, h)| {
            acc * BigRational::new(BigInt::from(n as i64 + j as i64 - i as i64), BigInt::from(h))
        });
    content * num::pow(t.clone(), lambda.size() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(hook_dim(&Partition::empty()), BigInt::from(1));
        assert_eq!(hook_dim(&p(&[1, 1])), BigInt::from(1));
        assert_eq!(hook_dim(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(hook_dim(&p(&[3, 2])), BigInt::from(5));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn principal_specialisations() {
        let t = parse_rational("2/7").unwrap();
        assert_eq!(schur_principal(&p(&[3]), &t, 1), num::pow(t.clone(), 3));
        assert_eq!(schur_principal(&p(&[1]), &t, 2), int(2) * &t);
        assert_eq!(schur_principal(&p(&[1, 1, 1]), &t, 2), int(0));
        // s_(m)(t,t) = (m+1) t^m
        assert_eq!(schur_principal(&p(&[4]), &t, 2), int(5) * num::pow(t, 4));
    }

    #[test]
    fn box_enumeration() {
        for rows in 0..5 {
            for cols in 0..5 {
                let all = Partition::in_box(rows, cols);
                assert_eq!(all.len() as u128, Partition::box_count(rows, cols));
            }
        }
        // Σ dim² over partitions of 4 is 4!
        let total: BigInt = Partition::in_box(4, 4)
            .iter()
            .filter(|l| l.size() == 4)
            .map(|l| hook_dim(l).pow(2))
            .sum();
        assert_eq!(total, BigInt::from(24));
    }
}
