//! Bracketing root finders.

use crate::error::{Error, Result};

/// Bisection on a sign change of `f` in `[a, b]`, to relative width `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoConvergence(format!("no sign change on [{a}, {b}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a).abs() <= tol * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// All sign changes of `f` on the grid, refined by bisection.
pub fn scan_roots(f: impl Fn(f64) -> f64, grid: &[f64], tol: f64) -> Vec<f64> {
    let vals: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fa.is_finite() && fb.is_finite() && fa.signum() != fb.signum() {
            if let Ok(r) = bisect(&f, grid[i], grid[i + 1], tol) {
                out.push(r);
            }
        }
    }
    out
}

/// Geometric grid with `n` points on `[lo, hi]`, `0 < lo < hi`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_roots() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        let roots = scan_roots(|x| (x - 0.5) * (x - 3.0), &log_grid(0.1, 10.0, 100), 1e-14);
        assert_eq!(roots.len(), 2);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }
}
