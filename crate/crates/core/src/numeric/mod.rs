//! Special functions and quadrature primitives.

pub mod barnes;
pub mod chebyshev;
pub mod combinatorics;
pub mod pv;
pub mod quadrature;
pub mod roots;

pub use barnes::{barnes_g_int, log_barnes_g};
pub use chebyshev::{chebyshev_coeffs, chebyshev_derivative, chebyshev_eval, ChebKind};
pub use combinatorics::{binomial, factorial};
pub use pv::{pv_integral, pv_integral_adaptive, ChebWeight};
pub use quadrature::{QuadratureRule, RuleKind};

/// Complex double used throughout the asymptotic modules.
pub type C64 = num::complex::Complex64;
