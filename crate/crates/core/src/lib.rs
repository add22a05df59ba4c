//! Exact and asymptotic evaluation of random-matrix models built from the
//! generating functions of elementary (E) and complete homogeneous (H)
//! symmetric polynomials.
//!
//! * [`numeric`]: combinatorics, Barnes G, Chebyshev families, quadrature and
//!   principal-value integrals.
//! * [`exact`]: rational-arithmetic partition functions (Toeplitz, Schur,
//!   Meixner, closed forms, Romanovski products).
//! * [`circle`]: large-K saddle points on the unit circle.
//! * [`realline`]: stereographic projection to Cauchy-Romanovski ensembles.
//! * [`group`]: orthogonal, symplectic and unitary averages.

pub mod circle;
pub mod error;
pub mod exact;
pub mod group;
pub mod numeric;
pub mod realline;

pub use error::{Error, Result};
pub use exact::ExactScalar;

/// Which generating function the weight is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    /// Elementary symmetric polynomials: `(1+tz)^β₁ (1+t/z)^β₂`.
    E,
    /// Complete homogeneous symmetric polynomials: `(1-tz)^-β₁ (1-t/z)^-β₂`.
    H,
}

impl Family {
    /// `+1` for E, `-1` for H.
    pub fn sign(self) -> f64 {
        match self {
            Family::E => 1.0,
            Family::H => -1.0,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::E => "E",
            Family::H => "H",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" | "e" => Ok(Family::E),
            "H" | "h" => Ok(Family::H),
            _ => Err(Error::InvalidInput(format!("unknown family '{s}'"))),
        }
    }
}
