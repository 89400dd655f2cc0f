//! Exact arithmetic for the generalized Suzuki curve `Y^q − Y = X^{q₀}(X^q − X)`
//! over odd characteristic (`q₀ = p^t`, `q = p^{2t−1}`).
//!
//! Closed-form point counts, L-polynomials, Jacobian orders and the
//! automorphism group are implemented alongside independent routes (exhaustive
//! enumeration over finite fields, Newton identities, an Artin–Schreier
//! decomposition) so that each formula can be checked against something it
//! does not depend on.

pub mod arith;
pub mod artin_schreier;
pub mod covers;
pub mod cyclotomic;
mod error;
pub mod field;
pub mod suzuki;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer polynomial (L-polynomials, cyclotomic polynomials).
pub type IntPoly = arith::Poly<BigInt>;
/// Rational polynomial (minimal polynomials, characteristic polynomials).
pub type RatPoly = arith::Poly<BigRational>;
/// Rational matrix.
pub type RatMat = arith::Matrix<BigRational>;
/// Integer matrix.
pub type IntMat = arith::Matrix<BigInt>;

pub use field::{FieldElement, FiniteField};

/// Default cap on the number of field elements an enumeration may visit.
pub const DEFAULT_ORACLE_LIMIT: u128 = 1 << 40;
pub use suzuki::CurveParams;
