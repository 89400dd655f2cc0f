//! Exact integer/rational polynomials and matrices.

mod matrix;
mod newton;
mod poly;
mod scalar;

pub use matrix::Matrix;
pub use newton::{
    newton_count_sequence, newton_counts, power_sums, reconstruct_l_from_counts,
    satisfies_functional_equation,
};
pub use poly::Poly;
pub use scalar::Scalar;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Rational as `"a/b"` (or `"a"` when integral).
pub fn rational_to_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}
