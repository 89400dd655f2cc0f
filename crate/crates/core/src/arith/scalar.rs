use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// Exact ring scalar used by [`Poly`](super::Poly) and [`Matrix`](super::Matrix).
///
/// The bound is deliberately the integer/rational part of num-traits: there is
/// no floating point implementation, since every identity checked by this
/// crate must hold exactly.
pub trait Scalar:
    Num + Clone + Neg<Output = Self> + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync
{
    /// `self / rhs` when the quotient exists in the ring, `None` otherwise.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    /// Strictly positive.
    fn is_positive_scalar(&self) -> bool;
}

impl Scalar for BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn is_positive_scalar(&self) -> bool {
        self.is_positive()
    }
}

macro_rules! machine_int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0 || self.checked_rem(*rhs)? != 0 {
                    return None;
                }
                self.checked_div(*rhs)
            }

            fn is_positive_scalar(&self) -> bool {
                *self > 0
            }
        }
    )*};
}

machine_int_scalar!(i64, i128);

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync,
    Ratio<T>: FromPrimitive,
{
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.numer().is_zero() {
            return None;
        }
        Some(self.clone() / rhs.clone())
    }

    fn is_positive_scalar(&self) -> bool {
        self.numer().is_positive()
    }
}
