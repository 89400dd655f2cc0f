use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::Scalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial with coefficients in ascending degree order.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c·T^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(
            cs.iter()
                .map(|&c| S::from_i64(c).expect("scalar from i64"))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `T^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(c·T)`.
    pub fn compose_scale(&self, c: &S) -> Self {
        let mut power = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * power.clone());
            power = power * c.clone();
        }
        Self::new(out)
    }

    /// `self(inner(T))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_usize(i).expect("scalar from usize"))
                .collect(),
        )
    }

    /// Long division. Every leading-coefficient quotient must exist in the
    /// scalar ring, which always holds over a field and holds over the
    /// integers for monic (or suitably divisible) divisors.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].div_exact(lead).ok_or_else(|| {
                Error::Divisibility(format!("leading coefficient {lead} does not divide {}", rem[i]))
            })?;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = rem[k].clone() - c.clone() * dc.clone();
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Divisibility(format!(
                "nonzero remainder of degree {}",
                r.degree().unwrap_or(0)
            )));
        }
        Ok(q)
    }

    /// Coefficients as decimal strings, ascending degree.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&S) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<BigRational> {
    /// Monic greatest common divisor (Euclid over `Q`).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("division over Q");
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => a.scale(&(BigRational::one() / lead)),
            None => a,
        }
    }

    /// Squarefree over `Q` (characteristic zero, so `gcd(f, f') = 1`).
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Integer polynomial when every coefficient has denominator one.
    pub fn to_int_poly(&self) -> Option<Poly<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
}

impl Poly<BigInt> {
    pub fn to_rat_poly(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.to_rat_poly().eval(x)
    }

    pub fn from_decimal_strings<T: AsRef<str>>(cs: &[T]) -> Result<Self> {
        cs.iter()
            .map(|s| {
                s.as_ref()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parameter(format!("bad integer {:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Self) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Self) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Self) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Poly<S> {
            type Output = Poly<S>;
            fn $m(self, rhs: Self) -> Poly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> fmt::Display for Poly<S> {
    /// Descending-degree human form, e.g. `27T^6 + 54T^5 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = !c.is_positive_scalar();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("T")?,
                _ => write!(f, "T^{i}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntPoly, RatPoly};

    fn ip(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&ip(&[1, 1]) * &ip(&[-1, 1]), ip(&[-1, 0, 1]));
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(ip(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(ip(&[]).degree(), None);
    }

    #[test]
    fn evaluate_p3_l_polynomial_at_one() {
        // (3T^2+1)(3T^2+3T+1)^2
        let l = &ip(&[1, 0, 3]) * &ip(&[1, 3, 3]).pow(2);
        assert_eq!(l, ip(&[1, 6, 18, 36, 54, 54, 27]));
        assert_eq!(l.eval(&BigInt::from(1)), BigInt::from(196));
    }

    #[test]
    fn compose_scale_cyclotomic() {
        assert_eq!(ip(&[1, 1, 1]).compose_scale(&BigInt::from(-3)), ip(&[1, -3, 9]));
    }

    #[test]
    fn compose_with_polynomial() {
        // Phi_3(-3T^2) = 9T^4 - 3T^2 + 1
        let phi3 = ip(&[1, 1, 1]);
        assert_eq!(phi3.compose(&ip(&[0, 0, -3])), ip(&[1, 0, -3, 0, 9]));
    }

    #[test]
    fn exact_division_and_failure() {
        let a = ip(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&ip(&[1, 1])).unwrap(), ip(&[-1, 1]));
        assert!(matches!(
            ip(&[1, 0, 1]).div_exact(&ip(&[1, 1])),
            Err(Error::Divisibility(_))
        ));
        assert!(matches!(a.div_exact(&IntPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn integer_division_by_non_monic_reports_divisibility() {
        // 2T+1 does not divide T^2 over Z
        assert!(matches!(
            ip(&[0, 0, 1]).div_rem(&ip(&[1, 2])),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn rational_eval_and_gcd() {
        let f = ip(&[1, 0, 3]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.eval_rational(&half), BigRational::new(7.into(), 4.into()));
        let a: RatPoly = (&ip(&[1, 1]) * &ip(&[2, 1])).to_rat_poly();
        let b: RatPoly = (&ip(&[1, 1]) * &ip(&[3, 1])).to_rat_poly();
        assert_eq!(a.gcd(&b), ip(&[1, 1]).to_rat_poly());
        assert!(a.is_squarefree());
        assert!(!(&a * &a).is_squarefree());
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(ip(&[1, -6, 0, 27]).to_string(), "27T^3 - 6T + 1");
        assert_eq!(ip(&[-1]).to_string(), "-1");
    }

    #[test]
    fn decimal_string_roundtrip() {
        let l = ip(&[1, 6, 18, 36, 54, 54, 27]);
        let s = l.to_decimal_strings();
        assert_eq!(s, ["1", "6", "18", "36", "54", "54", "27"]);
        assert_eq!(IntPoly::from_decimal_strings(&s).unwrap(), l);
    }

    #[test]
    fn machine_integer_scalars() {
        let a: Poly<i64> = Poly::from_i64s(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&Poly::from_i64s(&[1, 1])).unwrap(), Poly::from_i64s(&[-1, 1]));
    }
}
