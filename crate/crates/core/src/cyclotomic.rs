//! Exact arithmetic in `Q(ζ_p)` and the polynomial `M_p`.
//!
//! Elements are coordinate vectors over the power basis `1, ζ, …, ζ^{p−2}`;
//! `ζ^{p−1}` is rewritten as `−(1 + ζ + … + ζ^{p−2})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, rational_to_string};
use crate::error::{internal, param, Error, Result};
use crate::field::prime::{is_prime, legendre_i64};
use crate::{IntPoly, RatMat, RatPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    p: u64,
    coords: Vec<BigRational>,
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return param(format!("{p} is not an odd prime"));
    }
    Ok(())
}

impl CycloElement {
    pub fn zero(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            p,
            coords: vec![BigRational::zero(); p as usize - 1],
        })
    }

    pub fn rational(p: u64, r: BigRational) -> Result<Self> {
        let mut e = Self::zero(p)?;
        e.coords[0] = r;
        Ok(e)
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::rational(p, BigRational::one())
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: u64, k: i64) -> Result<Self> {
        check_prime(p)?;
        let mut full = vec![BigRational::zero(); p as usize];
        full[k.rem_euclid(p as i64) as usize] = BigRational::one();
        Ok(Self::reduce(p, full))
    }

    /// Element from power-basis coordinates; exactly `p − 1` of them.
    pub fn from_coords(p: u64, coords: Vec<BigRational>) -> Result<Self> {
        check_prime(p)?;
        if coords.len() != p as usize - 1 {
            return Err(Error::Dimension(format!(
                "{} coordinates for Q(ζ_{p}), expected {}",
                coords.len(),
                p - 1
            )));
        }
        Ok(Self { p, coords })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    // `full` is indexed by exponents 0..p
    fn reduce(p: u64, mut full: Vec<BigRational>) -> Self {
        let top = full.pop().expect("p coordinates");
        if !top.is_zero() {
            full.iter_mut().for_each(|c| *c -= &top);
        }
        Self { p, coords: full }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            p: self.p,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                full[(i + j) % p] += a * b;
            }
        }
        Ok(Self::reduce(self.p, full))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p).expect("valid prime");
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `σ_i : ζ ↦ ζ^i`.
    pub fn galois_apply(&self, i: i64) -> Result<Self> {
        let p = self.p as i64;
        if i.rem_euclid(p) == 0 {
            return param(format!("σ_{i} is undefined: {p} divides {i}"));
        }
        let mut full = vec![BigRational::zero(); self.p as usize];
        for (j, c) in self.coords.iter().enumerate() {
            full[(i * j as i64).rem_euclid(p) as usize] += c;
        }
        Ok(Self::reduce(self.p, full))
    }

    /// Evaluates a rational polynomial at this element.
    pub fn eval_poly(&self, f: &RatPoly) -> Self {
        let zero = Self::zero(self.p).expect("valid prime");
        f.coeffs().iter().rev().fold(zero, |acc, c| {
            let mut next = &acc * self;
            next.coords[0] += c;
            next
        })
    }

    /// Matrix of `x ↦ self·x` on the power basis (column `j` is `self·ζ^j`).
    pub fn multiplication_matrix(&self) -> RatMat {
        let n = self.p as usize - 1;
        let cols: Vec<Self> = (0..n)
            .map(|j| self * &Self::zeta_pow(self.p, j as i64).expect("valid prime"))
            .collect();
        RatMat::from_fn(n, n, |i, j| cols[j].coords[i].clone())
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    /// Panics if the operands live in different cyclotomic fields.
    fn add(self, rhs: Self) -> CycloElement {
        self.checked_add(rhs).expect("operands share a field")
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: Self) -> CycloElement {
        self.checked_add(&-rhs).expect("operands share a field")
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: Self) -> CycloElement {
        self.checked_mul(rhs).expect("operands share a field")
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(rational_to_string).collect();
        write!(f, "Q(ζ_{})[{}]", self.p, parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    p: u64,
    coords: Vec<String>,
}

impl Serialize for CycloElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            p: self.p,
            coords: self
                .coords
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycloRepr::deserialize(d)?;
        let coords = repr
            .coords
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloElement::from_coords(repr.p, coords).map_err(D::Error::custom)
    }
}

/// `Φ_p(T) = 1 + T + … + T^{p−1}`.
pub fn cyclotomic_poly(p: u64) -> Result<IntPoly> {
    check_prime(p)?;
    Ok(IntPoly::new(vec![BigInt::one(); p as usize]))
}

/// `G = Σ_{j=1}^{p−1} η(j)·ζ^j`, checked against `G² = η(−1)·p`.
pub fn gauss_sum(p: u64) -> Result<CycloElement> {
    check_prime(p)?;
    let mut full = vec![BigRational::zero(); p as usize];
    for (j, c) in full.iter_mut().enumerate().skip(1) {
        *c = BigRational::from_integer(legendre_i64(j as i64, p).into());
    }
    let g = CycloElement::reduce(p, full);
    let expected = BigRational::from_integer(BigInt::from(legendre_i64(-1, p)) * p);
    if (&g * &g).to_rational() != Some(expected) {
        return internal(format!("Gauss sum for p = {p} does not square to η(−1)·p"));
    }
    Ok(g)
}

/// `α = −ζ·η(−1)·G/p`, the element whose minimal polynomial is `M_p`.
pub fn mp_generator(p: u64) -> Result<CycloElement> {
    let g = gauss_sum(p)?;
    let zeta = CycloElement::zeta_pow(p, 1)?;
    let c = BigRational::new(BigInt::from(-legendre_i64(-1, p)), BigInt::from(p));
    Ok((&zeta * &g).scale(&c))
}

/// `M_p(T)` as the characteristic polynomial of multiplication by `α`.
///
/// Fails with an internal error when the result is not squarefree of degree
/// `p − 1`, or when `p^{(p−1)/2}·M_p` is not an integer polynomial with
/// constant term 1 and positive linear coefficient.
pub fn minimal_poly_mp(p: u64) -> Result<RatPoly> {
    let alpha = mp_generator(p)?;
    let mp = alpha.multiplication_matrix().charpoly()?;
    if mp.degree() != Some(p as usize - 1) {
        return internal(format!("M_{p} has degree {:?}", mp.degree()));
    }
    if !mp.is_squarefree() {
        return internal(format!("characteristic polynomial for M_{p} is not squarefree"));
    }
    let scaled = scale_mp(p, &mp)?;
    if !scaled.coeff(0).is_one() || !scaled.coeff(1).is_positive() {
        return internal(format!("p^((p−1)/2)·M_{p} has constant {} and linear {}", scaled.coeff(0), scaled.coeff(1)));
    }
    Ok(mp)
}

fn scale_mp(p: u64, mp: &RatPoly) -> Result<IntPoly> {
    let s = BigRational::from_integer(BigInt::from(p).pow((p as u32 - 1) / 2));
    mp.scale(&s)
        .to_int_poly()
        .ok_or_else(|| Error::Internal(format!("p^((p−1)/2)·M_{p} is not integral")))
}

/// `p^{(p−1)/2}·M_p(T)`, which has integer coefficients.
pub fn scaled_mp(p: u64) -> Result<IntPoly> {
    scale_mp(p, &minimal_poly_mp(p)?)
}

/// Checks `p^{p−1}·M_p(T)·M_p(−T) = Φ_p(η(−1)·p·T²)` coefficientwise.
pub fn verify_mp_factorization(p: u64) -> bool {
    let Ok(mp) = minimal_poly_mp(p) else {
        return false;
    };
    let Ok(phi) = cyclotomic_poly(p) else {
        return false;
    };
    let lhs = (&mp * &mp.compose_scale(&-BigRational::one()))
        .scale(&BigRational::from_integer(BigInt::from(p).pow(p as u32 - 1)));
    let inner = RatPoly::monomial(BigRational::from_integer(BigInt::from(legendre_i64(-1, p)) * p), 2);
    lhs == phi.to_rat_poly().compose(&inner)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gauss_sum_p3_explicit() {
        let g = gauss_sum(3).unwrap();
        // ζ − ζ² = ζ + 1 + ζ = 1 + 2ζ
        assert_eq!(g.coords(), &[q(1), q(2)]);
        assert_eq!((&g * &g).to_rational(), Some(q(-3)));
    }

    #[test]
    fn gauss_sum_squares() {
        assert_eq!({ let g = gauss_sum(5).unwrap(); (&g * &g).to_rational() }, Some(q(5)));
        assert_eq!({ let g = gauss_sum(7).unwrap(); (&g * &g).to_rational() }, Some(q(-7)));
        assert!(gauss_sum(9).is_err());
        assert!(gauss_sum(2).is_err());
    }

    #[test]
    fn galois_action() {
        for p in [3u64, 5, 7, 11, 13] {
            let g = gauss_sum(p).unwrap();
            for i in 1..p as i64 {
                let eta = q(legendre_i64(i, p).into());
                assert_eq!(g.galois_apply(i).unwrap(), g.scale(&eta));
            }
            let conj = g.galois_apply(-1).unwrap();
            assert_eq!((&g * &conj).to_rational(), Some(q(p as i64)));
            let zeta = CycloElement::zeta_pow(p, 1).unwrap();
            assert_eq!(zeta.galois_apply(p as i64 - 1).unwrap(), CycloElement::zeta_pow(p, -1).unwrap());
            assert!(g.galois_apply(p as i64).is_err());
        }
    }

    #[test]
    fn mp_small_primes() {
        assert_eq!(scaled_mp(3).unwrap(), IntPoly::from_i64s(&[1, 3, 3]));
        assert_eq!(scaled_mp(5).unwrap(), IntPoly::from_i64s(&[1, 5, 15, 25, 25]));
        assert_eq!(scaled_mp(7).unwrap(), IntPoly::from_i64s(&[1, 7, 21, 49, 147, 343, 343]));
    }

    #[test]
    fn mp_annihilates_generator() {
        for p in [3u64, 5, 7, 11] {
            let alpha = mp_generator(p).unwrap();
            assert!(alpha.eval_poly(&minimal_poly_mp(p).unwrap()).is_zero());
        }
    }

    #[test]
    fn scaled_charpoly_factorization() {
        for p in [3u64, 5, 7, 11, 13] {
            assert!(verify_mp_factorization(p), "p = {p}");
        }
        assert!(!verify_mp_factorization(4));
    }

    #[test]
    fn phi3_squared_argument() {
        // Φ_3(−3T²) = 9T⁴ − 3T² + 1 = (3T²+3T+1)(3T²−3T+1)
        let phi = cyclotomic_poly(3).unwrap();
        let lhs = phi.compose(&IntPoly::monomial((-3).into(), 2));
        assert_eq!(lhs, IntPoly::from_i64s(&[1, 0, -3, 0, 9]));
        assert_eq!(lhs, &IntPoly::from_i64s(&[1, 3, 3]) * &IntPoly::from_i64s(&[1, -3, 3]));
    }

    #[test]
    fn json_shape() {
        let g = gauss_sum(3).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v, serde_json::json!({"p": 3, "coords": ["1/1", "2/1"]}));
        let back: CycloElement = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }

    proptest! {
        #[test]
        fn field_axioms(
            a in proptest::collection::vec(-9i64..9, 6),
            b in proptest::collection::vec(-9i64..9, 6),
            c in proptest::collection::vec(-9i64..9, 6),
        ) {
            let mk = |v: &[i64]| CycloElement::from_coords(7, v.iter().map(|&x| q(x)).collect()).unwrap();
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            // σ_i is a ring homomorphism
            for i in 1..7 {
                prop_assert_eq!((&a * &b).galois_apply(i).unwrap(), &a.galois_apply(i).unwrap() * &b.galois_apply(i).unwrap());
            }
        }
    }
}
