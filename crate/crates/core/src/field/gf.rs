use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{inv_mod, FpMatrix};
use super::prime::{factor_u64, is_prime};
use crate::error::{param, Error, Result};

/// Largest characteristic accepted; keeps every schoolbook accumulation in `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;
/// Largest extension degree accepted.
pub const MAX_DEGREE: usize = 4096;

/// `GF(p^d)` realized as `F_p[X]/(f)`.
///
/// `f` is the lexicographically least monic irreducible of degree `d`,
/// ordering coefficient tuples `(a_{d−1}, …, a_0)` as base-`p` numbers, so
/// the same `(p, d)` always yields the same field.
pub struct FiniteField {
    p: u64,
    d: usize,
    modulus: Vec<u64>,
    // column j holds the coordinates of (X^j)^p
    frobenius: Vec<Vec<u64>>,
}

/// Serialized field descriptor `{p, d, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub d: usize,
    pub modulus: Vec<u64>,
}

impl FiniteField {
    /// Builds `GF(p^d)` with the deterministic modulus.
    pub fn new(p: u64, d: usize) -> Result<Arc<Self>> {
        if p == 2 || !is_prime(p) {
            return param(format!("characteristic must be an odd prime, got {p}"));
        }
        if p >= MAX_CHARACTERISTIC {
            return param(format!("characteristic {p} exceeds {MAX_CHARACTERISTIC}"));
        }
        if d == 0 || d > MAX_DEGREE {
            return param(format!("extension degree must be in 1..={MAX_DEGREE}, got {d}"));
        }
        let modulus = least_irreducible(p, d);
        Ok(Arc::new(Self::with_modulus_unchecked(p, modulus)))
    }

    /// Builds the field from a caller-supplied monic modulus, verifying irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>> {
        if p == 2 || !is_prime(p) || p >= MAX_CHARACTERISTIC {
            return param(format!("characteristic must be an odd prime below {MAX_CHARACTERISTIC}"));
        }
        let modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return param("modulus must be monic of degree at least 1");
        }
        if !is_irreducible(&modulus, p) {
            return param("modulus is reducible");
        }
        Ok(Arc::new(Self::with_modulus_unchecked(p, modulus)))
    }

    fn with_modulus_unchecked(p: u64, modulus: Vec<u64>) -> Self {
        let d = modulus.len() - 1;
        let mut field = Self {
            p,
            d,
            modulus,
            frobenius: Vec::new(),
        };
        let x = {
            let mut c = vec![0; d];
            if d > 1 {
                c[1] = 1;
            } else {
                c[0] = (p - field.modulus[0]) % p;
            }
            c
        };
        let xp = field.pow_coeffs(&x, p);
        let mut cols = Vec::with_capacity(d);
        let mut cur = {
            let mut c = vec![0; d];
            c[0] = 1;
            c
        };
        for _ in 0..d {
            cols.push(cur.clone());
            cur = field.mul_coeffs(&cur, &xp);
        }
        field.frobenius = cols;
        field
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^d`, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.d as u32)
    }

    pub fn order_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.d as u32)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            d: self.d,
            modulus: self.modulus.clone(),
        }
    }

    pub fn same_field(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement::raw(self.clone(), vec![0; self.d])
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_u64(1)
    }

    /// Prime-field element `k mod p`.
    pub fn from_u64(self: &Arc<Self>, k: u64) -> FieldElement {
        let mut c = vec![0; self.d];
        c[0] = k % self.p;
        FieldElement::raw(self.clone(), c)
    }

    pub fn from_i64(self: &Arc<Self>, k: i64) -> FieldElement {
        self.from_u64(k.rem_euclid(self.p as i64) as u64)
    }

    /// Element from its coordinate vector (ascending powers of the generator).
    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.d {
            return Err(Error::Dimension(format!(
                "{} coordinates for a degree-{} field",
                coeffs.len(),
                self.d
            )));
        }
        Ok(FieldElement::raw(
            self.clone(),
            coeffs.iter().map(|c| c % self.p).collect(),
        ))
    }

    /// The class of `X`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut c = vec![0; self.d];
        if self.d > 1 {
            c[1] = 1;
        } else {
            c[0] = (self.p - self.modulus[0]) % self.p;
        }
        FieldElement::raw(self.clone(), c)
    }

    /// Element number `index` in the canonical enumeration (base-`p` digits,
    /// least significant digit is the constant coordinate).
    pub fn from_index(self: &Arc<Self>, mut index: u128) -> FieldElement {
        let p = self.p as u128;
        let c = (0..self.d)
            .map(|_| {
                let digit = (index % p) as u64;
                index /= p;
                digit
            })
            .collect();
        FieldElement::raw(self.clone(), c)
    }

    /// Iterates every element in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.order().expect("field too large to enumerate");
        (0..n).map(move |i| self.from_index(i))
    }

    pub fn random(self: &Arc<Self>, rng: &mut impl Rng) -> FieldElement {
        let c = (0..self.d).map(|_| rng.gen_range(0..self.p)).collect();
        FieldElement::raw(self.clone(), c)
    }

    pub fn random_nonzero(self: &Arc<Self>, rng: &mut impl Rng) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// First element (in index order) generating the multiplicative group.
    pub fn primitive_element(self: &Arc<Self>) -> FieldElement {
        let order = self.order().expect("field order") - 1;
        let order = u64::try_from(order).expect("multiplicative order fits in u64");
        let factors = factor_u64(order);
        self.elements()
            .skip(1)
            .find(|e| {
                factors
                    .iter()
                    .all(|&(l, _)| !e.pow_u64(order / l).is_one())
            })
            .expect("a finite field has a primitive element")
    }

    /// Basis (as field elements) of the subfield of degree `r`: the kernel of
    /// `e ↦ e^{p^r} − e`.
    pub fn subfield_basis(self: &Arc<Self>, r: usize) -> Result<Vec<FieldElement>> {
        if r == 0 || self.d % r != 0 {
            return param(format!("{r} does not divide the field degree {}", self.d));
        }
        let cols: Vec<Vec<u64>> = (0..self.d)
            .map(|j| {
                let mut c = vec![0; self.d];
                c[j] = 1;
                let e = FieldElement::raw(self.clone(), c);
                (&e.frobenius(r) - &e).coeffs
            })
            .collect();
        let m = FpMatrix::from_columns(self.p, self.d, &cols);
        Ok(m
            .kernel()
            .into_iter()
            .map(|v| FieldElement::raw(self.clone(), v))
            .collect())
    }

    /// Matrix of the `F_p`-linear map `e ↦ f(e)` in the coordinate basis.
    pub fn linear_map_matrix(self: &Arc<Self>, f: impl Fn(&FieldElement) -> FieldElement) -> FpMatrix {
        let cols: Vec<Vec<u64>> = (0..self.d)
            .map(|j| {
                let mut c = vec![0; self.d];
                c[j] = 1;
                f(&FieldElement::raw(self.clone(), c)).coeffs
            })
            .collect();
        FpMatrix::from_columns(self.p, self.d, &cols)
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let d = self.d;
        let mut t = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                t[i + j] += x * y;
            }
            // keep accumulators bounded for large degrees
            if i % 1024 == 1023 {
                t.iter_mut().for_each(|v| *v %= p);
            }
        }
        self.reduce(t)
    }

    fn reduce(&self, mut t: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        let d = self.d;
        for i in (d..t.len()).rev() {
            let c = t[i] % p;
            t[i] = 0;
            if c == 0 {
                continue;
            }
            // X^d ≡ −Σ f_j X^j
            for j in 0..d {
                let f = self.modulus[j];
                if f != 0 {
                    t[i - d + j] = (t[i - d + j] + c * (p - f)) % p;
                }
            }
        }
        t.truncate(d);
        t.iter_mut().for_each(|v| *v %= p);
        t
    }

    fn pow_coeffs(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = vec![0; self.d];
        acc[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coeffs(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_coeffs(&base, &base);
            }
        }
        acc
    }

    fn frobenius_coeffs(&self, a: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.d];
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &f) in out.iter_mut().zip(&self.frobenius[j]) {
                *o = (*o + c * f) % p;
            }
        }
        out
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.d, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FiniteField {}

/// Element of a [`FiniteField`]: coordinates with respect to `1, X, …, X^{d−1}`.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

impl FieldElement {
    fn raw(field: Arc<FiniteField>, coeffs: Vec<u64>) -> Self {
        Self { field, coeffs }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Integer in `[0, p)` when the element lies in the prime field.
    pub fn to_prime_field(&self) -> Option<u64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    pub fn index(&self) -> u128 {
        let p = self.field.p as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.field.p;
        Ok(Self::raw(
            self.field.clone(),
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.field.p;
        Ok(Self::raw(
            self.field.clone(),
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + p - b) % p)
                .collect(),
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::raw(
            self.field.clone(),
            self.field.mul_coeffs(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse via `a^{p^d − 2}`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(&(self.field.order_big() - 2u32)))
    }

    /// Square-and-multiply with an arbitrary-precision exponent.
    pub fn pow(&self, e: &BigUint) -> Self {
        if let Some(small) = e.to_u64() {
            return self.pow_u64(small);
        }
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        Self::raw(self.field.clone(), self.field.pow_coeffs(&self.coeffs, e))
    }

    /// `self^{p^k}`, applied as a linear map.
    pub fn frobenius(&self, k: usize) -> Self {
        let mut c = self.coeffs.clone();
        for _ in 0..k % self.field.d.max(1) {
            c = self.field.frobenius_coeffs(&c);
        }
        Self::raw(self.field.clone(), c)
    }

    /// Relative trace to the degree-`r` subfield: `Σ_{i<d/r} self^{p^{r·i}}`.
    pub fn trace(&self, r: usize) -> Result<Self> {
        let d = self.field.d;
        if r == 0 || d % r != 0 {
            return param(format!("{r} does not divide the field degree {d}"));
        }
        let mut acc = self.field.zero();
        let mut cur = self.clone();
        for _ in 0..d / r {
            acc = &acc + &cur;
            cur = cur.frobenius(r);
        }
        Ok(acc)
    }

    /// Absolute trace as an integer in `[0, p)`.
    pub fn absolute_trace(&self) -> u64 {
        self.trace(1)
            .expect("1 divides every degree")
            .to_prime_field()
            .expect("absolute trace lies in the prime field")
    }

    /// Absolute norm `self^{(p^d − 1)/(p − 1)}` (zero maps to zero).
    pub fn norm_absolute(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let e = (f.order_big() - 1u32) / BigUint::from(f.p - 1);
        self.pow(&e)
    }

    /// Membership in the degree-`r` subfield (`self^{p^r} = self`).
    pub fn in_subfield(&self, r: usize) -> bool {
        self.frobenius(r) == *self
    }

    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let e = (self.field.order_big() - 1u32) / 2u32;
        self.pow(&e).is_one()
    }

    /// Evaluates a polynomial over `F_p` (ascending coefficients) at `self`.
    pub fn eval_fp_poly(&self, poly: &[u64]) -> Self {
        poly.iter().rev().fold(self.field.zero(), |acc, &c| {
            &(&acc * self) + &self.field.from_u64(c)
        })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

macro_rules! field_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields; use the
            /// `checked_*` method to get an error instead.
            fn $m(self, rhs: Self) -> FieldElement {
                self.$checked(rhs).expect("field operands must share a field")
            }
        }

        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: Self) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}

field_op!(Add, add, checked_add);
field_op!(Sub, sub, checked_sub);
field_op!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p;
        FieldElement::raw(
            self.field.clone(),
            self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        )
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Number of `y` in the field with `y^{p^r} − y = c`: `p^r` when the
/// relative trace of `c` to the degree-`r` subfield vanishes, else 0.
pub fn artin_schreier_fiber_count(c: &FieldElement, r: usize) -> Result<u64> {
    let tr = c.trace(r)?;
    Ok(if tr.is_zero() {
        c.field().characteristic().pow(r as u32)
    } else {
        0
    })
}

// ---- polynomials over F_p used for modulus selection ----

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let m = fp_trim(m.to_vec());
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let lead = r.len() - 1;
        let c = r[lead] * inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let k = lead - dm + j;
            r[k] = (r[k] + c * (p - mj)) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut t = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            t[i + j] = (t[i + j] + x * y) % p;
        }
    }
    fp_rem(&t, m, p)
}

fn fp_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = fp_rem(&[1], m, p);
    let mut base = fp_rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &base, m, p);
        }
        e >>= 1;
        if e > 0 {
            base = fp_mulmod(&base, &base, m, p);
        }
    }
    acc
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

/// Irreducibility of a monic `f` of degree `d`: `gcd(f, X^{p^i} − X) = 1`
/// for `i ≤ d/2`, and `f | X^{p^d} − X`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = fp_trim(f.to_vec());
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = fp_rem(&x, &f, p);
    for i in 1..=d {
        xp = fp_powmod(&xp, p, &f, p);
        if i <= d / 2 {
            let g = fp_gcd(&f, &fp_sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
    }
    fp_sub(&xp, &fp_rem(&x, &f, p), p).is_empty()
}

/// Lexicographically least monic irreducible of degree `d` over `F_p`.
pub fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    let mut digits = vec![0u64; d];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment (a_{d−1}, …, a_0) as a base-p number, a_0 least significant
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < d, "an irreducible polynomial of every degree exists");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FiniteField::new(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert!(FiniteField::new(2, 3).is_err());
        assert!(FiniteField::new(9, 1).is_err());
    }

    #[test]
    fn f343_modulus_gcd_checks() {
        let f = FiniteField::new(7, 3).unwrap();
        let m = f.modulus();
        // X^{343} ≡ X mod f, and gcd(f, X^7 − X) = 1
        let x343 = fp_powmod(&[0, 1], 343, m, 7);
        assert_eq!(fp_sub(&x343, &[0, 1], 7), Vec::<u64>::new());
        let x7 = fp_powmod(&[0, 1], 7, m, 7);
        assert_eq!(fp_gcd(m, &fp_sub(&x7, &[0, 1], 7), 7).len(), 1);
    }

    #[test]
    fn small_arithmetic() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert!((&f3.from_u64(2) * &f3.from_u64(2)).is_one());
        let f9 = FiniteField::new(3, 2).unwrap();
        let a = f9.generator();
        assert!((&a + &(-&a)).is_zero());
        assert_eq!(f9.zero().inv(), Err(Error::DivisionByZero));
        let f27 = FiniteField::new(3, 3).unwrap();
        assert_eq!(f9.one().checked_add(&f27.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn trace_and_norm_examples() {
        for (p, d) in [(3, 2), (5, 3), (7, 4), (3, 5)] {
            let f = FiniteField::new(p, d).unwrap();
            assert_eq!(f.one().absolute_trace(), d as u64 % p);
            assert!(f.zero().trace(1).unwrap().is_zero());
            assert!(f.one().norm_absolute().is_one());
            assert!(f.zero().norm_absolute().is_zero());
        }
        let f = FiniteField::new(3, 4).unwrap();
        assert!(matches!(f.one().trace(3), Err(Error::Parameter(_))));
        let f9 = FiniteField::new(3, 2).unwrap();
        let g = f9.primitive_element();
        assert_eq!(g.norm_absolute(), g.pow_u64(4));
        assert_eq!(g.norm_absolute().to_prime_field(), Some(2));
    }

    #[test]
    fn trace_lands_in_subfield() {
        let f = FiniteField::new(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let t = f.random(&mut rng).trace(1).unwrap();
            assert_eq!(t.pow_u64(3), t);
        }
    }

    #[test]
    fn fermat() {
        for (p, d) in [(3, 2), (5, 2), (3, 3)] {
            let f = FiniteField::new(p, d).unwrap();
            let q = p.pow(d as u32);
            assert!(f.elements().all(|a| a.pow_u64(q) == a && a.frobenius(d) == a));
        }
    }

    #[test]
    fn fiber_counts() {
        let f = FiniteField::new(3, 4).unwrap();
        assert_eq!(artin_schreier_fiber_count(&f.zero(), 2).unwrap(), 9);
        let total: u64 = f.elements().map(|c| artin_schreier_fiber_count(&c, 2).unwrap()).sum();
        assert_eq!(total, 81);
        let miss = f.elements().find(|c| !c.trace(2).unwrap().is_zero()).unwrap();
        assert_eq!(artin_schreier_fiber_count(&miss, 2).unwrap(), 0);
        assert!(artin_schreier_fiber_count(&f.one(), 3).is_err());
    }

    #[test]
    fn index_round_trip() {
        let f = FiniteField::new(5, 2).unwrap();
        for i in 0..25 {
            assert_eq!(f.from_index(i).index(), i);
        }
        assert_eq!(f.elements().count(), 25);
    }

    #[test]
    fn least_irreducible_is_least() {
        for (p, d) in [(3, 2), (3, 3), (5, 2), (7, 2), (2, 4)] {
            let f = least_irreducible(p, d);
            assert!(is_irreducible(&f, p));
            // no smaller monic candidate is irreducible
            let below = f[..d].iter().rev().fold(0u64, |acc, &c| acc * p + c);
            for k in 0..below {
                let mut g: Vec<u64> = (0..d).map(|i| k / p.pow(i as u32) % p).collect();
                g.push(1);
                assert!(!is_irreducible(&g, p), "{g:?} precedes {f:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn frobenius_is_a_ring_map(seed in any::<u64>(), d in 1usize..6) {
            let f = FiniteField::new(5, d).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            prop_assert_eq!((&a + &b).frobenius(1), &a.frobenius(1) + &b.frobenius(1));
            prop_assert_eq!((&a * &b).frobenius(1), &a.frobenius(1) * &b.frobenius(1));
            prop_assert_eq!(a.frobenius(1), a.pow_u64(5));
        }

        #[test]
        fn trace_is_subfield_linear(seed in any::<u64>()) {
            let f = FiniteField::new(3, 6).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            let lambda = f.random(&mut rng).trace(2).unwrap();
            prop_assert!(lambda.in_subfield(2));
            prop_assert_eq!((&a + &b).trace(2).unwrap(), &a.trace(2).unwrap() + &b.trace(2).unwrap());
            prop_assert_eq!((&lambda * &a).trace(2).unwrap(), &lambda * &a.trace(2).unwrap());
        }

        #[test]
        fn field_axioms(seed in any::<u64>()) {
            let f = FiniteField::new(7, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (f.random(&mut rng), f.random_nonzero(&mut rng), f.random(&mut rng));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&b * &b.inv().unwrap()).is_one());
            prop_assert_eq!(a.checked_div(&b).unwrap(), &a * &b.inv().unwrap());
        }
    }
}
