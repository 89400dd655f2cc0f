use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::artin_schreier::PPolynomial;
use crate::error::{param, Error, Result};
use crate::field::gf::MAX_DEGREE;
use crate::field::prime::{is_prime, legendre};
use crate::field::FiniteField;

/// `(p, t)` for the curve `Y^q − Y = X^{q0}(X^q − X)` with `q0 = p^t`,
/// `q = p^{2t−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveParams {
    p: u64,
    t: u32,
}

impl CurveParams {
    pub fn new(p: u64, t: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return param(format!("p must be an odd prime, got {p}"));
        }
        if t == 0 {
            return param("t must be at least 1");
        }
        if (2 * t as usize - 1) > MAX_DEGREE {
            return param(format!("t = {t} is too large"));
        }
        Ok(Self { p, t })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// `m = 2t − 1`, the degree of `F_q` over `F_p`.
    pub fn m(&self) -> u32 {
        2 * self.t - 1
    }

    pub fn q0(&self) -> BigInt {
        BigInt::from(self.p).pow(self.t)
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.m())
    }

    /// `q^n`.
    pub fn qn(&self, n: usize) -> BigInt {
        BigInt::from(self.p).pow(self.m() * n as u32)
    }

    /// `g = q0·(q − 1)/2`.
    pub fn genus(&self) -> BigInt {
        self.q0() * (self.q() - 1) / 2
    }

    /// The genus as a machine integer, for polynomial degrees.
    pub fn genus_usize(&self) -> Result<usize> {
        self.genus()
            .to_usize()
            .filter(|g| *g <= 1 << 24)
            .ok_or_else(|| Error::Resource(format!("genus {} is too large to expand", self.genus())))
    }

    /// `η(k)`, the Legendre symbol modulo `p`.
    pub fn eta(&self, k: &BigInt) -> i8 {
        legendre(k, self.p)
    }

    /// `η(−1)`.
    pub fn eta_minus_one(&self) -> i8 {
        self.eta(&BigInt::from(-1))
    }

    /// `F_q = GF(p^m)`.
    pub fn base_field(&self) -> Result<Arc<FiniteField>> {
        FiniteField::new(self.p, self.m() as usize)
    }

    /// `F_{q^n} = GF(p^{mn})`.
    pub fn extension_field(&self, n: usize) -> Result<Arc<FiniteField>> {
        if n == 0 {
            return param("extension degree n must be at least 1");
        }
        FiniteField::new(self.p, self.m() as usize * n)
    }

    /// `R(X) = X^{q/q0} − X^{q0}` over `F_q`, defining the quotient curve
    /// `Y^p − Y = X·R(X)`.
    pub fn x1_polynomial(&self) -> Result<PPolynomial> {
        let t = self.t as usize;
        PPolynomial::from_terms(&self.base_field()?, &[(t - 1, 1), (t, -1)])
    }
}
