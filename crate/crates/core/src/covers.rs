//! Étale covers from the ratio `L_{q^n}(1) / L_q(1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::Error as _;
use serde::{Serialize, Serializer};

use crate::error::{internal, param, Error, Result};
use crate::suzuki::{jacobian_order, point_count, CurveParams};

/// Default bound on the primes tried when factoring the ratio.
pub const DEFAULT_PRIME_CAP: u64 = 1_000_000;

/// A degree-`i` unramified cover: genus `i(g − 1) + 1` and at least
/// `i·N_{q^n}` points over `F_{q^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub base: CurveParams,
    pub n: usize,
    pub degree: u64,
    pub genus: BigInt,
    pub point_bound: BigInt,
}

#[derive(Serialize)]
struct CoverRepr {
    p: u64,
    t: u32,
    n: usize,
    degree: u64,
    genus: u64,
    point_bound: String,
}

impl Serialize for CoverReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoverRepr {
            p: self.base.p(),
            t: self.base.t(),
            n: self.n,
            degree: self.degree,
            genus: self.genus.to_u64().ok_or_else(|| S::Error::custom("cover genus exceeds u64"))?,
            point_bound: self.point_bound.to_string(),
        }
        .serialize(s)
    }
}

/// `N_q = N_{q^n}` and `L_q(1) < L_{q^n}(1)`.
pub fn voloch_precondition(c: &CurveParams, n: usize) -> Result<bool> {
    if n < 2 {
        return param("the extension degree must be at least 2");
    }
    let same_count = point_count(c, 1)?.count == point_count(c, n)?.count;
    Ok(same_count && jacobian_order(c, 1)? < jacobian_order(c, n)?)
}

/// `L_{q^n}(1) / L_q(1)`, which must be an integer.
pub fn jacobian_ratio(c: &CurveParams, n: usize) -> Result<BigInt> {
    let (r, rem) = jacobian_order(c, n)?.div_rem(&jacobian_order(c, 1)?);
    if !rem.is_zero() {
        return internal(format!("L_q(1) does not divide L_{{q^{n}}}(1)"));
    }
    Ok(r)
}

/// Prime powers found by trial division, plus whatever is left over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(u64, u32)>,
    /// Unfactored part, `1` when trial division finished the job.
    pub cofactor: BigInt,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        self.primes
            .iter()
            .fold(self.cofactor.clone(), |acc, &(p, e)| acc * num_traits::pow(BigInt::from(p), e as usize))
    }
}

/// Trial division of a positive integer by every integer in `[2, prime_cap]`.
pub fn trial_factor(r: &BigInt, prime_cap: u64) -> Result<Factorization> {
    if !r.is_positive() {
        return param(format!("cannot factor {r}"));
    }
    let mut rest = r.clone();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= prime_cap && BigInt::from(d) * d <= rest {
        let bd = BigInt::from(d);
        let mut e = 0;
        loop {
            let (quot, rem) = rest.div_rem(&bd);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        if e > 0 {
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // what remains below d² is prime
    if rest > BigInt::one() && rest.to_u64().is_some_and(|v| v <= prime_cap || BigInt::from(d) * d > rest) {
        primes.push((rest.to_u64().expect("checked above"), 1));
        rest = BigInt::one();
    }
    let f = Factorization { primes, cofactor: rest };
    if f.product() != *r {
        return internal(format!("factorization of {r} does not reconstruct it"));
    }
    Ok(f)
}

/// Divisors of `f.product()` in `[lo, hi]`, ascending; the cofactor is
/// treated as a single opaque prime.
fn divisors_between(f: &Factorization, lo: u64, hi: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    let blocks = f
        .primes
        .iter()
        .map(|&(p, e)| (BigInt::from(p), e))
        .chain((f.cofactor > BigInt::one()).then(|| (f.cofactor.clone(), 1)));
    for (p, e) in blocks {
        let Some(p) = p.to_u64().filter(|&p| p <= hi) else {
            continue;
        };
        let mut next = Vec::new();
        for &d in &divs {
            let mut v = d;
            for _ in 0..=e {
                next.push(v);
                match v.checked_mul(p).filter(|&w| w <= hi) {
                    Some(w) => v = w,
                    None => break,
                }
            }
        }
        divs = next;
    }
    divs.retain(|&d| d >= lo && d <= hi);
    divs.sort_unstable();
    divs.dedup();
    divs
}

/// `(N − q^n − 1)² ≤ 4·genus²·q^n` whenever `N > q^n + 1`.
fn hasse_weil_ok(qn: &BigInt, genus: &BigInt, points: &BigInt) -> bool {
    let dev: BigInt = points - qn - 1u32;
    !dev.is_positive() || &dev * &dev <= genus * genus * qn * 4u32
}

/// Covers of every degree `2 ≤ i ≤ max_degree` dividing `L_{q^n}(1)/L_q(1)`.
pub fn cover_table(c: &CurveParams, n: usize, max_degree: u64, prime_cap: u64) -> Result<Vec<CoverReport>> {
    if !voloch_precondition(c, n)? {
        return param(format!("N_q ≠ N_{{q^{n}}} or L_q(1) ≥ L_{{q^{n}}}(1) for (p, t) = ({}, {})", c.p(), c.t()));
    }
    let r = jacobian_ratio(c, n)?;
    let f = trial_factor(&r, prime_cap)?;
    let g = c.genus();
    let nqn = point_count(c, n)?.count;
    let qn = c.qn(n);
    let mut rows = Vec::new();
    for i in divisors_between(&f, 2, max_degree) {
        if !(&r % i).is_zero() {
            return internal(format!("{i} was emitted but does not divide {r}"));
        }
        let bi = BigInt::from(i);
        let genus = &bi * (&g - 1) + 1;
        let point_bound = &bi * &nqn;
        if !hasse_weil_ok(&qn, &genus, &point_bound) {
            return Err(Error::Internal(format!(
                "degree-{i} cover with genus {genus} and {point_bound} points breaks the Hasse–Weil bound"
            )));
        }
        rows.push(CoverReport {
            base: *c,
            n,
            degree: i,
            genus,
            point_bound,
        });
    }
    Ok(rows)
}

/// Published upper bounds on `#Z(F_7)` for the genus-161 and genus-81 covers
/// of the `p = 7` curve; no other values are tabulated.
pub fn oesterle_note(genus: u64, q: u64) -> Option<u64> {
    match (genus, q) {
        (161, 7) => Some(410),
        (81, 7) => Some(226),
        _ => None,
    }
}
