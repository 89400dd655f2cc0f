use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lpoly::period;
use super::CurveParams;
use crate::artin_schreier::count_solutions_oracle;
use crate::error::{internal, param, Error, Result};
use crate::field::gf::artin_schreier_fiber_count;
use crate::field::quadratic::{count_trace_zeros, NAIVE_LIMIT};
use crate::field::FiniteField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Maximality {
    Maximal,
    Minimal,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Oracle,
    Mcguire,
    Decomposition,
}

/// `N_{q^n}` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub count: BigInt,
    pub method: Method,
    pub maximality: Maximality,
}

#[derive(Serialize, Deserialize)]
struct CountRepr {
    n: usize,
    #[serde(rename = "N")]
    count: String,
    method: Method,
    maximality: Maximality,
}

impl Serialize for CountReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CountRepr {
            n: self.n,
            count: self.count.to_string(),
            method: self.method,
            maximality: self.maximality,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CountReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CountRepr::deserialize(d)?;
        Ok(Self {
            n: r.n,
            count: r.count.parse().map_err(D::Error::custom)?,
            method: r.method,
            maximality: r.maximality,
        })
    }
}

/// `(−1)^e` as a `BigInt`.
fn minus_one_pow(e: usize) -> BigInt {
    if e % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// `q^{n/2}` when `mn` is even.
fn half_power(c: &CurveParams, n: usize) -> Option<BigInt> {
    let e = c.m() as usize * n;
    (e % 2 == 0).then(|| BigInt::from(c.p()).pow((e / 2) as u32))
}

/// Maximal iff `N = q^n + 1 + 2g·q^{n/2}`, minimal iff `N = q^n + 1 − 2g·q^{n/2}`.
pub fn classify(c: &CurveParams, n: usize, count: &BigInt) -> Maximality {
    let Some(h) = half_power(c, n) else {
        return Maximality::Neither;
    };
    let dev: BigInt = count - c.qn(n) - 1;
    let bound: BigInt = 2 * c.genus() * h;
    if dev == bound {
        Maximality::Maximal
    } else if dev == -bound {
        Maximality::Minimal
    } else {
        Maximality::Neither
    }
}

/// `|N − (q^n + 1)| ≤ 2g·q^{n/2}`, compared through squares.
pub fn within_hasse_weil(qn: &BigInt, genus: &BigInt, count: &BigInt) -> bool {
    let dev: BigInt = (count - qn - 1u32).abs();
    &dev * &dev <= genus * genus * qn * 4u32
}

fn report(c: &CurveParams, n: usize, count: BigInt, method: Method) -> Result<CountReport> {
    if !within_hasse_weil(&c.qn(n), &c.genus(), &count) {
        return internal(format!("N_{{q^{n}}} = {count} violates the Hasse–Weil bound"));
    }
    Ok(CountReport {
        n,
        maximality: classify(c, n, &count),
        count,
        method,
    })
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        param("extension degree n must be at least 1")
    } else {
        Ok(())
    }
}

/// Closed-form `N_{q^n}`.
pub fn point_count(c: &CurveParams, n: usize) -> Result<CountReport> {
    check_n(n)?;
    let p = c.p();
    let qn1 = c.qn(n) + 1;
    let two_g = 2 * c.genus();
    let nn = BigInt::from(n);
    let count = match (n as u64 % p == 0, n % 2 == 0) {
        (true, false) | (false, true) => qn1,
        (true, true) => {
            let h = half_power(c, n).expect("n even");
            let eta = c.eta(&minus_one_pow(n / 2));
            qn1 - eta * two_g * h
        }
        (false, false) => {
            let e = c.m() as usize * n;
            debug_assert!(e % 2 == 1);
            let scale = BigInt::from(p).pow(((e - 1) / 2) as u32);
            let eta = c.eta(&(minus_one_pow((n - 1) / 2) * nn));
            qn1 + eta * two_g * scale
        }
    };
    report(c, n, count, Method::Formula)
}

fn check_limit(field: &FiniteField, limit: u128) -> Result<()> {
    match field.order() {
        Some(o) if o <= limit => Ok(()),
        _ => Err(Error::Resource(format!(
            "enumerating GF({}^{}) exceeds the oracle limit {limit}",
            field.characteristic(),
            field.degree()
        ))),
    }
}

/// `N_{q^n}` by visiting every `x ∈ F_{q^n}` and adding the fiber size of
/// `y^q − y = x^{q0}(x^q − x)`, plus the point at infinity.
pub fn brute_force_count_naive(c: &CurveParams, n: usize, limit: u128) -> Result<CountReport> {
    check_n(n)?;
    let f = c.extension_field(n)?;
    check_limit(&f, limit)?;
    let (t, m) = (c.t() as usize, c.m() as usize);
    let mut affine = BigInt::zero();
    for x in f.elements() {
        let rhs = &x.frobenius(t) * &(&x.frobenius(m) - &x);
        affine += artin_schreier_fiber_count(&rhs, m)?;
    }
    report(c, n, affine + 1, Method::Oracle)
}

/// Same count as [`brute_force_count_naive`], organized for large fields.
///
/// The fiber over `x` is full exactly when the relative trace of
/// `c(x) = x^{q0}(x^q − x)` to `F_q` vanishes. Orthogonality of the additive
/// characters of `F_q` gives
/// `#{x : Tr_{q^n/q} c(x) = 0} = q^{−1}·(q^n + Σ_μ (p·Z_μ − q^n))`, where `μ`
/// runs over `F_q^*/F_p^*` and `Z_μ = #{x : Tr_{q^n/p}(μ·c(x)) = 0}`. Each
/// `Z_μ` counts zeros of an `F_p`-quadratic form and is enumerated exactly.
pub fn brute_force_count(c: &CurveParams, n: usize, limit: u128) -> Result<CountReport> {
    check_n(n)?;
    let f = c.extension_field(n)?;
    check_limit(&f, limit)?;
    if f.order().is_some_and(|o| o <= NAIVE_LIMIT) {
        return brute_force_count_naive(c, n, limit);
    }
    let (t, m) = (c.t() as usize, c.m() as usize);
    let p = c.p();
    let basis = f.subfield_basis(m)?;
    let qn = c.qn(n);
    let mut acc = qn.clone();
    for mu in projective_points(&f, &basis, p) {
        let z = count_trace_zeros(&f, |x| &mu * &(&x.frobenius(t) * &(&x.frobenius(m) - x)))?;
        acc += BigInt::from(z) * p - &qn;
    }
    let (zeros, rem) = acc.div_rem(&c.q());
    if !rem.is_zero() {
        return internal("character sum is not divisible by q");
    }
    report(c, n, zeros * c.q() + 1, Method::Oracle)
}

/// One representative of each line through the origin in `span(basis)`: the
/// first nonzero coordinate is 1.
fn projective_points(
    f: &std::sync::Arc<FiniteField>,
    basis: &[crate::field::FieldElement],
    p: u64,
) -> Vec<crate::field::FieldElement> {
    let mut out = Vec::new();
    for lead in 0..basis.len() {
        let rest = basis.len() - lead - 1;
        let count = (p as u128).pow(rest as u32);
        for idx in 0..count {
            let mut e = basis[lead].clone();
            let mut r = idx;
            for b in &basis[lead + 1..] {
                let digit = (r % p as u128) as u64;
                r /= p as u128;
                if digit != 0 {
                    e = &e + &(b * &f.from_u64(digit));
                }
            }
            out.push(e);
        }
    }
    out
}

/// `N_{q^n}` through the quotient curve `Y^p − Y = X·(X^{q/q0} − X^{q0})`:
/// `N − (q^n + 1) = (q − 1)/(p − 1)·(N(X̃_1) − (q^n + 1))`.
pub fn decomposition_count(c: &CurveParams, n: usize, limit: u128) -> Result<CountReport> {
    check_n(n)?;
    let r = c.x1_polynomial()?;
    let affine = count_solutions_oracle(&r, n, limit)?;
    let qn1 = c.qn(n) + 1;
    let n_x1 = affine + 1;
    let scale = (c.q() - 1) / (c.p() - 1);
    report(c, n, &qn1 + scale * (n_x1 - &qn1), Method::Decomposition)
}

/// Propagates `N_{q^{n1}}` to `N_{q^n}` for `n1 = gcd(n, s)`, `s` the period.
pub fn mcguire_extend(c: &CurveParams, base: &CountReport, n: usize) -> Result<CountReport> {
    check_n(n)?;
    let s = period(c)?;
    let n1 = n.gcd(&s);
    if base.n != n1 {
        return param(format!("base count is for n = {}, expected gcd({n}, {s}) = {n1}", base.n));
    }
    let k = n / n1;
    let delta1 = &base.count - c.qn(n1) - 1;
    let p = c.p();
    // (n − n1)·m is even in every branch: n1·m even forces n1 even,
    // and an odd n1 forces n odd because s is even
    let shift = BigInt::from(p).pow((c.m() as usize * (n - n1) / 2) as u32);
    let m_odd = (n1 * c.m() as usize) % 2 == 1;
    let delta = if m_odd && k as u64 % p != 0 {
        let eta = c.eta(&(minus_one_pow((k - 1) / 2) * BigInt::from(k)));
        eta * shift * delta1
    } else {
        shift * delta1
    };
    report(c, n, c.qn(n) + 1 + delta, Method::Mcguire)
}
