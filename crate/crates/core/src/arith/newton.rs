//! Conversions between L-polynomial coefficients and point counts.
//!
//! With `L(T) = Σ a_i T^i = Π (1 − ω_i T)` the power sums `s_n = Σ ω_i^n`
//! satisfy `n·a_n + Σ_{k=0}^{n−1} a_k s_{n−k} = 0`, and `N_n = q^n + 1 − s_n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::IntPoly;

fn check_l_shape(l: &IntPoly, g: usize) -> Result<()> {
    if l.degree() != Some(2 * g) {
        return Err(Error::MalformedL(format!(
            "degree {:?}, expected {}",
            l.degree(),
            2 * g
        )));
    }
    if !l.coeff(0).is_one() {
        return Err(Error::MalformedL(format!("L(0) = {}, expected 1", l.coeff(0))));
    }
    Ok(())
}

/// Power sums `s_1..=s_n` of the reciprocal roots of `l`.
pub fn power_sums(l: &IntPoly, n: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(n + 1);
    s.push(BigInt::zero());
    for k in 1..=n {
        let mut acc = -BigInt::from(k) * l.coeff(k);
        for j in 1..k {
            acc -= l.coeff(j) * &s[k - j];
        }
        s.push(acc);
    }
    s.remove(0);
    s
}

/// `N_{q^n} = q^n + 1 − s_n`, computed from the coefficients of `l` alone.
pub fn newton_counts(l: &IntPoly, q: &BigInt, g: usize, n: usize) -> Result<BigInt> {
    check_l_shape(l, g)?;
    if n == 0 {
        return Err(Error::Parameter("extension degree n must be at least 1".into()));
    }
    let s_n = power_sums(l, n).pop().unwrap_or_default();
    Ok(q.pow(n as u32) + 1 - s_n)
}

/// Every count `N_1..=N_n` at once (one Newton pass).
pub fn newton_count_sequence(l: &IntPoly, q: &BigInt, g: usize, n: usize) -> Result<Vec<BigInt>> {
    check_l_shape(l, g)?;
    let mut qn = BigInt::one();
    Ok(power_sums(l, n)
        .into_iter()
        .map(|s| {
            qn *= q;
            &qn + 1 - s
        })
        .collect())
}

/// Rebuilds the degree-`2g` L-polynomial from `N_1..=N_g`.
///
/// The low half comes from Newton's identities, the high half from
/// `a_{2g−i} = q^{g−i} a_i`.
pub fn reconstruct_l_from_counts(counts: &[BigInt], q: &BigInt, g: usize) -> Result<IntPoly> {
    if counts.len() != g {
        return Err(Error::InconsistentCounts(format!(
            "{} counts supplied for genus {g}",
            counts.len()
        )));
    }
    let mut a = vec![BigInt::zero(); 2 * g + 1];
    a[0] = BigInt::one();
    let mut s: Vec<BigInt> = vec![BigInt::zero()];
    let mut qn = BigInt::one();
    for (k, count) in counts.iter().enumerate().map(|(i, c)| (i + 1, c)) {
        qn *= q;
        s.push(&qn + 1 - count);
        let mut acc = -s[k].clone();
        for j in 1..k {
            acc -= &a[j] * &s[k - j];
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::InconsistentCounts(format!(
                "coefficient a_{k} = {acc}/{k} is not an integer"
            )));
        }
        a[k] = quot;
    }
    for i in 0..g {
        a[2 * g - i] = q.pow((g - i) as u32) * &a[i];
    }
    Ok(IntPoly::new(a))
}

/// `a_{2g−i} = q^{g−i}·a_i` for all `0 ≤ i ≤ g`, with `a_0 = 1`.
pub fn satisfies_functional_equation(l: &IntPoly, q: &BigInt, g: usize) -> bool {
    l.degree() == Some(2 * g)
        && l.coeff(0).is_one()
        && (0..=g).all(|i| l.coeff(2 * g - i) == q.pow((g - i) as u32) * l.coeff(i))
}
