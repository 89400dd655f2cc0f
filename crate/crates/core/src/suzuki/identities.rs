use num_bigint::BigUint;
use num_traits::Pow;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CurveParams;
use crate::error::{param, Error, Result};
use crate::field::{Embedding, FieldElement, FpMatrix};

/// `β = α^{1 + p + … + p^{t−1}}` and `γ = α^{(q−1)/(p−1)}`.
pub fn beta_gamma(c: &CurveParams, alpha: &FieldElement) -> (FieldElement, FieldElement) {
    let p = BigUint::from(c.p());
    let beta_exp: BigUint = (0..c.t()).map(|i| Pow::pow(&p, i)).sum();
    let gamma_exp = (Pow::pow(&p, c.m()) - 1u32) / (&p - 1u32);
    (alpha.pow(&beta_exp), alpha.pow(&gamma_exp))
}

/// `β^{q0}·β = α·γ`.
pub fn scalar_identity(c: &CurveParams, alpha: &FieldElement) -> bool {
    let (beta, gamma) = beta_gamma(c, alpha);
    &beta.frobenius(c.t() as usize) * &beta == alpha * &gamma
}

/// Checks the substitutions relating the curve to its degree-`p` quotients
/// on `samples` random points over `F_{q^p}`.
///
/// For each point `(x, y)` and random `α ∈ F_q^*`:
/// `y_α = Σ_{j<m} (αy)^{p^j}` solves `y_α^p − y_α = α·x^{q0}(x^q − x)`,
/// `β^{q0}β = αγ`, and `z = y_1 − Σ_{i=1..t} x^{(q+q0)/p^i}` solves
/// `z^p − z = x(x^{q/q0} − x^{q0})`.
pub fn verify_substitutions(c: &CurveParams, samples: usize, seed: u64) -> Result<bool> {
    if samples == 0 {
        return param("samples must be at least 1");
    }
    let p = c.p();
    let m = c.m() as usize;
    let t = c.t() as usize;
    let fq = c.base_field()?;
    let big = c.extension_field(p as usize)?;
    let emb = Embedding::new(&fq, &big)?;
    let as_map: FpMatrix = big.linear_map_matrix(|y| &y.frobenius(m) - y);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let q = c.q().to_biguint().ok_or_else(|| Error::Internal("q is negative".into()))?;
    let q0 = c.q0().to_biguint().ok_or_else(|| Error::Internal("q0 is negative".into()))?;
    let pb = BigUint::from(p);
    let z_exponents: Vec<BigUint> = (1..=t).map(|i| (&q + &q0) / Pow::pow(&pb, i as u32)).collect();
    let q_over_q0 = &q / &q0;

    let attempts_cap = samples.saturating_mul(64).max(1 << 12);
    let mut found = 0;
    for _ in 0..attempts_cap {
        if found == samples {
            break;
        }
        let x = big.random(&mut rng);
        let rhs = &x.frobenius(t) * &(&x.frobenius(m) - &x);
        let Some(sol) = as_map.solve(rhs.coeffs()) else {
            continue;
        };
        let y = big.element(&sol)?;
        found += 1;

        let alpha_small = fq.random_nonzero(&mut rng);
        let alpha = emb.lift(&alpha_small)?;
        let y_alpha = y_sum(&(&alpha * &y), m);
        if &y_alpha.frobenius(1) - &y_alpha != &alpha * &rhs {
            return Ok(false);
        }
        if !scalar_identity(c, &alpha_small) {
            return Ok(false);
        }

        let y1 = y_sum(&y, m);
        let z = z_exponents.iter().fold(y1, |acc, e| &acc - &x.pow(e));
        let target = &x * &(&x.pow(&q_over_q0) - &x.frobenius(t));
        if &z.frobenius(1) - &z != target {
            return Ok(false);
        }
    }
    if found < samples {
        return Err(Error::Resource(format!("found only {found} of {samples} curve points")));
    }
    Ok(true)
}

fn y_sum(v: &FieldElement, m: usize) -> FieldElement {
    (0..m).fold(v.field().zero(), |acc, j| &acc + &v.frobenius(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_scalars_for_3_2() {
        let c = CurveParams::new(3, 2).unwrap();
        let fq = c.base_field().unwrap();
        let a = fq.primitive_element();
        let (beta, gamma) = beta_gamma(&c, &a);
        assert_eq!(beta, a.pow_u64(4));
        assert_eq!(gamma, a.pow_u64(13));
        assert_eq!(&beta.frobenius(2) * &beta, a.pow_u64(14));
        assert!(scalar_identity(&c, &a));
    }

    #[test]
    fn trivial_alpha() {
        let c = CurveParams::new(5, 1).unwrap();
        let fq = c.base_field().unwrap();
        assert_eq!(beta_gamma(&c, &fq.one()), (fq.one(), fq.one()));
    }

    #[test]
    fn substitutions_hold() {
        for (p, t) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
            let c = CurveParams::new(p, t).unwrap();
            assert!(verify_substitutions(&c, 20, 9).unwrap(), "(p, t) = ({p}, {t})");
        }
    }

    #[test]
    fn zero_samples_rejected() {
        let c = CurveParams::new(3, 1).unwrap();
        assert!(verify_substitutions(&c, 0, 0).is_err());
    }
}
