use std::sync::Arc;

use super::gf::{FieldElement, FiniteField};
use super::linalg::FpMatrix;
use crate::error::{param, Error, Result};

/// Embedding of `GF(p^m)` into `GF(p^{mn})`.
///
/// The generator of the small field is sent to the root of its modulus that
/// has the smallest index in the large field's enumeration order. Roots are
/// searched inside the degree-`m` subfield only, so construction costs
/// `O(p^m)` evaluations regardless of `n`.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Arc<FiniteField>,
    big: Arc<FiniteField>,
    // images of 1, θ, …, θ^{m−1}
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(small: &Arc<FiniteField>, big: &Arc<FiniteField>) -> Result<Self> {
        let p = small.characteristic();
        let m = small.degree();
        if big.characteristic() != p || big.degree() % m != 0 {
            return param(format!(
                "GF({p}^{m}) does not embed in GF({}^{})",
                big.characteristic(),
                big.degree()
            ));
        }
        let basis = big.subfield_basis(m)?;
        let size = small.order().ok_or_else(|| Error::Resource("subfield too large".into()))?;
        let mut best: Option<FieldElement> = None;
        for idx in 0..size {
            let mut e = big.zero();
            let mut rest = idx;
            for b in &basis {
                let digit = (rest % p as u128) as u64;
                rest /= p as u128;
                if digit != 0 {
                    e = &e + &(b * &big.from_u64(digit));
                }
            }
            if e.eval_fp_poly(small.modulus()).is_zero()
                && best.as_ref().map_or(true, |b| e.index() < b.index())
            {
                best = Some(e);
            }
        }
        let theta = best.ok_or_else(|| Error::Internal("modulus has no root in the subfield".into()))?;
        let mut powers = Vec::with_capacity(m);
        let mut cur = big.one();
        for _ in 0..m {
            powers.push(cur.clone());
            cur = &cur * &theta;
        }
        Ok(Self {
            small: small.clone(),
            big: big.clone(),
            powers,
        })
    }

    pub fn small(&self) -> &Arc<FiniteField> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FiniteField> {
        &self.big
    }

    /// Image of the small field's generator.
    pub fn root(&self) -> FieldElement {
        if self.powers.len() > 1 {
            self.powers[1].clone()
        } else {
            // the modulus is X, whose only root is 0
            self.big.zero()
        }
    }

    pub fn lift(&self, e: &FieldElement) -> Result<FieldElement> {
        if !e.field().same_field(&self.small) {
            return Err(Error::FieldMismatch);
        }
        Ok(e.coeffs()
            .iter()
            .zip(&self.powers)
            .filter(|(&c, _)| c != 0)
            .fold(self.big.zero(), |acc, (&c, pw)| &acc + &(pw * &self.big.from_u64(c))))
    }

    /// Preimage of `e`, or a parameter error when `e` is outside the subfield.
    pub fn restrict(&self, e: &FieldElement) -> Result<FieldElement> {
        if !e.field().same_field(&self.big) {
            return Err(Error::FieldMismatch);
        }
        let cols: Vec<Vec<u64>> = self.powers.iter().map(|w| w.coeffs().to_vec()).collect();
        let m = FpMatrix::from_columns(self.big.characteristic(), self.big.degree(), &cols);
        match m.solve(e.coeffs()) {
            Some(x) => self.small.element(&x),
            None => param("element does not lie in the embedded subfield"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_is_a_ring_homomorphism() {
        let small = FiniteField::new(3, 2).unwrap();
        let big = FiniteField::new(3, 6).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        let elems: Vec<_> = small.elements().collect();
        for a in &elems {
            for b in &elems {
                let la = emb.lift(a).unwrap();
                let lb = emb.lift(b).unwrap();
                assert_eq!(emb.lift(&(a * b)).unwrap(), &la * &lb);
                assert_eq!(emb.lift(&(a + b)).unwrap(), &la + &lb);
            }
            let la = emb.lift(a).unwrap();
            assert!(la.in_subfield(2));
            assert_eq!(&emb.restrict(&la).unwrap(), a);
        }
    }

    #[test]
    fn root_choice_is_deterministic() {
        let small = FiniteField::new(5, 2).unwrap();
        let big = FiniteField::new(5, 4).unwrap();
        let a = Embedding::new(&small, &big).unwrap().root();
        let b = Embedding::new(&small, &big).unwrap().root();
        assert_eq!(a, b);
        assert!(a.eval_fp_poly(small.modulus()).is_zero());
    }

    #[test]
    fn restrict_rejects_outsiders() {
        let small = FiniteField::new(3, 1).unwrap();
        let big = FiniteField::new(3, 3).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        assert!(emb.restrict(&big.generator()).is_err());
        assert_eq!(emb.lift(&small.from_u64(2)).unwrap(), big.from_u64(2));
    }
}
