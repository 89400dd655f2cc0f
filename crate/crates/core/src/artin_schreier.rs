//! Curves `Y^p − Y = X·R(X)` with `R` a `p`-polynomial.
//!
//! The point count over `F_{q^n}` is governed by the quadratic form
//! `Q(a) = Tr(a·R(a))`. Its radical `W` is the kernel of the `F_p`-linear
//! map `E_R(T) = R(T)^{p^k} + Σ (α_i·T)^{p^{k−i}}`; when `mn − dim W` is odd
//! the count is exactly `q^n`, otherwise it is `q^n ± (p−1)·p^{(dim W + mn)/2}`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{internal, param, Error, Result};
use crate::field::quadratic::count_trace_zeros;
use crate::field::{Embedding, FieldDescriptor, FieldElement, FiniteField, FpMatrix};

/// `R(X) = Σ_{i≤k} α_i X^{p^i}` with coefficients in a base field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomial {
    field: Arc<FiniteField>,
    coeffs: Vec<FieldElement>,
}

impl PPolynomial {
    /// Trailing zero coefficients are dropped; at least one must be nonzero.
    pub fn new(field: &Arc<FiniteField>, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.field().same_field(field)) {
            return Err(Error::FieldMismatch);
        }
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return param("a p-polynomial needs a nonzero coefficient");
        }
        Ok(Self {
            field: field.clone(),
            coeffs,
        })
    }

    /// Builds `R` from sparse `(i, α_i)` terms with prime-field coefficients.
    pub fn from_terms(field: &Arc<FiniteField>, terms: &[(usize, i64)]) -> Result<Self> {
        let k = terms.iter().map(|&(i, _)| i).max().unwrap_or(0);
        let mut coeffs = vec![field.zero(); k + 1];
        for &(i, c) in terms {
            coeffs[i] = &coeffs[i] + &field.from_i64(c);
        }
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// The index `k` of the top coefficient.
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    /// The same polynomial with coefficients lifted into `big ⊇ F_q`.
    pub fn over(&self, big: &Arc<FiniteField>) -> Result<Self> {
        if big.same_field(&self.field) {
            return Ok(self.clone());
        }
        let emb = Embedding::new(&self.field, big)?;
        let coeffs = self.coeffs.iter().map(|c| emb.lift(c)).collect::<Result<_>>()?;
        Ok(Self {
            field: big.clone(),
            coeffs,
        })
    }

    fn lifted_for(&self, a: &FieldElement) -> Result<std::borrow::Cow<'_, Self>> {
        if a.field().same_field(&self.field) {
            Ok(std::borrow::Cow::Borrowed(self))
        } else {
            Ok(std::borrow::Cow::Owned(self.over(a.field())?))
        }
    }

    /// `R(x)` for `x` in the coefficient field.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        let mut xp = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = xp.frobenius(1);
            }
            if !c.is_zero() {
                acc = &acc + &(c * &xp);
            }
        }
        acc
    }

    /// `E_R(x) = R(x)^{p^k} + Σ_i (α_i·x)^{p^{k−i}}` for `x` in the coefficient field.
    pub fn e_r(&self, x: &FieldElement) -> FieldElement {
        let k = self.k();
        let mut acc = self.eval(x).frobenius(k);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * x).frobenius(k - i);
            }
        }
        acc
    }

    pub fn descriptor(&self) -> PPolynomialRepr {
        PPolynomialRepr {
            field: self.field.descriptor(),
            coeffs: self.coeffs.iter().map(|c| c.coeffs().to_vec()).collect(),
        }
    }

    pub fn from_descriptor(repr: &PPolynomialRepr) -> Result<Self> {
        let field = FiniteField::with_modulus(repr.field.p, repr.field.modulus.clone())?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| field.element(c))
            .collect::<Result<_>>()?;
        Self::new(&field, coeffs)
    }
}

/// Serialized form `{field, coeffs}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPolynomialRepr {
    pub field: FieldDescriptor,
    pub coeffs: Vec<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalReport {
    pub n: usize,
    pub dim: usize,
    /// Parity of `mn − dim`.
    pub parity_case: Parity,
}

/// `p^k·(p − 1)/2`.
pub fn genus_fr(r: &PPolynomial) -> BigInt {
    let p = r.characteristic();
    BigInt::from(p).pow(r.k() as u32) * (p - 1) / 2
}

/// `Tr(a·R(a))` as an integer in `[0, p)`.
pub fn quadratic_form(r: &PPolynomial, a: &FieldElement) -> Result<u64> {
    let r = r.lifted_for(a)?;
    Ok((a * &r.eval(a)).absolute_trace())
}

/// `½·Tr(a·R(b) + b·R(a))`, with `½` the inverse of 2 mod `p`.
pub fn bilinear_form(r: &PPolynomial, a: &FieldElement, b: &FieldElement) -> Result<u64> {
    if !a.field().same_field(b.field()) {
        return Err(Error::FieldMismatch);
    }
    let r = r.lifted_for(a)?;
    let p = r.characteristic();
    let t = (&(a * &r.eval(b)) + &(b * &r.eval(a))).absolute_trace();
    Ok(t * p.div_ceil(2) % p)
}

fn extension(r: &PPolynomial, n: usize) -> Result<(Arc<FiniteField>, PPolynomial)> {
    if n == 0 {
        return param("extension degree n must be at least 1");
    }
    let big = FiniteField::new(r.characteristic(), r.field.degree() * n)?;
    let lifted = r.over(&big)?;
    Ok((big, lifted))
}

/// Dimension of the radical of `Q` over `F_{q^n}`, from the kernel of `E_R`.
pub fn radical_dimension(r: &PPolynomial, n: usize) -> Result<RadicalReport> {
    let (big, lifted) = extension(r, n)?;
    let m: FpMatrix = big.linear_map_matrix(|x| lifted.e_r(x));
    let dim = big.degree() - m.rank();
    Ok(RadicalReport {
        n,
        dim,
        parity_case: if (big.degree() - dim) % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        },
    })
}

/// Radical dimension as `log_p #{x : E_R(x) = 0}`, by enumeration.
pub fn radical_dimension_by_roots(r: &PPolynomial, n: usize, limit: u128) -> Result<usize> {
    let (big, lifted) = extension(r, n)?;
    check_limit(&big, limit)?;
    let roots = big.elements().filter(|x| lifted.e_r(x).is_zero()).count() as u128;
    let p = r.characteristic() as u128;
    let mut dim = 0;
    let mut acc = 1u128;
    while acc < roots {
        acc *= p;
        dim += 1;
    }
    if acc != roots {
        return internal(format!("{roots} roots of E_R is not a power of {p}"));
    }
    Ok(dim)
}

fn check_limit(big: &FiniteField, limit: u128) -> Result<()> {
    match big.order() {
        Some(o) if o <= limit => Ok(()),
        _ => Err(Error::Resource(format!(
            "enumerating GF({}^{}) exceeds the oracle limit {limit}",
            big.characteristic(),
            big.degree()
        ))),
    }
}

/// Number of affine solutions `(x, y) ∈ F_{q^n}²` of `y^p − y = x·R(x)`.
///
/// Each `x` contributes `p` when `Tr(x·R(x)) = 0` and nothing otherwise.
pub fn count_solutions_oracle(r: &PPolynomial, n: usize, limit: u128) -> Result<BigInt> {
    let (big, lifted) = extension(r, n)?;
    check_limit(&big, limit)?;
    let zeros = count_trace_zeros(&big, |x| x * &lifted.eval(x))?;
    Ok(BigInt::from(zeros) * r.characteristic())
}

/// How the sign of an even-parity count is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignResolution {
    /// Report both candidates.
    Unresolved,
    /// Run the enumeration oracle when the field has at most `limit` elements.
    Oracle { limit: u128 },
    /// The caller knows the sign from elsewhere.
    Known(Sign),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Odd parity: the count is `q^n` with no sign to choose.
    Formula,
    /// The oracle picked one of the two candidates.
    Oracle,
    /// A caller-supplied sign.
    Known,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormCount {
    Exact { value: BigInt, provenance: Provenance },
    Candidates { plus: BigInt, minus: BigInt },
}

impl FormCount {
    pub fn exact(&self) -> Option<&BigInt> {
        match self {
            Self::Exact { value, .. } => Some(value),
            Self::Candidates { .. } => None,
        }
    }

    pub fn admits(&self, v: &BigInt) -> bool {
        match self {
            Self::Exact { value, .. } => value == v,
            Self::Candidates { plus, minus } => plus == v || minus == v,
        }
    }
}

/// Affine solution count from the radical dimension.
pub fn count_solutions_by_form(
    r: &PPolynomial,
    n: usize,
    resolution: SignResolution,
) -> Result<FormCount> {
    let report = radical_dimension(r, n)?;
    let p = r.characteristic();
    let mn = r.field.degree() * n;
    let qn = BigInt::from(p).pow(mn as u32);
    if report.parity_case == Parity::Odd {
        return Ok(FormCount::Exact {
            value: qn,
            provenance: Provenance::Formula,
        });
    }
    let dev = BigInt::from(p - 1) * BigInt::from(p).pow(((report.dim + mn) / 2) as u32);
    let plus = &qn + &dev;
    let minus = &qn - &dev;
    match resolution {
        SignResolution::Unresolved => Ok(FormCount::Candidates { plus, minus }),
        SignResolution::Known(sign) => Ok(FormCount::Exact {
            value: if sign == Sign::Plus { plus } else { minus },
            provenance: Provenance::Known,
        }),
        SignResolution::Oracle { limit } => match count_solutions_oracle(r, n, limit) {
            Ok(v) if v == plus || v == minus => Ok(FormCount::Exact {
                value: v,
                provenance: Provenance::Oracle,
            }),
            Ok(v) => internal(format!("oracle count {v} is neither {plus} nor {minus}")),
            Err(Error::Resource(_)) => Ok(FormCount::Candidates { plus, minus }),
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    const LIMIT: u128 = 1 << 24;

    // X^{p^{t−1}} − X^{p^t} over GF(p^{2t−1})
    fn x1(p: u64, t: usize) -> PPolynomial {
        let f = FiniteField::new(p, 2 * t - 1).unwrap();
        PPolynomial::from_terms(&f, &[(t - 1, 1), (t, -1)]).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus_fr(&x1(3, 1)), big(3));
        assert_eq!(genus_fr(&x1(3, 2)), big(9));
        assert_eq!(genus_fr(&x1(5, 1)), big(10));
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = FiniteField::new(3, 1).unwrap();
        assert!(PPolynomial::new(&f, vec![f.zero(), f.zero()]).is_err());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical_dimension(&x1(3, 1), 1).unwrap().dim, 1);
        assert_eq!(radical_dimension(&x1(3, 1), 3).unwrap().dim, 2);
        assert_eq!(radical_dimension(&x1(3, 2), 3).unwrap().dim, 4);
        assert_eq!(radical_dimension(&x1(3, 1), 2).unwrap().parity_case, Parity::Odd);
    }

    #[test]
    fn radical_matches_root_count() {
        for (p, t, n) in [(3, 1, 1), (3, 1, 3), (3, 1, 4), (5, 1, 2), (3, 2, 1), (3, 2, 2), (7, 1, 2)] {
            let r = x1(p, t);
            assert_eq!(
                radical_dimension(&r, n).unwrap().dim,
                radical_dimension_by_roots(&r, n, LIMIT).unwrap(),
                "({p},{t}) n={n}"
            );
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(count_solutions_oracle(&x1(3, 1), 1, LIMIT).unwrap(), big(9));
        assert_eq!(count_solutions_oracle(&x1(3, 1), 2, LIMIT).unwrap(), big(9));
        assert_eq!(count_solutions_oracle(&x1(5, 1), 1, LIMIT).unwrap(), big(25));
        assert!(matches!(count_solutions_oracle(&x1(3, 1), 20, 1000), Err(Error::Resource(_))));
    }

    #[test]
    fn form_examples() {
        let r = x1(3, 1);
        assert_eq!(
            count_solutions_by_form(&r, 1, SignResolution::Unresolved).unwrap(),
            FormCount::Candidates { plus: big(9), minus: big(-3) }
        );
        assert_eq!(
            count_solutions_by_form(&r, 1, SignResolution::Oracle { limit: LIMIT }).unwrap(),
            FormCount::Exact { value: big(9), provenance: Provenance::Oracle }
        );
        assert_eq!(
            count_solutions_by_form(&r, 2, SignResolution::Unresolved).unwrap(),
            FormCount::Exact { value: big(9), provenance: Provenance::Formula }
        );
        assert_eq!(
            count_solutions_by_form(&r, 6, SignResolution::Oracle { limit: LIMIT }).unwrap().exact(),
            Some(&big(891))
        );
        assert_eq!(
            count_solutions_by_form(&r, 6, SignResolution::Known(Sign::Minus)).unwrap().exact(),
            Some(&big(567))
        );
    }

    #[test]
    fn oracle_lies_in_candidate_set() {
        for (p, t) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
            let r = x1(p, t);
            for n in 1..=4 {
                let big_order = (p as u128).pow(((2 * t - 1) * n) as u32);
                if big_order > LIMIT {
                    continue;
                }
                let oracle = count_solutions_oracle(&r, n, LIMIT).unwrap();
                let form = count_solutions_by_form(&r, n, SignResolution::Unresolved).unwrap();
                assert!(form.admits(&oracle), "({p},{t}) n={n}: {oracle} vs {form:?}");
            }
        }
    }

    #[test]
    fn e_r_matches_closed_form() {
        // E_R(T) = (T − T^q)^p − (T − T^q) for R = X^{q/q0} − X^{q0}
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, t, n) in [(3, 1, 4), (3, 2, 2), (5, 1, 3)] {
            let (f, r) = extension(&x1(p, t), n).unwrap();
            let m = 2 * t - 1;
            for _ in 0..30 {
                let x = f.random(&mut rng);
                let u = &x - &x.frobenius(m);
                assert_eq!(r.e_r(&x), &u.frobenius(1) - &u);
            }
        }
    }

    #[test]
    fn descriptor_roundtrip() {
        let r = x1(3, 2);
        let json = serde_json::to_string(&r.descriptor()).unwrap();
        let back: PPolynomialRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(PPolynomial::from_descriptor(&back).unwrap(), r);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn form_identities(seed in any::<u64>(), pick in 0usize..3, n in 1usize..4) {
            let (p, t) = [(3, 1), (5, 1), (3, 2)][pick];
            let (f, r) = extension(&x1(p, t), n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let g = rng.gen_range(0..p);
            let q = |x: &FieldElement| quadratic_form(&r, x).unwrap();
            prop_assert_eq!(q(&f.zero()), 0);
            prop_assert_eq!(q(&(&f.from_u64(g) * &a)), g * g % p * q(&a) % p);
            let polar = (q(&(&a + &b)) + 2 * p - q(&a) - q(&b)) % p * p.div_ceil(2) % p;
            prop_assert_eq!(bilinear_form(&r, &a, &b).unwrap(), polar);
        }

        #[test]
        fn radical_is_orthogonal(seed in any::<u64>(), n in 1usize..5) {
            let (f, r) = extension(&x1(3, 1), n).unwrap();
            let ker = f.linear_map_matrix(|x| r.e_r(x)).kernel();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for w in ker {
                let w = f.element(&w).unwrap();
                for _ in 0..100 {
                    let b = f.random(&mut rng);
                    prop_assert_eq!(bilinear_form(&r, &w, &b).unwrap(), 0);
                }
            }
        }
    }
}
