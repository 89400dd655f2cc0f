use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CurveParams;
use crate::error::{internal, param, Error, Result};
use crate::field::{Embedding, FieldElement, FiniteField};

/// `(x, y) ↦ (αx + β, αβ^{q0}x + α^{q0+1}y + γ)` with `α ∈ F_q^*`, `β, γ ∈ F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    params: CurveParams,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
}

/// Coefficient arrays of `α, β, γ` in the canonical `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismRepr {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub gamma: Vec<u64>,
}

impl Automorphism {
    pub fn new(c: &CurveParams, alpha: FieldElement, beta: FieldElement, gamma: FieldElement) -> Result<Self> {
        let fq = c.base_field()?;
        if [&alpha, &beta, &gamma].iter().any(|e| !e.field().same_field(&fq)) {
            return param("automorphism entries must lie in the canonical F_q");
        }
        if alpha.is_zero() {
            return param("alpha must be nonzero");
        }
        Ok(Self::raw(c, alpha, beta, gamma))
    }

    fn raw(c: &CurveParams, alpha: FieldElement, beta: FieldElement, gamma: FieldElement) -> Self {
        Self {
            params: *c,
            alpha,
            beta,
            gamma,
        }
    }

    pub fn identity(c: &CurveParams) -> Result<Self> {
        let fq = c.base_field()?;
        Self::new(c, fq.one(), fq.zero(), fq.zero())
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_zero() && self.gamma.is_zero()
    }

    /// Membership in the normal subgroup `G` (`α = 1`).
    pub fn in_g(&self) -> bool {
        self.alpha.is_one()
    }

    /// Membership in the complement `H` (`β = γ = 0`).
    pub fn in_h(&self) -> bool {
        self.beta.is_zero() && self.gamma.is_zero()
    }

    fn q0_pow(&self, e: &FieldElement) -> FieldElement {
        e.frobenius(self.params.t() as usize)
    }

    /// Image of a point whose coordinates lie in `F_q` itself.
    fn apply_base(&self, x: &FieldElement, y: &FieldElement) -> (FieldElement, FieldElement) {
        let (a, b, g) = (&self.alpha, &self.beta, &self.gamma);
        let a_q0 = self.q0_pow(a);
        let nx = &(a * x) + b;
        let ny = &(&(&(a * &self.q0_pow(b)) * x) + &(&(&a_q0 * a) * y)) + g;
        (nx, ny)
    }

    /// Image of `(x, y)` over `F_{q^n}`, lifting `α, β, γ` through `emb`.
    pub fn apply_with(
        &self,
        emb: &Embedding,
        x: &FieldElement,
        y: &FieldElement,
    ) -> Result<(FieldElement, FieldElement)> {
        if !x.field().same_field(y.field()) || !x.field().same_field(emb.big()) {
            return Err(Error::FieldMismatch);
        }
        let a = emb.lift(&self.alpha)?;
        let b = emb.lift(&self.beta)?;
        let g = emb.lift(&self.gamma)?;
        let t = self.params.t() as usize;
        let a_q0 = a.frobenius(t);
        let nx = &(&a * x) + &b;
        let ny = &(&(&(&a * &b.frobenius(t)) * x) + &(&(&a_q0 * &a) * y)) + &g;
        Ok((nx, ny))
    }

    /// Image of `(x, y)`; coordinates may lie in any `F_{q^n}`.
    pub fn apply(&self, x: &FieldElement, y: &FieldElement) -> Result<(FieldElement, FieldElement)> {
        if !x.field().same_field(y.field()) {
            return Err(Error::FieldMismatch);
        }
        if x.field().same_field(self.alpha.field()) {
            return Ok(self.apply_base(x, y));
        }
        let emb = Embedding::new(self.alpha.field(), x.field())?;
        self.apply_with(&emb, x, y)
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return param("automorphisms of different curves");
        }
        let (a1, b1, g1) = (&self.alpha, &self.beta, &self.gamma);
        let (a2, b2, g2) = (&other.alpha, &other.beta, &other.gamma);
        let alpha = a1 * a2;
        let beta = &(a2 * b1) + b2;
        let a2_q0 = other.q0_pow(a2);
        let gamma = &(&(&(a2 * &other.q0_pow(b2)) * b1) + &(&(&a2_q0 * a2) * g1)) + g2;
        Ok(Self::raw(&self.params, alpha, beta, gamma))
    }

    pub fn inverse(&self) -> Result<Self> {
        let a2 = self.alpha.inv()?;
        let b2 = -&(&a2 * &self.beta);
        let a2_q0 = self.q0_pow(&a2);
        let g2 = -&(&(&(&a2 * &self.q0_pow(&b2)) * &self.beta) + &(&(&a2_q0 * &a2) * &self.gamma));
        Ok(Self::raw(&self.params, a2, b2, g2))
    }

    pub fn to_repr(&self) -> AutomorphismRepr {
        AutomorphismRepr {
            alpha: self.alpha.coeffs().to_vec(),
            beta: self.beta.coeffs().to_vec(),
            gamma: self.gamma.coeffs().to_vec(),
        }
    }

    pub fn from_repr(c: &CurveParams, r: &AutomorphismRepr) -> Result<Self> {
        let fq = c.base_field()?;
        Self::new(c, fq.element(&r.alpha)?, fq.element(&r.beta)?, fq.element(&r.gamma)?)
    }
}

/// `apply(compose(a, b), pt) = apply(b, apply(a, pt))`.
pub fn aut_compose(a: &Automorphism, b: &Automorphism) -> Result<Automorphism> {
    a.then(b)
}

pub fn aut_inverse(a: &Automorphism) -> Result<Automorphism> {
    a.inverse()
}

/// Whether `(x, y)` satisfies `y^q − y = x^{q0}(x^q − x)`.
pub fn on_curve(c: &CurveParams, x: &FieldElement, y: &FieldElement) -> bool {
    let m = c.m() as usize;
    let lhs = &y.frobenius(m) - y;
    let rhs = &x.frobenius(c.t() as usize) * &(&x.frobenius(m) - x);
    lhs == rhs
}

/// Outcome of [`aut_group_audit`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub p: u64,
    pub t: u32,
    pub order: u128,
    pub g_order: u128,
    pub h_order: u128,
    /// The exhibited generator of `H`.
    pub h_generator: AutomorphismRepr,
    pub exhaustive_elements: bool,
    pub exhaustive_pairs: bool,
    pub exhaustive_triples: bool,
    pub elements_checked: u64,
    pub pairs_checked: u64,
    pub triples_checked: u64,
}

const EXHAUSTIVE_ELEMENTS: u128 = 100_000;
const EXHAUSTIVE_TUPLES: u128 = 1_000_000;
const SAMPLES: u64 = 10_000;

struct Group {
    c: CurveParams,
    fq: Arc<FiniteField>,
    q: u128,
}

impl Group {
    fn order(&self) -> u128 {
        self.q * self.q * (self.q - 1)
    }

    fn element(&self, idx: u128) -> Result<Automorphism> {
        let q = self.q;
        let alpha = self.fq.from_index(idx % (q - 1) + 1);
        let beta = self.fq.from_index((idx / (q - 1)) % q);
        let gamma = self.fq.from_index(idx / ((q - 1) * q));
        Ok(Automorphism::raw(&self.c, alpha, beta, gamma))
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Result<Automorphism> {
        self.element(rng.gen_range(0..self.order()))
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        internal(what())
    }
}

fn same_action(a: &Automorphism, b: &Automorphism, pts: &[(FieldElement, FieldElement)]) -> bool {
    pts.iter().all(|(x, y)| a.apply_base(x, y) == b.apply_base(x, y))
}

/// Checks the group structure `G ⋊ H` of order `q²(q − 1)` and its action.
///
/// Elements are enumerated when there are at most 10^5 of them, pairs and
/// triples when there are at most 10^6; otherwise 10^4 samples are drawn
/// from a generator seeded with `seed`.
pub fn aut_group_audit(c: &CurveParams, seed: u64) -> Result<AuditReport> {
    let fq = c.base_field()?;
    let q = c
        .q()
        .to_u128()
        .filter(|q| q.checked_mul(*q).is_some_and(|q2| q2.checked_mul(*q).is_some()))
        .ok_or_else(|| Error::Resource("q too large for the audit".into()))?;
    let grp = Group { c: *c, fq: fq.clone(), q };
    let order = grp.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = Automorphism::identity(c)?;

    let affine: Vec<(FieldElement, FieldElement)> = (0..q * q)
        .map(|i| (fq.from_index(i % q), fq.from_index(i / q)))
        .collect();
    check(affine.iter().all(|(x, y)| on_curve(c, x, y)), || "affine F_q-point fails the curve equation".into())?;
    let probes = [(fq.zero(), fq.zero()), (fq.one(), fq.zero())];

    let exhaustive_elements = order <= EXHAUSTIVE_ELEMENTS;
    let elements: Vec<Automorphism> = if exhaustive_elements {
        (0..order).map(|i| grp.element(i)).collect::<Result<_>>()?
    } else {
        (0..SAMPLES).map(|_| grp.random(&mut rng)).collect::<Result<_>>()?
    };

    let point_set: HashSet<&(FieldElement, FieldElement)> = affine.iter().collect();
    let mut images_of_probes = HashSet::new();
    for a in &elements {
        let inv = a.inverse()?;
        check(a.then(&inv)?.is_identity() && inv.then(a)?.is_identity(), || format!("inverse fails for {:?}", a.to_repr()))?;
        check(id.then(a)? == *a && a.then(&id)? == *a, || "identity is not neutral".into())?;
        let image: HashSet<(FieldElement, FieldElement)> = affine.iter().map(|(x, y)| a.apply_base(x, y)).collect();
        check(
            image.len() == affine.len() && image.iter().all(|pt| point_set.contains(pt)),
            || format!("{:?} does not permute the affine F_q-points", a.to_repr()),
        )?;
        let key: Vec<_> = probes.iter().map(|(x, y)| a.apply_base(x, y)).collect();
        images_of_probes.insert(key);
    }
    check(images_of_probes.len() == elements.iter().collect::<HashSet<_>>().len(), || "action is not faithful".into())?;

    let pair_count = order * order;
    let exhaustive_pairs = pair_count <= EXHAUSTIVE_TUPLES;
    let triple_count = pair_count * order;
    let exhaustive_triples = triple_count <= EXHAUSTIVE_TUPLES;
    let check_pair = |a: &Automorphism, b: &Automorphism| -> Result<Automorphism> {
        let ab = a.then(b)?;
        for (x, y) in affine.iter().take(16).chain(probes.iter()) {
            let (x1, y1) = a.apply_base(x, y);
            check(ab.apply_base(x, y) == b.apply_base(&x1, &y1), || {
                format!("composition disagrees with the action for {:?}, {:?}", a.to_repr(), b.to_repr())
            })?;
        }
        if a.in_g() && b.in_g() {
            check(ab.in_g(), || "G is not closed".into())?;
        }
        if a.in_h() && b.in_g() {
            let conj = a.inverse()?.then(b)?.then(a)?;
            check(conj.in_g(), || format!("conjugate of {:?} leaves G", b.to_repr()))?;
        }
        Ok(ab)
    };

    let (pairs_checked, triples_checked) = if exhaustive_pairs {
        // Cayley table over the enumerated group; associativity is then read off it
        let all: Vec<_> = (0..order).map(|i| grp.element(i)).collect::<Result<_>>()?;
        let index: HashMap<&Automorphism, usize> = all.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let k = all.len();
        let mut table = vec![0usize; k * k];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let ab = check_pair(a, b)?;
                table[i * k + j] = *index.get(&ab).ok_or_else(|| Error::Internal("composition leaves the group".into()))?;
            }
        }
        let mut triples = 0u64;
        if exhaustive_triples {
            for i in 0..k {
                for j in 0..k {
                    let ij = table[i * k + j];
                    for l in 0..k {
                        check(table[ij * k + l] == table[i * k + table[j * k + l]], || {
                            format!("composition is not associative at ({i}, {j}, {l})")
                        })?;
                        triples += 1;
                    }
                }
            }
        } else {
            for _ in 0..SAMPLES {
                let (i, j, l) = (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
                check(table[table[i * k + j] * k + l] == table[i * k + table[j * k + l]], || {
                    format!("composition is not associative at ({i}, {j}, {l})")
                })?;
                triples += 1;
            }
        }
        ((k * k) as u64, triples)
    } else {
        for _ in 0..SAMPLES {
            check_pair(&grp.random(&mut rng)?, &grp.random(&mut rng)?)?;
        }
        for _ in 0..SAMPLES {
            let (a, b, d) = (grp.random(&mut rng)?, grp.random(&mut rng)?, grp.random(&mut rng)?);
            let left = a.then(&b)?.then(&d)?;
            let right = a.then(&b.then(&d)?)?;
            check(left == right && same_action(&left, &right, &probes), || "composition is not associative".into())?;
        }
        (SAMPLES, SAMPLES)
    };

    let mut g_order = 0u128;
    for i in 0..q * q {
        let g = grp.element(i * (q - 1))?;
        check(g.in_g(), || "G enumeration produced α ≠ 1".into())?;
        g_order += 1;
    }
    let gen = Automorphism::new(c, fq.primitive_element(), fq.zero(), fq.zero())?;
    let mut h_order = 1u128;
    let mut cur = gen.clone();
    let mut seen_alpha = HashSet::new();
    while !cur.is_identity() {
        check(cur.in_h(), || "H is not closed".into())?;
        check(!cur.in_g(), || "G ∩ H contains a non-identity element".into())?;
        seen_alpha.insert(cur.alpha().clone());
        cur = cur.then(&gen)?;
        h_order += 1;
        if h_order > q {
            return internal("generator of H has order exceeding q − 1");
        }
    }
    check(h_order == q - 1 && seen_alpha.len() as u128 == q - 2, || format!("H has order {h_order}, expected {}", q - 1))?;
    check(g_order * h_order == order, || "|G|·|H| differs from the group order".into())?;

    Ok(AuditReport {
        p: c.p(),
        t: c.t(),
        order,
        g_order,
        h_order,
        h_generator: gen.to_repr(),
        exhaustive_elements,
        exhaustive_pairs,
        exhaustive_triples,
        elements_checked: elements.len() as u64,
        pairs_checked,
        triples_checked,
    })
}
