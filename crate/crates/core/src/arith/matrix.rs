use std::ops::Mul;

use super::{Poly, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact scalar ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated low coefficients in the last column.
    pub fn companion(f: &Poly<S>) -> Result<Self> {
        let n = f.degree().filter(|&d| d > 0).ok_or_else(|| {
            Error::Dimension("companion matrix needs a polynomial of positive degree".into())
        })?;
        if !f.is_monic() {
            return Err(Error::Parameter("companion matrix needs a monic polynomial".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| {
            if j == n - 1 {
                -f.coeff(i)
            } else if i == j + 1 {
                S::one()
            } else {
                S::zero()
            }
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `det(T·I − self)` by the Faddeev–LeVerrier recursion.
    ///
    /// Only ring operations plus exact division by the step index are used,
    /// so the result is exact over `Q` and, for integer matrices, over `Z`.
    pub fn charpoly(&self) -> Result<Poly<S>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        // M_0 = 0, M_k = A·M_{k-1} + c_{n-k+1}·I, c_{n-k} = -tr(A·M_k)/k
        let mut m = Self::from_fn(n, n, |_, _| S::zero());
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                let e = &mut next.entries[i * n + i];
                *e = e.clone() + coeffs[n - k + 1].clone();
            }
            m = next;
            let tr = (self * &m).trace();
            let kk = S::from_usize(k).expect("scalar from usize");
            coeffs[n - k] = -tr
                .div_exact(&kk)
                .ok_or_else(|| Error::Divisibility(format!("trace not divisible by {k}")))?;
        }
        Ok(Poly::new(coeffs))
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut entries = vec![S::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let e = &mut entries[i * rhs.cols + j];
                    *e = e.clone() + a.clone() * rhs.entries[k * rhs.cols + j].clone();
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::{IntPoly, RatMat, RatPoly};

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Cofactor-expansion determinant, used as the charpoly oracle.
    fn det(m: &[Vec<BigRational>]) -> BigRational {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = r(0);
        for j in 0..n {
            let minor: Vec<Vec<BigRational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = m[0][j].clone() * det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn identity_and_scalar() {
        let id: RatMat = Matrix::identity(2);
        assert_eq!(id.charpoly().unwrap(), IntPoly::from_i64s(&[1, -2, 1]).to_rat_poly());
        let five = RatMat::new(1, 1, vec![r(5)]).unwrap();
        assert_eq!(five.charpoly().unwrap(), IntPoly::from_i64s(&[-5, 1]).to_rat_poly());
    }

    #[test]
    fn companion_of_phi3() {
        let f = IntPoly::from_i64s(&[1, 1, 1]).to_rat_poly();
        let c = RatMat::companion(&f).unwrap();
        assert_eq!(c.charpoly().unwrap(), f);
    }

    #[test]
    fn non_square_rejected() {
        let m = RatMat::new(1, 2, vec![r(1), r(2)]).unwrap();
        assert!(matches!(m.charpoly(), Err(Error::Dimension(_))));
        assert!(RatMat::new(2, 2, vec![r(1)]).is_err());
    }

    #[test]
    fn integer_matrices_stay_integral() {
        let m = Matrix::<BigInt>::new(2, 2, vec![2.into(), 1.into(), 7.into(), (-3).into()]).unwrap();
        // T^2 + T - 13
        assert_eq!(m.charpoly().unwrap(), IntPoly::from_i64s(&[-13, 1, 1]));
    }

    proptest! {
        #[test]
        fn companion_roundtrip(cs in proptest::collection::vec((-20i64..20, 1i64..5), 1..7)) {
            let mut coeffs: Vec<BigRational> = cs.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
            coeffs.push(r(1));
            let f = RatPoly::new(coeffs);
            prop_assert_eq!(RatMat::companion(&f).unwrap().charpoly().unwrap(), f);
        }

        #[test]
        fn charpoly_matches_cofactor_determinant(
            n in 1usize..5,
            vals in proptest::collection::vec(-6i64..6, 16),
            t in -4i64..4,
        ) {
            let m = RatMat::from_fn(n, n, |i, j| r(vals[i * 4 + j]));
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| (0..n).map(|j| {
                    let diag = if i == j { r(t) } else { r(0) };
                    diag - m.get(i, j).clone()
                }).collect())
                .collect();
            prop_assert_eq!(m.charpoly().unwrap().eval(&r(t)), det(&rows));
        }
    }
}
