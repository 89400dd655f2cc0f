//! Exact value counting for quadratic forms over `F_p`.
//!
//! A map `f : F_p^D → F_p` with `f(λx) = λ²f(x)` and bilinear polarization is
//! determined by `A_j = f(e_j)` and `P_ij = f(e_i + e_j) − A_i − A_j`. The
//! value distribution `#{x : f(x) = v}` is found by splitting `x` into `r`
//! low coordinates and `D − r` high ones:
//!
//! `f(low + high) = f(low) + f(high) + Σ_{i<r} low_i·h_i`, `h_i = Σ_j P_ij high_j`,
//!
//! so a table indexed by `(h, v)` absorbs every low part at once. The high
//! part is walked in a modular Gray code, where each step adds 1 to a single
//! coordinate and `f(high)` and `h` update in `O(D)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gf::{FieldElement, FiniteField};
use crate::error::{internal, Result};

/// Fields up to this size are enumerated element by element.
pub const NAIVE_LIMIT: u128 = 1 << 12;

/// Largest table (`p^{r+1}` counters) the splitter will allocate.
const MAX_TABLE: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    p: u64,
    dim: usize,
    diag: Vec<u32>,
    // row-major, polar[i*dim + j], with polar[j*dim + j] = 2·diag[j]
    polar: Vec<u32>,
}

impl QuadraticForm {
    /// Reads off the coefficients of `f` from `O(D²)` evaluations.
    ///
    /// `f` must be a quadratic form; use [`QuadraticForm::verify`] to
    /// confirm the expansion on random inputs.
    pub fn from_fn(p: u64, dim: usize, f: impl Fn(&[u64]) -> u64) -> Self {
        let unit = |i: usize, j: usize| {
            let mut x = vec![0u64; dim];
            x[i] = 1;
            x[j] = 1;
            x
        };
        let diag: Vec<u64> = (0..dim).map(|j| f(&unit(j, j)) % p).collect();
        let mut polar = vec![0u32; dim * dim];
        for i in 0..dim {
            polar[i * dim + i] = (2 * diag[i] % p) as u32;
            for j in i + 1..dim {
                let v = (f(&unit(i, j)) % p + 2 * p - diag[i] - diag[j]) % p;
                polar[i * dim + j] = v as u32;
                polar[j * dim + i] = v as u32;
            }
        }
        Self {
            p,
            dim,
            diag: diag.into_iter().map(|v| v as u32).collect(),
            polar,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for i in 0..self.dim {
            let xi = x[i] % p;
            if xi == 0 {
                continue;
            }
            let mut row = self.diag[i] as u64 * xi % p;
            for j in i + 1..self.dim {
                row += self.polar[i * self.dim + j] as u64 * (x[j] % p) % p;
            }
            acc = (acc + row % p * xi) % p;
        }
        acc
    }

    /// Compares the expansion against `f` at zero and at `samples` random points.
    pub fn verify(&self, f: impl Fn(&[u64]) -> u64, samples: usize, rng: &mut impl Rng) -> bool {
        let zero = vec![0u64; self.dim];
        if f(&zero) % self.p != 0 {
            return false;
        }
        (0..samples).all(|_| {
            let x: Vec<u64> = (0..self.dim).map(|_| rng.gen_range(0..self.p)).collect();
            self.eval(&x) == f(&x) % self.p
        })
    }

    /// `#{x : f(x) = v}` for each `v` in `0..p`, by direct enumeration.
    pub fn value_distribution_naive(&self) -> Vec<u128> {
        let p = self.p;
        let mut dist = vec![0u128; p as usize];
        let mut x = vec![0u64; self.dim];
        loop {
            dist[self.eval(&x) as usize] += 1;
            let mut i = 0;
            loop {
                if i == self.dim {
                    return dist;
                }
                x[i] += 1;
                if x[i] < p {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    /// `#{x : f(x) = v}` for each `v` in `0..p`, by split enumeration.
    pub fn value_distribution(&self) -> Vec<u128> {
        let r = self.choose_split();
        let table = self.low_table(r);
        let p = self.p as u128;
        let high = (self.dim - r) as u32;
        let total = p.pow(high) as u64;
        let chunks = total.div_ceil(1 << 16).clamp(1, 4096);
        let chunk = total.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * chunk;
                let end = (start + chunk).min(total);
                if start >= end {
                    vec![0u64; self.p as usize]
                } else {
                    self.scan(r, &table, start, end)
                }
            })
            .reduce(
                || vec![0u64; self.p as usize],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
            .into_iter()
            .map(u128::from)
            .collect()
    }

    fn choose_split(&self) -> usize {
        let p = self.p as u128;
        let d = self.dim;
        (0..=d)
            .filter(|&r| p.checked_pow(r as u32 + 1).is_some_and(|t| t <= MAX_TABLE))
            .min_by_key(|&r| {
                let build = p.saturating_pow(2 * r as u32);
                let walk = p
                    .saturating_pow((d - r) as u32)
                    .saturating_mul((d + r) as u128 + p);
                build.saturating_add(walk)
            })
            .unwrap_or(0)
    }

    // table[h·p + v] = #{low ∈ F_p^r : f(low) + Σ low_i h_i = v}, h in base p
    fn low_table(&self, r: usize) -> Vec<u32> {
        let p = self.p as usize;
        let hsize = p.pow(r as u32);
        let mut table = vec![0u32; hsize * p];
        let mut low = vec![0u64; self.dim];
        let mut hd = vec![0usize; r];
        for _ in 0..hsize {
            let mut val = self.eval(&low) as usize;
            hd.iter_mut().for_each(|h| *h = 0);
            for h in 0..hsize {
                table[h * p + val] += 1;
                let mut i = 0;
                while i < r {
                    hd[i] += 1;
                    val = (val + low[i] as usize) % p;
                    if hd[i] < p {
                        break;
                    }
                    hd[i] = 0;
                    i += 1;
                }
            }
            let mut i = 0;
            while i < r {
                low[i] += 1;
                if low[i] < p as u64 {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
        table
    }

    fn scan(&self, r: usize, table: &[u32], start: u64, end: u64) -> Vec<u64> {
        let p = self.p;
        let pu = p as usize;
        let d = self.dim;
        let high = d - r;
        // Gray word of `start`: x_j = d_j − d_{j+1}
        let mut digits = vec![0u64; high + 1];
        let mut k = start;
        for dj in digits.iter_mut().take(high) {
            *dj = k % p;
            k /= p;
        }
        let mut x = vec![0u64; d];
        for j in 0..high {
            x[r + j] = (digits[j] + p - digits[j + 1]) % p;
        }
        let mut fh = self.eval(&x) as u32;
        let mut g: Vec<u32> = (0..d)
            .map(|i| {
                (0..d).fold(0u64, |acc, j| (acc + self.polar[i * d + j] as u64 * x[j]) % p) as u32
            })
            .collect();
        let p32 = p as u32;
        let mut acc = vec![0u64; pu];
        let mut k = start;
        loop {
            let h = g[..r].iter().rev().fold(0usize, |a, &v| a * pu + v as usize);
            let row = &table[h * pu..(h + 1) * pu];
            for (v, &cnt) in row.iter().enumerate() {
                acc[(v + fh as usize) % pu] += cnt as u64;
            }
            k += 1;
            if k == end {
                break;
            }
            let mut s = 0;
            let mut kk = k;
            while kk % p == 0 {
                kk /= p;
                s += 1;
            }
            let j = r + s;
            fh = (fh + self.diag[j] + g[j]) % p32;
            let prow = &self.polar[j * d..(j + 1) * d];
            for (gi, &pij) in g.iter_mut().zip(prow) {
                let v = *gi + pij;
                *gi = if v >= p32 { v - p32 } else { v };
            }
        }
        acc
    }
}

/// `#{x ∈ F : Tr_{F/F_p}(f(x)) = 0}` for a map `f` whose absolute trace is an
/// `F_p`-quadratic form in the coordinates of `x`.
///
/// Small fields are enumerated directly. Larger ones go through
/// [`QuadraticForm`], after its expansion has been checked against `f` on
/// random points.
pub fn count_trace_zeros(
    field: &Arc<FiniteField>,
    f: impl Fn(&FieldElement) -> FieldElement,
) -> Result<u128> {
    let order = field.order().unwrap_or(u128::MAX);
    if order <= NAIVE_LIMIT {
        return Ok(field
            .elements()
            .filter(|x| f(x).absolute_trace() == 0)
            .count() as u128);
    }
    let q = trace_form(field, &f)?;
    Ok(q.value_distribution()[0])
}

/// The quadratic form `x ↦ Tr(f(x))` on the coordinates of `field`.
pub fn trace_form(
    field: &Arc<FiniteField>,
    f: impl Fn(&FieldElement) -> FieldElement,
) -> Result<QuadraticForm> {
    let p = field.characteristic();
    let d = field.degree();
    let g = |x: &[u64]| {
        f(&field.element(x).expect("coordinate vector of the right length")).absolute_trace()
    };
    let q = QuadraticForm::from_fn(p, d, g);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (p << 16) ^ d as u64);
    if !q.verify(g, 64, &mut rng) {
        return internal("trace map is not a quadratic form");
    }
    Ok(q)
}
