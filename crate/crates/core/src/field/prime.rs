use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Trial-division primality, fine for the parameter sizes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(k/p)` by Euler's criterion; `p` must be an odd prime.
pub fn legendre(k: &BigInt, p: u64) -> i8 {
    let r = k
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64");
    legendre_u64(r, p)
}

pub fn legendre_i64(k: i64, p: u64) -> i8 {
    legendre(&BigInt::from(k), p)
}

pub(crate) fn legendre_u64(k: u64, p: u64) -> i8 {
    let r = k % p;
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Prime factorization of a machine integer by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
