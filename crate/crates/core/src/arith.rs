//! Integer arithmetic helpers shared across the ring dictionary: trial
//! division primality, factorization, a plain Eratosthenes sieve, CRT, and
//! quadratic residue symbols.

use crate::error::{Error, Result};

/// Deterministic primality by trial division. Intended for machine-word
/// moduli and box bounds, not cryptographic sizes.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= n) {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization `n = prod p_i^{e_i}` with ascending primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All primes below `bound`, ascending.
pub fn primes_below(bound: u64) -> Vec<u64> {
    if bound <= 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for p in 2..n {
        if !composite[p] {
            out.push(p as u64);
            let mut m = p * p;
            while m < n {
                composite[m] = true;
                m += p;
            }
        }
    }
    out
}

/// Bit table of primality for 0..=limit.
pub struct PrimeTable {
    table: Vec<bool>,
}

impl PrimeTable {
    pub fn up_to(limit: u64) -> Self {
        let n = limit as usize + 1;
        let mut table = vec![true; n];
        table[0] = false;
        if n > 1 {
            table[1] = false;
        }
        let mut p = 2usize;
        while p * p < n {
            if table[p] {
                let mut m = p * p;
                while m < n {
                    table[m] = false;
                    m += p;
                }
            }
            p += 1;
        }
        PrimeTable { table }
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        self.table[n as usize]
    }

    /// Number of primes in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: u64, hi: u64) -> u64 {
        (lo + 1..=hi).filter(|&n| self.is_prime(n)).count() as u64
    }
}

/// `a^e mod m` without overflow for `m < 2^63`.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (a % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Modular inverse of `a` mod `m` for coprime arguments.
pub fn inv_mod(a: u64, m: u64) -> Result<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return Err(Error::precondition(format!("{a} is not invertible mod {m}")));
    }
    Ok(t.rem_euclid(m as i128) as u64)
}

/// Combine `x = r1 mod m1` and `x = r2 mod m2` for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<(u64, u64)> {
    let m = m1
        .checked_mul(m2)
        .ok_or_else(|| Error::precondition("CRT modulus overflow"))?;
    let inv = inv_mod(m1 % m2, m2)?;
    let diff = ((r2 + m2) - r1 % m2) % m2;
    let x = (r1 as u128 + (m1 as u128) * ((diff as u128 * inv as u128) % m2 as u128)) % m as u128;
    Ok((x as u64, m))
}

/// Legendre symbol (a/p) for odd prime p, values in {-1, 0, 1}.
pub fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    match pow_mod(r, (p - 1) / 2, p) {
        1 => 1,
        _ => -1,
    }
}

/// Smallest square root of `a` mod odd prime `p`, if one exists.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    // p is always desk-scale here (<= a tuple length), so scan.
    (0..p).find(|&r| r * r % p == a % p)
}
