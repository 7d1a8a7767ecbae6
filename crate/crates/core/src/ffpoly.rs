//! Arithmetic, irreducibility testing, and enumeration for polynomials over
//! prime fields `F_q`.
//!
//! Coefficients are stored ascending by degree with no trailing zeros, so the
//! zero polynomial is the empty coefficient vector. Only prime `q` is
//! supported; there is no extension-field arithmetic and no factorization
//! here (the ring dictionary factors its own moduli by trial division).

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// A prime field `F_q`, with `q` verified prime at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !arith::is_prime(q) {
            return Err(Error::precondition(format!("{q} is not prime")));
        }
        Ok(PrimeField { q })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The zero polynomial over this field.
    pub fn zero(&self) -> Poly {
        Poly { q: self.q, coeffs: Vec::new() }
    }

    pub fn constant(&self, c: u64) -> Poly {
        Poly::new(*self, vec![c])
    }

    /// The monomial `c * t^deg`.
    pub fn monomial(&self, c: u64, deg: usize) -> Poly {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Poly::new(*self, coeffs)
    }

    /// `t` itself.
    pub fn t(&self) -> Poly {
        self.monomial(1, 1)
    }
}

/// A polynomial over a prime field, coefficients ascending by degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    q: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial, reducing every coefficient mod q and trimming
    /// trailing zeros.
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= field.q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { q: field.q, coeffs }
    }

    /// Parses the comma-separated ascending-degree coefficient format,
    /// e.g. `"1,0,1"` is `t^2 + 1`.
    pub fn parse(field: PrimeField, s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { q: self.q }
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Norm `q^deg` of a nonzero polynomial.
    pub fn norm(&self) -> Result<u64> {
        let d = self
            .degree()
            .ok_or_else(|| Error::precondition("norm of zero polynomial"))?;
        self.q
            .checked_pow(d as u32)
            .ok_or_else(|| Error::precondition("norm overflows u64"))
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch { left: self.q, right: other.q });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.q)
            .collect();
        Ok(Poly::new(self.field(), coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + self.q - other.coeff(i)) % self.q)
            .collect();
        Ok(Poly::new(self.field(), coeffs))
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| (self.q - c) % self.q).collect();
        Poly::new(self.field(), coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field().zero());
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let idx = i + j;
                coeffs[idx] = (coeffs[idx] + (a as u128 * b as u128 % self.q as u128) as u64)
                    % self.q;
            }
        }
        Ok(Poly::new(self.field(), coeffs))
    }

    pub fn mul_scalar(&self, c: u64) -> Poly {
        let c = c % self.q;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| (a as u128 * c as u128 % self.q as u128) as u64)
            .collect();
        Poly::new(self.field(), coeffs)
    }

    /// Remainder of `self` modulo `modulus`, degree strictly below
    /// `deg(modulus)`.
    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        self.check_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let md = modulus.degree().unwrap();
        let lead_inv = arith::inv_mod(modulus.leading(), self.q)?;
        let mut rem = self.coeffs.clone();
        while rem.len() > md {
            let i = rem.len() - 1;
            let c = rem[i];
            if c != 0 {
                let scale = (c as u128 * lead_inv as u128 % self.q as u128) as u64;
                for (j, &mc) in modulus.coeffs.iter().enumerate() {
                    let idx = i - md + j;
                    let sub = (scale as u128 * mc as u128 % self.q as u128) as u64;
                    rem[idx] = (rem[idx] + self.q - sub) % self.q;
                }
            }
            rem.pop();
        }
        Ok(Poly::new(self.field(), rem))
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = arith::inv_mod(divisor.leading(), self.q)?;
        let mut rem = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(dd);
        let mut quot = vec![0u64; qlen];
        while rem.len() > dd {
            let i = rem.len() - 1;
            let c = rem[i];
            if c != 0 {
                let scale = (c as u128 * lead_inv as u128 % self.q as u128) as u64;
                quot[i - dd] = scale;
                for (j, &mc) in divisor.coeffs.iter().enumerate() {
                    let idx = i - dd + j;
                    let sub = (scale as u128 * mc as u128 % self.q as u128) as u64;
                    rem[idx] = (rem[idx] + self.q - sub) % self.q;
                }
            }
            rem.pop();
        }
        Ok((Poly::new(self.field(), quot), Poly::new(self.field(), rem)))
    }

    /// Does `self` divide `other` exactly?
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        self.check_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let mut base = self.rem(modulus)?;
        let mut acc = self.field().constant(1).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            base = base.mul(&base)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        // normalize monic
        if !a.is_zero() {
            let inv = arith::inv_mod(a.leading(), self.q)?;
            a = a.mul_scalar(inv);
        }
        Ok(a)
    }

    /// Evaluation at a field element.
    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.q;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = ((acc as u128 * x as u128 + c as u128) % self.q as u128) as u64;
        }
        acc
    }

    /// Substitutes `t -> c * t`.
    pub fn compose_scale(&self, c: u64) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut pw = 1u64;
        for &a in &self.coeffs {
            coeffs.push((a as u128 * pw as u128 % self.q as u128) as u64);
            pw = (pw as u128 * c as u128 % self.q as u128) as u64;
        }
        Poly::new(self.field(), coeffs)
    }
}

impl fmt::Display for Poly {
    /// The external text format: comma-separated coefficients ascending by
    /// degree, `"0"` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod_poly(a: &Poly, m: &Poly) -> Result<Poly> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let field = a.field();
    let (mut r0, mut r1) = (m.clone(), a.rem(m)?);
    let (mut t0, mut t1) = (field.zero(), field.constant(1));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let t = t0.sub(&q.mul(&t1)?)?;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.degree() != Some(0) {
        return Err(Error::precondition(format!("{a} is not invertible mod {m}")));
    }
    // scale so the gcd reads exactly 1
    let scale = arith::inv_mod(r0.leading(), a.q())?;
    Ok(t0.mul_scalar(scale).rem(m)?)
}

/// Deterministic irreducibility test: for each `i <= deg(f)/2`, a factor of
/// degree `i` exists iff `gcd(f, t^{q^i} - t)` is nontrivial, because
/// `t^{q^i} - t` is the product of all monic irreducibles of degree dividing
/// `i`. Constants are not irreducible; degree 1 always is.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let deg = match f.degree() {
        None => return Err(Error::precondition("irreducibility of the zero polynomial")),
        Some(d) => d,
    };
    if deg == 0 {
        return Ok(false);
    }
    if deg == 1 {
        return Ok(true);
    }
    let q = f.q();
    let t = f.field().t();
    // h runs through t^{q^i} mod f
    let mut h = t.pow_mod(q, f)?;
    for _ in 1..=deg / 2 {
        let diff = h.sub(&t)?;
        let g = diff.gcd(f)?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
        h = h.pow_mod(q, f)?;
    }
    Ok(true)
}

/// Exact count of monic irreducibles of degree `n` over `F_q` via the
/// Moebius necklace formula `(1/n) sum_{d|n} mu(d) q^{n/d}`.
pub fn count_irreducibles(q: u64, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::precondition("degree must be positive"));
    }
    let mut sum: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            let mu = moebius_u32(d);
            if mu != 0 {
                let term = (q as i128).pow(n / d);
                sum += mu as i128 * term;
            }
        }
    }
    debug_assert!(sum >= 0 && sum % n as i128 == 0);
    Ok((sum / n as i128) as u64)
}

fn moebius_u32(n: u32) -> i32 {
    let fac = arith::factor(n as u64);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Iterator over the monic polynomials of degree `n` over `F_q`, in
/// lexicographic coefficient order: index `i` in `0..q^n` maps to the
/// polynomial whose ascending coefficients are the base-q digits of `i`
/// (constant term least significant).
pub struct MonicIter {
    field: PrimeField,
    n: u32,
    next: u64,
    total: u64,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.total {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.n as usize + 1);
        let mut idx = self.next;
        for _ in 0..self.n {
            coeffs.push(idx % self.field.q);
            idx /= self.field.q;
        }
        coeffs.push(1);
        self.next += 1;
        Some(Poly { q: self.field.q, coeffs })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

/// The monic polynomial of degree `n` at position `index` of the
/// enumeration order.
pub fn monic_from_index(field: PrimeField, n: u32, index: u64) -> Poly {
    let q = field.q();
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    let mut idx = index;
    for _ in 0..n {
        coeffs.push(idx % q);
        idx /= q;
    }
    coeffs.push(1);
    Poly::new(field, coeffs)
}

/// Enumerates the `q^n` monic polynomials of degree `n`, failing upfront if
/// that exceeds `budget`.
pub fn enumerate_monic(q: u64, n: u32, budget: u64) -> Result<MonicIter> {
    let field = PrimeField::new(q)?;
    let total = q
        .checked_pow(n)
        .ok_or_else(|| Error::budget(format!("q^n overflows: q={q}, n={n}")))?;
    if total > budget {
        return Err(Error::budget(format!(
            "enumerating {total} monic polynomials exceeds budget {budget}"
        )));
    }
    Ok(MonicIter { field, n, next: 0, total })
}

/// The monic irreducibles of degree `n`, in enumeration order.
pub fn enumerate_irreducibles(q: u64, n: u32, budget: u64) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for f in enumerate_monic(q, n, budget)? {
        if is_irreducible(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}
