//! Real quadratic rings of integers `Z[omega]` for the class-number-one
//! discriminant whitelist d in {2, 3, 5, 13}: exact norm and embedding
//! arithmetic, prime-element testing, box enumeration, and the bounded-gap
//! prime-pair search.
//!
//! The integral basis is `(1, sqrt(d))` for d = 2, 3 and `(1, (1+sqrt(d))/2)`
//! for d = 5, 13. Embedding comparisons never touch floating point: every
//! `x + y*sqrt(d) <= bound` question is settled by comparing squares of
//! integers after a sign analysis.

use std::cmp::Ordering;

use crate::arith;
use crate::error::{Error, Result};

pub const FIELD_WHITELIST: [u32; 4] = [2, 3, 5, 13];

/// One of the whitelisted real quadratic fields `Q(sqrt(d))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: u32,
}

impl QuadField {
    pub fn new(d: u32) -> Result<Self> {
        if !FIELD_WHITELIST.contains(&d) {
            return Err(Error::precondition(format!(
                "d={d} not in the class-number-one whitelist {FIELD_WHITELIST:?}"
            )));
        }
        Ok(QuadField { d })
    }

    #[inline]
    pub fn d(&self) -> u32 {
        self.d
    }

    /// True when the integral basis is `(1, (1+sqrt(d))/2)`.
    #[inline]
    pub fn half_basis(&self) -> bool {
        self.d % 4 == 1
    }

    pub fn element(&self, x: i64, y: i64) -> QuadInt {
        QuadInt { d: self.d, x, y }
    }

    pub fn zero(&self) -> QuadInt {
        self.element(0, 0)
    }

    pub fn one(&self) -> QuadInt {
        self.element(1, 0)
    }

    /// The fundamental unit, shipped as a constant and checked to have norm
    /// of absolute value one in the tests.
    pub fn fundamental_unit(&self) -> QuadInt {
        match self.d {
            2 => self.element(1, 1),  // 1 + sqrt(2)
            3 => self.element(2, 1),  // 2 + sqrt(3)
            5 => self.element(0, 1),  // (1 + sqrt(5)) / 2
            13 => self.element(1, 1), // (3 + sqrt(13)) / 2
            _ => unreachable!(),
        }
    }

    /// How the rational prime `p` decomposes in this field.
    pub fn splitting(&self, p: u64) -> Splitting {
        let d = self.d as u64;
        if p == 2 {
            return if self.half_basis() {
                // d = 5, 13 are both 5 mod 8, so 2 is inert
                match self.d % 8 {
                    1 => Splitting::Split { root: 1 },
                    _ => Splitting::Inert,
                }
            } else {
                // disc = 4d is even
                Splitting::Ramified { root: self.d as u64 % 2 }
            };
        }
        if d % p == 0 {
            return Splitting::Ramified { root: 0 };
        }
        match arith::legendre(d as i64, p) {
            1 => {
                let root = arith::sqrt_mod(d % p, p).expect("residue has a root");
                Splitting::Split { root }
            }
            _ => Splitting::Inert,
        }
    }

    /// Prime ideals of norm at most `bound`, ascending by (norm, residue).
    pub fn prime_ideals_up_to(&self, bound: u64) -> Vec<QuadPrimeIdeal> {
        let mut out = Vec::new();
        for p in arith::primes_below(bound + 1) {
            match self.splitting(p) {
                Splitting::Split { root } => {
                    out.push(QuadPrimeIdeal { field: *self, p, kind: IdealKind::Split { root } });
                    out.push(QuadPrimeIdeal {
                        field: *self,
                        p,
                        kind: IdealKind::Split { root: (p - root) % p },
                    });
                }
                Splitting::Ramified { root } => {
                    out.push(QuadPrimeIdeal { field: *self, p, kind: IdealKind::Ramified { root } });
                }
                Splitting::Inert => {
                    if p.checked_mul(p).map_or(false, |n| n <= bound) {
                        out.push(QuadPrimeIdeal { field: *self, p, kind: IdealKind::Inert });
                    }
                }
            }
        }
        out.sort_by_key(|i| (i.norm(), i.residue_sort_key()));
        out
    }
}

/// Decomposition type of a rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split { root: u64 },
    Inert,
    Ramified { root: u64 },
}

/// A prime ideal described by `(p, type, root)`, where `root` is a root of
/// the minimal polynomial of omega mod p for the split and ramified cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadPrimeIdeal {
    pub field: QuadField,
    pub p: u64,
    pub kind: IdealKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    Split { root: u64 },
    Inert,
    Ramified { root: u64 },
}

impl QuadPrimeIdeal {
    pub fn norm(&self) -> u64 {
        match self.kind {
            IdealKind::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    fn residue_sort_key(&self) -> u64 {
        match self.kind {
            IdealKind::Split { root } | IdealKind::Ramified { root } => root,
            IdealKind::Inert => 0,
        }
    }

    /// Image of omega in the residue field F_p (degree-one ideals only).
    fn omega_image(&self) -> Option<u64> {
        let root = match self.kind {
            IdealKind::Split { root } | IdealKind::Ramified { root } => root,
            IdealKind::Inert => return None,
        };
        if self.field.half_basis() {
            // omega = (1 + sqrt(d))/2 -> (1 + root) / 2 mod p; p is odd here
            let inv2 = arith::inv_mod(2, self.p).expect("odd p");
            Some((1 + root) % self.p * inv2 % self.p)
        } else {
            Some(root)
        }
    }

    /// Residue of an element, encoded as an index in `0..norm`. Degree-one
    /// ideals use `x + y*omega_image mod p`; inert ideals use the pair
    /// `(x mod p, y mod p)` flattened as `x + p*y`.
    pub fn residue_index(&self, a: &QuadInt) -> u64 {
        let p = self.p as i64;
        match self.omega_image() {
            Some(w) => (a.x.rem_euclid(p) + (w as i64) * a.y.rem_euclid(p)).rem_euclid(p) as u64,
            None => {
                let xr = a.x.rem_euclid(p) as u64;
                let yr = a.y.rem_euclid(p) as u64;
                xr + self.p * yr
            }
        }
    }
}

/// An element `x + y*omega` of the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    d: u32,
    pub x: i64,
    pub y: i64,
}

impl QuadInt {
    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Exact field norm `sigma_1(a) * sigma_2(a)`.
    pub fn norm(&self) -> i64 {
        let (x, y, d) = (self.x as i128, self.y as i128, self.d as i128);
        let n = if self.d % 4 == 1 {
            x * x + x * y + y * y * (1 - d) / 4
        } else {
            x * x - d * y * y
        };
        i64::try_from(n).expect("norm overflow")
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs() == 1
    }

    /// Galois conjugate.
    pub fn conj(&self) -> QuadInt {
        if self.d % 4 == 1 {
            // conj(omega) = 1 - omega
            QuadInt { d: self.d, x: self.x + self.y, y: -self.y }
        } else {
            QuadInt { d: self.d, x: self.x, y: -self.y }
        }
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        assert_eq!(self.d, o.d);
        QuadInt { d: self.d, x: self.x + o.x, y: self.y + o.y }
    }

    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        assert_eq!(self.d, o.d);
        QuadInt { d: self.d, x: self.x - o.x, y: self.y - o.y }
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt { d: self.d, x: -self.x, y: -self.y }
    }

    pub fn mul(&self, o: &QuadInt) -> QuadInt {
        assert_eq!(self.d, o.d);
        let (x1, y1, x2, y2) = (self.x as i128, self.y as i128, o.x as i128, o.y as i128);
        let (x, y) = if self.d % 4 == 1 {
            // omega^2 = omega + (d-1)/4
            let c = (self.d as i128 - 1) / 4;
            (x1 * x2 + y1 * y2 * c, x1 * y2 + y1 * x2 + y1 * y2)
        } else {
            (x1 * x2 + self.d as i128 * y1 * y2, x1 * y2 + y1 * x2)
        };
        QuadInt {
            d: self.d,
            x: i64::try_from(x).expect("coordinate overflow"),
            y: i64::try_from(y).expect("coordinate overflow"),
        }
    }

    /// The two embeddings as scaled integer pairs: returns `(u, v, s)` pairs
    /// with `sigma = (u + v*sqrt(d)) / s`.
    fn embeddings(&self) -> [(i64, i64, i64); 2] {
        if self.d % 4 == 1 {
            let u = 2 * self.x + self.y;
            [(u, self.y, 2), (u, -self.y, 2)]
        } else {
            [(self.x, self.y, 1), (self.x, -self.y, 1)]
        }
    }

    /// Exact comparison of every embedding against the window `(lo, hi]`.
    pub fn embeddings_in(&self, lo: i64, hi: i64) -> bool {
        self.embeddings().iter().all(|&(u, v, s)| {
            // lo < (u + v sqrt d)/s <= hi
            cmp_sqrt(v, self.d, s * lo - u) == Ordering::Greater
                && cmp_sqrt(v, self.d, s * hi - u) != Ordering::Greater
        })
    }

    /// Exact check that `|sigma(self)| <= bound` at both embeddings.
    pub fn embeddings_bounded_by(&self, bound: i64) -> bool {
        self.embeddings().iter().all(|&(u, v, s)| {
            cmp_sqrt(v, self.d, s * bound - u) != Ordering::Greater
                && cmp_sqrt(v, self.d, -s * bound - u) != Ordering::Less
        })
    }

    /// Is `self` in the open-closed box `A_0(n)` (every embedding in (0, n])?
    pub fn in_box0(&self, n: i64) -> bool {
        self.embeddings_in(0, n)
    }
}

/// Exact ordering of `a*sqrt(d)` against the integer `b`. Because `sqrt(d)`
/// is irrational, equality only arises at `a = b = 0`.
fn cmp_sqrt(a: i64, d: u32, b: i64) -> Ordering {
    if a == 0 {
        return 0.cmp(&b);
    }
    if a > 0 && b <= 0 {
        return Ordering::Greater;
    }
    if a < 0 && b >= 0 {
        return Ordering::Less;
    }
    let lhs = a as i128 * a as i128 * d as i128;
    let rhs = b as i128 * b as i128;
    if a > 0 {
        lhs.cmp(&rhs)
    } else {
        rhs.cmp(&lhs)
    }
}

/// Enumerates `A_0(n)`: all elements with both embeddings in `(0, n]`,
/// ordered by coordinates `(x, y)`.
pub fn enumerate_box0(field: QuadField, n: i64, budget: u64) -> Result<Vec<QuadInt>> {
    if n < 1 {
        return Ok(Vec::new());
    }
    // |sigma_1 - sigma_2| <= n bounds |y|: (2 or 1) * |y| * sqrt(d) <= n
    let scale = if field.half_basis() { 1 } else { 2 };
    let ymax = {
        let mut y = 0i64;
        while cmp_sqrt(scale * (y + 1), field.d(), n) != Ordering::Greater {
            y += 1;
        }
        y
    };
    let xs = x_range(field, n);
    let width = (xs.end() - xs.start() + 1) as u64;
    let est = width * (2 * ymax as u64 + 1);
    if est > budget {
        return Err(Error::budget(format!(
            "quadratic box scan of about {est} lattice points exceeds budget {budget}"
        )));
    }
    let mut out = Vec::new();
    for x in xs {
        for y in -ymax..=ymax {
            let a = field.element(x, y);
            if a.in_box0(n) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn x_range(field: QuadField, n: i64) -> std::ops::RangeInclusive<i64> {
    if field.half_basis() {
        // trace = 2x + y in (0, 2n], |y| <= n
        (-n)..=(n + n)
    } else {
        // trace = 2x in (0, 2n]
        1..=n
    }
}

/// True iff the element generates a prime ideal: its norm is plus or minus a
/// rational prime, or plus or minus the square of an inert prime (in which
/// case the element is an associate of that prime).
pub fn is_prime_element(a: &QuadInt) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::precondition("zero is not examined for primality"));
    }
    if a.is_unit() {
        return Err(Error::precondition("units are not examined for primality"));
    }
    let n = a.norm().unsigned_abs();
    if arith::is_prime(n) {
        return Ok(true);
    }
    // p^2 with p inert: the only ideal of norm p^2 is (p)
    let p = (n as f64).sqrt() as u64;
    for cand in [p.saturating_sub(1), p, p + 1] {
        if cand >= 2 && cand * cand == n && arith::is_prime(cand) {
            if matches!(a.field().splitting(cand), Splitting::Inert) {
                debug_assert!(a.x % cand as i64 == 0 && a.y % cand as i64 == 0);
                return Ok(true);
            }
            return Ok(false);
        }
    }
    Ok(false)
}

/// All prime elements of `A_0(box_bound)`, in coordinate order.
pub fn primes_in_box0(field: QuadField, box_bound: i64, budget: u64) -> Result<Vec<QuadInt>> {
    let mut out = Vec::new();
    for a in enumerate_box0(field, box_bound, budget)? {
        if !a.is_zero() && !a.is_unit() && is_prime_element(&a)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// A pair of prime elements whose difference is small at every embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePair {
    pub first: QuadInt,
    pub second: QuadInt,
}

/// Searches `A_0(box_bound)` for pairs of distinct prime elements with
/// `|sigma(a1 - a2)| <= gap_bound` at both embeddings.
///
/// Pairs are emitted grouped by the later element in coordinate order, so
/// pairs of small elements come first; enumeration stops at `cap` pairs and
/// the truncation is reported.
pub fn prime_pair_search(
    field: QuadField,
    gap_bound: i64,
    box_bound: i64,
    cap: usize,
    budget: u64,
) -> Result<(Vec<PrimePair>, bool)> {
    if gap_bound < 0 {
        return Err(Error::precondition("gap bound must be nonnegative"));
    }
    let primes = primes_in_box0(field, box_bound, budget)?;
    let mut pairs = Vec::new();
    for j in 1..primes.len() {
        for i in 0..j {
            let diff = primes[j].sub(&primes[i]);
            if diff.embeddings_bounded_by(gap_bound) {
                pairs.push(PrimePair { first: primes[i], second: primes[j] });
                if pairs.len() >= cap {
                    return Ok((pairs, true));
                }
            }
        }
    }
    Ok((pairs, false))
}
