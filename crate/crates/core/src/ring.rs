//! The uniform ring dictionary: the three coefficient rings, their boxes,
//! moduli with norm / phi / Moebius, primes, and the zeta residue.
//!
//! Moduli carry their prime factorization from construction, so the three
//! multiplicative functions are read off directly. Real quadratic moduli are
//! restricted to squarefree products of prime ideals described by
//! `(p, type, root)`; that is all the admissibility machinery needs.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::ffpoly::{self, Poly, PrimeField};
use crate::quadratic::{enumerate_box0, QuadField, QuadInt, QuadPrimeIdeal};

/// One of the three rings of the dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    PolyRing(PrimeField),
    RealQuadratic(QuadField),
}

impl RingDescriptor {
    pub fn integers() -> Self {
        RingDescriptor::Integers
    }

    pub fn poly_ring(q: u64) -> Result<Self> {
        Ok(RingDescriptor::PolyRing(PrimeField::new(q)?))
    }

    pub fn real_quadratic(d: u32) -> Result<Self> {
        Ok(RingDescriptor::RealQuadratic(QuadField::new(d)?))
    }

    /// Parses the selector format: `"Z"`, `"Fq[t]:q=3"`, `"Q(sqrt:2)"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingDescriptor::Integers);
        }
        if let Some(rest) = s.strip_prefix("Fq[t]:q=") {
            let q = rest
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime in ring selector {s:?}")))?;
            return RingDescriptor::poly_ring(q);
        }
        if let Some(rest) = s.strip_prefix("Q(sqrt:") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated ring selector {s:?}")))?;
            let d = inner
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad discriminant in {s:?}")))?;
            return RingDescriptor::real_quadratic(d);
        }
        Err(Error::Parse(format!(
            "unknown ring selector {s:?}; expected Z, Fq[t]:q=<p>, or Q(sqrt:<d>)"
        )))
    }

    /// The power-saving exponent of the boundary estimate for this ring.
    pub fn boundary_exponent(&self) -> f64 {
        match self {
            RingDescriptor::RealQuadratic(_) => 0.5,
            _ => 1.0,
        }
    }

    /// Residue of the zeta function of the ring at s = 1. Not computed for
    /// the quadratic rings (that would need the class number formula).
    pub fn zeta_residue(&self) -> Result<f64> {
        match self {
            RingDescriptor::Integers => Ok(1.0),
            RingDescriptor::PolyRing(f) => Ok(1.0 / (f.q() as f64).ln()),
            RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
                "zeta residue over a quadratic ring".into(),
            )),
        }
    }

    pub fn unit_modulus(&self) -> Modulus {
        match self {
            RingDescriptor::Integers => Modulus {
                ring: *self,
                value: ModulusValue::Int(1),
                factors: Vec::new(),
            },
            RingDescriptor::PolyRing(f) => Modulus {
                ring: *self,
                value: ModulusValue::Poly(f.constant(1)),
                factors: Vec::new(),
            },
            RingDescriptor::RealQuadratic(_) => Modulus {
                ring: *self,
                value: ModulusValue::Ideals(Vec::new()),
                factors: Vec::new(),
            },
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::PolyRing(field) => write!(f, "Fq[t]:q={}", field.q()),
            RingDescriptor::RealQuadratic(field) => write!(f, "Q(sqrt:{})", field.d()),
        }
    }
}

/// An element of one of the three rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Int(i64),
    Poly(Poly),
    Quad(QuadInt),
}

impl Element {
    pub fn ring(&self) -> RingDescriptor {
        match self {
            Element::Int(_) => RingDescriptor::Integers,
            Element::Poly(p) => RingDescriptor::PolyRing(p.field()),
            Element::Quad(a) => RingDescriptor::RealQuadratic(a.field()),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => Ok(Element::Int(a + b)),
            (Element::Poly(a), Element::Poly(b)) => Ok(Element::Poly(a.add(b)?)),
            (Element::Quad(a), Element::Quad(b)) => Ok(Element::Quad(a.add(b))),
            _ => Err(Error::precondition("mixed-ring element arithmetic")),
        }
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => Ok(Element::Int(a - b)),
            (Element::Poly(a), Element::Poly(b)) => Ok(Element::Poly(a.sub(b)?)),
            (Element::Quad(a), Element::Quad(b)) => Ok(Element::Quad(a.sub(b))),
            _ => Err(Error::precondition("mixed-ring element arithmetic")),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Poly(p) => write!(f, "{p}"),
            Element::Quad(a) => write!(f, "{},{}", a.x, a.y),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModulusValue {
    Int(u64),
    Poly(Poly),
    Ideals(Vec<QuadPrimeIdeal>),
}

/// A modulus with its prime factorization attached. Only the factor norms
/// and multiplicities feed the multiplicative functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    ring: RingDescriptor,
    value: ModulusValue,
    /// (prime norm, multiplicity), ascending by appearance.
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn from_integer(v: u64) -> Result<Self> {
        if v == 0 {
            return Err(Error::precondition("zero modulus"));
        }
        Ok(Modulus {
            ring: RingDescriptor::Integers,
            value: ModulusValue::Int(v),
            factors: arith::factor(v),
        })
    }

    pub fn from_poly(p: Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::precondition("zero modulus"));
        }
        // normalize monic
        let lead_inv = arith::inv_mod(p.leading(), p.q())?;
        let p = p.mul_scalar(lead_inv);
        let factors = factor_poly(&p)?
            .into_iter()
            .map(|(g, e)| (g.norm().expect("nonzero factor"), e))
            .collect();
        Ok(Modulus {
            ring: RingDescriptor::PolyRing(p.field()),
            value: ModulusValue::Poly(p),
            factors,
        })
    }

    /// Squarefree product of distinct prime ideals.
    pub fn from_ideals(field: QuadField, ideals: Vec<QuadPrimeIdeal>) -> Result<Self> {
        for (i, a) in ideals.iter().enumerate() {
            if ideals[i + 1..].contains(a) {
                return Err(Error::precondition(
                    "repeated prime ideal; only squarefree ideal moduli are representable",
                ));
            }
        }
        let factors = ideals.iter().map(|i| (i.norm(), 1)).collect();
        Ok(Modulus {
            ring: RingDescriptor::RealQuadratic(field),
            value: ModulusValue::Ideals(ideals),
            factors,
        })
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn value(&self) -> &ModulusValue {
        &self.value
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// `|A / q|`, multiplicative across coprime moduli.
    pub fn norm(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(n, e)| acc * n.pow(e))
    }

    /// `|(A / q)^x| = prod (|p| - 1) |p|^{e-1}`.
    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(n, e)| acc * (n - 1) * n.pow(e - 1))
    }

    /// `(-1)^r` on squarefree moduli with `r` prime factors, else 0.
    pub fn moebius(&self) -> i32 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Norms of the prime divisors, with multiplicity.
    pub fn factor_norms(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &(n, e) in &self.factors {
            for _ in 0..e {
                out.push(n);
            }
        }
        out
    }

    pub fn is_coprime(&self, other: &Modulus) -> Result<bool> {
        match (&self.value, &other.value) {
            (ModulusValue::Int(a), ModulusValue::Int(b)) => {
                Ok(num_integer::gcd(*a, *b) == 1)
            }
            (ModulusValue::Poly(a), ModulusValue::Poly(b)) => {
                Ok(a.gcd(b)?.degree() == Some(0))
            }
            (ModulusValue::Ideals(a), ModulusValue::Ideals(b)) => {
                Ok(a.iter().all(|i| !b.contains(i)))
            }
            _ => Err(Error::precondition("mixed-ring modulus comparison")),
        }
    }

    /// Product of coprime moduli.
    pub fn mul(&self, other: &Modulus) -> Result<Modulus> {
        if !self.is_coprime(other)? {
            return Err(Error::precondition("modulus product requires coprime factors"));
        }
        let value = match (&self.value, &other.value) {
            (ModulusValue::Int(a), ModulusValue::Int(b)) => ModulusValue::Int(
                a.checked_mul(*b)
                    .ok_or_else(|| Error::precondition("modulus overflow"))?,
            ),
            (ModulusValue::Poly(a), ModulusValue::Poly(b)) => ModulusValue::Poly(a.mul(b)?),
            (ModulusValue::Ideals(a), ModulusValue::Ideals(b)) => {
                let mut v = a.clone();
                v.extend(b.iter().copied());
                ModulusValue::Ideals(v)
            }
            _ => unreachable!("coprimality check rejects mixed rings"),
        };
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().copied());
        Ok(Modulus { ring: self.ring, value, factors })
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ModulusValue::Int(v) => write!(f, "{v}"),
            ModulusValue::Poly(p) => write!(f, "{p}"),
            ModulusValue::Ideals(ideals) => {
                let parts: Vec<String> = ideals
                    .iter()
                    .map(|i| match i.kind {
                        crate::quadratic::IdealKind::Split { root } => {
                            format!("({},split,{root})", i.p)
                        }
                        crate::quadratic::IdealKind::Ramified { root } => {
                            format!("({},ram,{root})", i.p)
                        }
                        crate::quadratic::IdealKind::Inert => format!("({},inert)", i.p),
                    })
                    .collect();
                if parts.is_empty() {
                    write!(f, "(1)")
                } else {
                    write!(f, "{}", parts.join("*"))
                }
            }
        }
    }
}

/// Complete factorization of a monic polynomial by trial division with
/// irreducibles of increasing degree.
fn factor_poly(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut rest = f.clone();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut d = 1u32;
    while rest.degree().map_or(false, |deg| deg >= 1) {
        let deg = rest.degree().unwrap() as u32;
        if deg < 2 * d {
            // remaining factor is irreducible
            out.push((rest.clone(), 1));
            break;
        }
        for cand in ffpoly::enumerate_monic(f.q(), d, u64::MAX)? {
            if !ffpoly::is_irreducible(&cand)? {
                continue;
            }
            let mut e = 0u32;
            loop {
                let (quot, rem) = rest.div_rem(&cand)?;
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                e += 1;
            }
            if e > 0 {
                out.push((cand, e));
            }
            if rest.degree().map_or(true, |dd| dd == 0) {
                break;
            }
        }
        d += 1;
    }
    Ok(out)
}

/// A box `A(N)` inside a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxSpec {
    pub ring: RingDescriptor,
    pub n: u64,
}

impl BoxSpec {
    pub fn new(ring: RingDescriptor, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("box size must be positive"));
        }
        if let RingDescriptor::PolyRing(f) = ring {
            let mut m = n;
            while m % f.q() == 0 {
                m /= f.q();
            }
            if m != 1 {
                return Err(Error::precondition(format!(
                    "box size {n} is not a power of q={}",
                    f.q()
                )));
            }
        }
        Ok(BoxSpec { ring, n })
    }

    /// `|A(N)|`: exact for the integers and polynomial rings; quadratic
    /// boxes are counted by enumeration.
    pub fn cardinality(&self) -> Option<u64> {
        match self.ring {
            RingDescriptor::Integers | RingDescriptor::PolyRing(_) => Some(self.n),
            RingDescriptor::RealQuadratic(_) => None,
        }
    }

    pub fn poly_degree(&self) -> Option<u32> {
        if let RingDescriptor::PolyRing(f) = self.ring {
            let mut m = self.n;
            let mut deg = 0;
            while m > 1 {
                m /= f.q();
                deg += 1;
            }
            Some(deg)
        } else {
            None
        }
    }
}

/// Enumerates `A(N)` exactly once per element.
///
/// `(N, 2N]` over the integers; monic degree-n polynomials for `N = q^n`;
/// `A_0(2N) \ A_0(N)` for the quadratic rings, by bounded lattice scan.
pub fn enumerate_box(spec: &BoxSpec, budget: u64) -> Result<Vec<Element>> {
    match spec.ring {
        RingDescriptor::Integers => {
            if spec.n > budget {
                return Err(Error::budget(format!(
                    "interval of length {} exceeds budget {budget}",
                    spec.n
                )));
            }
            let n = spec.n as i64;
            Ok((n + 1..=2 * n).map(Element::Int).collect())
        }
        RingDescriptor::PolyRing(f) => {
            let deg = spec.poly_degree().unwrap();
            Ok(ffpoly::enumerate_monic(f.q(), deg, budget)?
                .map(Element::Poly)
                .collect())
        }
        RingDescriptor::RealQuadratic(f) => {
            let n = i64::try_from(spec.n)
                .map_err(|_| Error::precondition("box size too large"))?;
            let big = enumerate_box0(f, 2 * n, budget)?;
            Ok(big
                .into_iter()
                .filter(|a| !a.in_box0(n))
                .map(Element::Quad)
                .collect())
        }
    }
}

/// All squarefree moduli of norm at most `bound` coprime to `coprime_to`,
/// each exactly once, in (norm, value) order.
pub fn enumerate_squarefree_moduli(
    ring: RingDescriptor,
    bound: u64,
    coprime_to: &Modulus,
) -> Result<Vec<Modulus>> {
    match ring {
        RingDescriptor::Integers => {
            let mut out = Vec::new();
            for v in 1..=bound {
                let m = Modulus::from_integer(v)?;
                if m.is_squarefree() && m.is_coprime(coprime_to)? {
                    out.push(m);
                }
            }
            Ok(out)
        }
        RingDescriptor::PolyRing(f) => {
            let mut out = vec![ring.unit_modulus()];
            let mut deg = 1u32;
            while f.q().checked_pow(deg).map_or(false, |n| n <= bound) {
                for p in ffpoly::enumerate_monic(f.q(), deg, u64::MAX)? {
                    let m = Modulus::from_poly(p)?;
                    if m.is_squarefree() && m.is_coprime(coprime_to)? {
                        out.push(m);
                    }
                }
                deg += 1;
            }
            Ok(out)
        }
        RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
            "squarefree modulus enumeration over a quadratic ring".into(),
        )),
    }
}

/// The product of all primes of norm strictly below `d0`.
pub fn primorial_w(ring: RingDescriptor, d0: u64) -> Result<Modulus> {
    match ring {
        RingDescriptor::Integers => {
            let mut m = ring.unit_modulus();
            for p in arith::primes_below(d0) {
                m = m.mul(&Modulus::from_integer(p)?)?;
            }
            Ok(m)
        }
        RingDescriptor::PolyRing(f) => {
            let mut m = ring.unit_modulus();
            let mut deg = 1u32;
            while f.q().checked_pow(deg).map_or(false, |n| n < d0) {
                for p in ffpoly::enumerate_irreducibles(f.q(), deg, u64::MAX)? {
                    m = m.mul(&Modulus::from_poly(p)?)?;
                }
                deg += 1;
            }
            Ok(m)
        }
        RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
            "primorial over a quadratic ring".into(),
        )),
    }
}

/// The primes of the ring with norm at most `bound`, as moduli. Used by the
/// admissibility checks.
pub fn primes_of_norm_up_to(ring: RingDescriptor, bound: u64) -> Result<Vec<Modulus>> {
    match ring {
        RingDescriptor::Integers => arith::primes_below(bound + 1)
            .into_iter()
            .map(Modulus::from_integer)
            .collect(),
        RingDescriptor::PolyRing(f) => {
            let mut out = Vec::new();
            let mut deg = 1u32;
            while f.q().checked_pow(deg).map_or(false, |n| n <= bound) {
                for p in ffpoly::enumerate_irreducibles(f.q(), deg, u64::MAX)? {
                    out.push(Modulus::from_poly(p)?);
                }
                deg += 1;
            }
            Ok(out)
        }
        RingDescriptor::RealQuadratic(f) => f
            .prime_ideals_up_to(bound)
            .into_iter()
            .map(|i| Modulus::from_ideals(f, vec![i]))
            .collect(),
    }
}

/// Residue index of an element modulo a modulus, in `0..norm`.
///
/// Integers use the value mod m; polynomials use the base-q digits of the
/// remainder; quadratic ideals delegate to the ideal residue map (squarefree
/// products combine residues by CRT indexing in factor order).
pub fn residue_index(elem: &Element, modulus: &Modulus) -> Result<u64> {
    match (elem, &modulus.value) {
        (Element::Int(a), ModulusValue::Int(m)) => Ok(a.rem_euclid(*m as i64) as u64),
        (Element::Poly(a), ModulusValue::Poly(m)) => {
            let r = a.rem(m)?;
            let q = a.q();
            let deg_m = m.degree().unwrap();
            let mut idx = 0u64;
            for i in (0..deg_m).rev() {
                idx = idx * q + r.coeff(i);
            }
            Ok(idx)
        }
        (Element::Quad(a), ModulusValue::Ideals(ideals)) => {
            let mut idx = 0u64;
            for ideal in ideals {
                idx = idx * ideal.norm() + ideal.residue_index(a);
            }
            Ok(idx)
        }
        _ => Err(Error::precondition("element and modulus from different rings")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn selector_roundtrip() {
        for s in ["Z", "Fq[t]:q=3", "Q(sqrt:2)"] {
            let r = RingDescriptor::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!(RingDescriptor::parse("Fq[t]:q=4").is_err());
        assert!(RingDescriptor::parse("Q(sqrt:7)").is_err());
        assert!(RingDescriptor::parse("GF(9)").is_err());
    }

    #[test]
    fn norm_phi_mu_examples() {
        let six = Modulus::from_integer(6).unwrap();
        assert_eq!((six.norm(), six.euler_phi(), six.moebius()), (6, 2, 1));

        let m = Modulus::from_poly(Poly::new(fq(3), vec![1, 0, 1])).unwrap();
        assert_eq!(m.norm(), 9); // t^2 + 1, q^deg

        let tt = Modulus::from_poly(Poly::new(fq(2), vec![0, 1, 1])).unwrap(); // t^2 + t
        assert_eq!(tt.euler_phi(), 1); // (2-1)(2-1)
        assert_eq!(tt.moebius(), 1);

        let tsq = Modulus::from_poly(Poly::new(fq(3), vec![0, 0, 1])).unwrap(); // t^2
        assert_eq!(tsq.euler_phi(), 6); // 9 - 3
        assert_eq!(tsq.moebius(), 0);

        // t(t+1)(t^2+t+1) over F_2: three distinct irreducible factors
        let f2 = fq(2);
        let prod = Poly::new(f2, vec![0, 1])
            .mul(&Poly::new(f2, vec![1, 1]))
            .unwrap()
            .mul(&Poly::new(f2, vec![1, 1, 1]))
            .unwrap();
        assert_eq!(Modulus::from_poly(prod).unwrap().moebius(), -1);
    }

    #[test]
    fn split_prime_norm_over_sqrt2() {
        let f = QuadField::new(2).unwrap();
        let ideals = f.prime_ideals_up_to(7);
        let above7: Vec<_> = ideals.iter().filter(|i| i.p == 7).collect();
        assert_eq!(above7.len(), 2); // 3^2 = 2 mod 7: splits
        for i in above7 {
            let m = Modulus::from_ideals(f, vec![*i]).unwrap();
            assert_eq!(m.norm(), 7);
        }
    }

    #[test]
    fn boundary_exponents() {
        assert_eq!(RingDescriptor::Integers.boundary_exponent(), 1.0);
        assert_eq!(
            RingDescriptor::poly_ring(3).unwrap().boundary_exponent(),
            1.0
        );
        assert_eq!(
            RingDescriptor::real_quadratic(5).unwrap().boundary_exponent(),
            0.5
        );
    }

    #[test]
    fn zeta_residues() {
        assert_eq!(RingDescriptor::Integers.zeta_residue().unwrap(), 1.0);
        let c = RingDescriptor::poly_ring(3).unwrap().zeta_residue().unwrap();
        assert!((c - 1.0 / 3.0f64.ln()).abs() < 1e-15);
        assert!((c - 0.9102).abs() < 1e-3);
        assert!(RingDescriptor::real_quadratic(2)
            .unwrap()
            .zeta_residue()
            .is_err());
    }

    #[test]
    fn box_enumeration_examples() {
        let b = BoxSpec::new(RingDescriptor::Integers, 4).unwrap();
        let got = enumerate_box(&b, 1000).unwrap();
        assert_eq!(
            got,
            vec![5, 6, 7, 8].into_iter().map(Element::Int).collect::<Vec<_>>()
        );

        let b = BoxSpec::new(RingDescriptor::poly_ring(3).unwrap(), 9).unwrap();
        assert_eq!(enumerate_box(&b, 1000).unwrap().len(), 9);
        assert_eq!(b.poly_degree(), Some(2));
        assert!(BoxSpec::new(RingDescriptor::poly_ring(3).unwrap(), 10).is_err());
    }

    #[test]
    fn box_cardinalities_exact() {
        for n in [1u64, 7, 100] {
            let b = BoxSpec::new(RingDescriptor::Integers, n).unwrap();
            assert_eq!(enumerate_box(&b, 1 << 20).unwrap().len() as u64, n);
        }
        for (q, n) in [(2u64, 8u64), (3, 27), (5, 25)] {
            let b = BoxSpec::new(RingDescriptor::poly_ring(q).unwrap(), n).unwrap();
            assert_eq!(enumerate_box(&b, 1 << 20).unwrap().len() as u64, n);
        }
    }

    #[test]
    fn squarefree_moduli_examples() {
        let six = Modulus::from_integer(6).unwrap();
        let got = enumerate_squarefree_moduli(RingDescriptor::Integers, 10, &six).unwrap();
        let norms: Vec<u64> = got.iter().map(|m| m.norm()).collect();
        assert_eq!(norms, vec![1, 5, 7]);

        let ring = RingDescriptor::poly_ring(2).unwrap();
        let got = enumerate_squarefree_moduli(ring, 4, &ring.unit_modulus()).unwrap();
        let shown: Vec<String> = got.iter().map(|m| m.to_string()).collect();
        // 1, t, t+1, t^2+t, t^2+t+1: all squarefree monic of norm <= 4
        assert_eq!(shown, vec!["1", "0,1", "1,1", "0,1,1", "1,1,1"]);

        let got = enumerate_squarefree_moduli(RingDescriptor::Integers, 1, &six).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].is_unit());
    }

    #[test]
    fn primorial_examples() {
        let w = primorial_w(RingDescriptor::Integers, 5).unwrap();
        assert_eq!(w.norm(), 6);
        let w = primorial_w(RingDescriptor::Integers, 2).unwrap();
        assert_eq!(w.norm(), 1);
        let w = primorial_w(RingDescriptor::poly_ring(3).unwrap(), 4).unwrap();
        // t(t+1)(t+2) = t^3 - t = t^3 + 2t
        assert_eq!(w.to_string(), "0,2,0,1");
        assert_eq!(w.norm(), 27);
    }

    #[test]
    fn multiplicativity_randomized() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 400 + 1
        };
        let mut tested = 0;
        while tested < 200 {
            let a = Modulus::from_integer(next()).unwrap();
            let b = Modulus::from_integer(next()).unwrap();
            if !a.is_coprime(&b).unwrap() {
                continue;
            }
            let prod = a.mul(&b).unwrap();
            assert_eq!(prod.norm(), a.norm() * b.norm());
            assert_eq!(prod.euler_phi(), a.euler_phi() * b.euler_phi());
            assert_eq!(prod.moebius(), a.moebius() * b.moebius());
            tested += 1;
        }
    }

    #[test]
    fn residue_classes_nearly_uniform() {
        // integers: each class filled to within 1; polynomials: exactly
        for (n, m) in [(50u64, 7u64), (100, 12), (64, 9)] {
            let b = BoxSpec::new(RingDescriptor::Integers, n).unwrap();
            let modulus = Modulus::from_integer(m).unwrap();
            let mut counts = vec![0u64; m as usize];
            for e in enumerate_box(&b, 1 << 20).unwrap() {
                counts[residue_index(&e, &modulus).unwrap() as usize] += 1;
            }
            let expect = n as f64 / m as f64;
            for c in counts {
                assert!((c as f64 - expect).abs() <= 1.0);
            }
        }
        let ring = RingDescriptor::poly_ring(3).unwrap();
        let b = BoxSpec::new(ring, 27).unwrap();
        let modulus = Modulus::from_poly(Poly::new(fq(3), vec![1, 0, 1])).unwrap();
        let mut counts = vec![0u64; 9];
        for e in enumerate_box(&b, 1 << 20).unwrap() {
            counts[residue_index(&e, &modulus).unwrap() as usize] += 1;
        }
        assert!(counts.iter().all(|&c| c == 3)); // 27 / 9 exactly
    }

    #[test]
    fn quadratic_box_is_difference_of_nested_boxes() {
        let ring = RingDescriptor::real_quadratic(2).unwrap();
        let b = BoxSpec::new(ring, 5).unwrap();
        let got = enumerate_box(&b, 1 << 20).unwrap();
        let f = QuadField::new(2).unwrap();
        for e in &got {
            if let Element::Quad(a) = e {
                assert!(a.in_box0(10) && !a.in_box0(5));
            } else {
                panic!("wrong element kind");
            }
        }
        // oracle: filter the big box directly
        let expect: Vec<Element> = enumerate_box0(f, 10, 1 << 20)
            .unwrap()
            .into_iter()
            .filter(|a| !a.in_box0(5))
            .map(Element::Quad)
            .collect();
        assert_eq!(got, expect);
    }
}
