//! Numeric check of the multiplicative-sum asymptotic behind the weight
//! estimates, in the shipped case `gamma = 1`, `kappa = 1`:
//!
//! ```text
//! lhs = sum_{|d| < z} mu(d)^2 g(d) G(log|d| / log z),   g(p) = 1/(|p|-1)
//! rhs = S * c_A * log z * int_0^1 G(x) dx
//! ```
//!
//! with the singular series `S` evaluated as a truncated Euler product (it
//! collapses to 1 in this case). The left side is a direct enumeration.

use crate::arith;
use crate::error::{Error, Result};
use crate::ffpoly;
use crate::ring::{Modulus, RingDescriptor};

/// The shipped smooth weights for the summation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GFunction {
    One,
    X,
    OneMinusX,
}

impl GFunction {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(GFunction::One),
            "x" => Ok(GFunction::X),
            "one-minus-x" | "1-x" => Ok(GFunction::OneMinusX),
            _ => Err(Error::Parse(format!(
                "unknown weight {s:?}; expected one, x, or one-minus-x"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GFunction::One => "one",
            GFunction::X => "x",
            GFunction::OneMinusX => "one-minus-x",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            GFunction::One => 1.0,
            GFunction::X => x,
            GFunction::OneMinusX => 1.0 - x,
        }
    }

    pub fn integral(&self) -> f64 {
        match self {
            GFunction::One => 1.0,
            GFunction::X | GFunction::OneMinusX => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GgpySummary {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub singular_series: f64,
}

const EULER_TRUNCATION: u64 = 1_000_000;

/// Direct enumeration of the weighted squarefree sum against its predicted
/// main term, over the integers or `F_q[t]`.
pub fn ggpy_sum_check(ring: RingDescriptor, g: GFunction, z: u64, budget: u64) -> Result<GgpySummary> {
    if z < 2 {
        return Err(Error::precondition("bound z must be at least 2"));
    }
    match ring {
        RingDescriptor::Integers => ggpy_integers(g, z, budget),
        RingDescriptor::PolyRing(f) => ggpy_poly(f.q(), g, z, budget),
        RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
            "summation check over a quadratic ring".into(),
        )),
    }
}

fn ggpy_integers(g: GFunction, z: u64, budget: u64) -> Result<GgpySummary> {
    if z > budget {
        return Err(Error::budget(format!("enumeration to {z} exceeds budget {budget}")));
    }
    // smallest-prime-factor sieve for squarefree detection and phi
    let mut spf: Vec<u32> = (0..z as usize).map(|i| i as u32).collect();
    let mut p = 2usize;
    while p * p < z as usize {
        if spf[p] == p as u32 {
            let mut m = p * p;
            while m < z as usize {
                if spf[m] == m as u32 {
                    spf[m] = p as u32;
                }
                m += p;
            }
        }
        p += 1;
    }
    let log_z = (z as f64).ln();
    let mut lhs = 0.0f64;
    for d in 1..z as usize {
        let mut m = d;
        let mut phi = 1u64;
        let mut squarefree = true;
        while m > 1 {
            let pp = spf[m] as usize;
            m /= pp;
            if m % pp == 0 {
                squarefree = false;
                break;
            }
            phi *= pp as u64 - 1;
        }
        if squarefree {
            lhs += g.eval((d as f64).ln() / log_z) / phi as f64;
        }
    }
    let s = singular_series_integers();
    let rhs = s * 1.0 * log_z * g.integral();
    Ok(GgpySummary { lhs, rhs, ratio: lhs / rhs, singular_series: s })
}

fn ggpy_poly(q: u64, g: GFunction, z: u64, budget: u64) -> Result<GgpySummary> {
    // z must be a power of q; |d| < z means deg d <= n-1
    let mut n = 0u32;
    let mut m = z;
    while m % q == 0 {
        m /= q;
        n += 1;
    }
    if m != 1 || n == 0 {
        return Err(Error::precondition(format!("z = {z} is not a positive power of q = {q}")));
    }
    let total: u64 = (0..n).map(|d| q.pow(d)).sum();
    if total > budget {
        return Err(Error::budget(format!(
            "enumerating {total} monic polynomials exceeds budget {budget}"
        )));
    }
    let mut lhs = 0.0f64;
    for deg in 0..n {
        let x = deg as f64 / n as f64;
        let gx = g.eval(x);
        if gx == 0.0 {
            continue;
        }
        for f in ffpoly::enumerate_monic(q, deg, u64::MAX)? {
            let modulus = Modulus::from_poly(f)?;
            if !modulus.is_squarefree() {
                continue;
            }
            let weight: f64 = modulus
                .factor_norms()
                .iter()
                .map(|&p| 1.0 / (p - 1) as f64)
                .product();
            lhs += gx * weight;
        }
    }
    let c_a = 1.0 / (q as f64).ln();
    let log_z = (z as f64).ln();
    let s = singular_series_poly(q);
    let rhs = s * c_a * log_z * g.integral();
    Ok(GgpySummary { lhs, rhs, ratio: lhs / rhs, singular_series: s })
}

/// `prod_p (1 - gamma(p)/|p|)^{-1} (1 - 1/|p|)^kappa` truncated at norm
/// 10^6; identically 1 for `gamma = 1`, `kappa = 1`, but evaluated anyway.
fn singular_series_integers() -> f64 {
    let mut s = 1.0f64;
    for p in arith::primes_below(EULER_TRUNCATION) {
        let inv = 1.0 - 1.0 / p as f64;
        s *= inv.recip() * inv;
    }
    s
}

fn singular_series_poly(q: u64) -> f64 {
    let mut s = 1.0f64;
    let mut deg = 1u32;
    while let Some(norm) = q.checked_pow(deg) {
        if norm > EULER_TRUNCATION {
            break;
        }
        let count = ffpoly::count_irreducibles(q, deg).unwrap_or(0) as f64;
        let inv = 1.0 - 1.0 / norm as f64;
        s *= (inv.recip() * inv).powf(count);
        deg += 1;
    }
    s
}
