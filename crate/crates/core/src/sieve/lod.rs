//! Measurement of prime equidistribution in residue classes over `F_q[t]`:
//! for every monic modulus up to a degree cap, the worst-class count error
//! against `|P(N)| / phi(q)` is recorded and normalized by
//! `log(2|q|) * |A(N)|^(1/2)`, the shape of the pointwise error bound the
//! polynomial ring enjoys.

use crate::error::{Error, Result};
use crate::ffpoly::{self, Poly};
use crate::parallel;
use crate::ring::{residue_index, Element, Modulus};

#[derive(Debug, Clone)]
pub struct LodRow {
    pub modulus: String,
    pub norm: u64,
    pub phi: u64,
    pub max_abs_error: f64,
    pub normalized: f64,
}

#[derive(Debug, Clone)]
pub struct LodReport {
    pub q: u64,
    pub degree: u32,
    pub prime_count: u64,
    pub rows: Vec<LodRow>,
    pub max_normalized: f64,
    pub worst_modulus: String,
}

/// Enumerates the monic irreducibles of degree `n` over `F_q` and measures
/// the class-count errors for every monic modulus of degree 1..=max_degree.
pub fn measure_level_of_distribution(
    q: u64,
    n: u32,
    max_degree: u32,
    budget: u64,
    threads: usize,
) -> Result<LodReport> {
    if max_degree == 0 || max_degree >= n {
        return Err(Error::precondition(
            "modulus degree cap must be positive and below the prime degree",
        ));
    }
    let total = q
        .checked_pow(n)
        .ok_or_else(|| Error::budget("box size overflows"))?;
    if total > budget {
        return Err(Error::budget(format!(
            "enumerating {total} polynomials exceeds budget {budget}"
        )));
    }
    // irreducibles of degree n, sharded over the enumeration index
    let field = ffpoly::PrimeField::new(q)?;
    let shards = parallel::map_shards(total, 4096, threads, |range| {
        let mut out = Vec::new();
        for idx in range {
            let f = ffpoly::monic_from_index(field, n, idx);
            if ffpoly::is_irreducible(&f).expect("nonzero") {
                out.push(f);
            }
        }
        out
    });
    let primes: Vec<Poly> = shards.into_iter().flatten().collect();
    let prime_count = primes.len() as u64;
    let sqrt_card = (total as f64).sqrt();

    let mut rows = Vec::new();
    for deg in 1..=max_degree {
        for m in ffpoly::enumerate_monic(q, deg, u64::MAX)? {
            let modulus = Modulus::from_poly(m.clone())?;
            let norm = modulus.norm();
            let phi = modulus.euler_phi();
            let mut counts = vec![0u64; norm as usize];
            for p in &primes {
                counts[residue_index(&Element::Poly(p.clone()), &modulus)? as usize] += 1;
            }
            // coprime residue classes: gcd(r, m) = 1
            let expected = prime_count as f64 / phi as f64;
            let mut max_err = 0.0f64;
            for idx in 0..norm {
                let r = poly_of_index(&m, idx);
                if r.gcd(&m)?.degree() != Some(0) {
                    continue;
                }
                let err = (counts[idx as usize] as f64 - expected).abs();
                max_err = max_err.max(err);
            }
            let normalized = max_err / ((2.0 * norm as f64).ln() * sqrt_card);
            rows.push(LodRow {
                modulus: m.to_string(),
                norm,
                phi,
                max_abs_error: max_err,
                normalized,
            });
        }
    }
    let worst = rows
        .iter()
        .max_by(|a, b| a.normalized.total_cmp(&b.normalized))
        .expect("at least one modulus");
    Ok(LodReport {
        q,
        degree: n,
        prime_count,
        max_normalized: worst.normalized,
        worst_modulus: worst.modulus.clone(),
        rows,
    })
}

fn poly_of_index(modulus: &Poly, index: u64) -> Poly {
    let q = modulus.q();
    let deg = modulus.degree().unwrap();
    let mut coeffs = Vec::with_capacity(deg);
    let mut idx = index;
    for _ in 0..deg {
        coeffs.push(idx % q);
        idx /= q;
    }
    Poly::new(modulus.field(), coeffs)
}
