//! Admissible tuples over all three rings: the admissibility check with
//! witness reporting, lifting of integer tuples into the quadratic rings,
//! narrow-tuple search, and diameters.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ffpoly::{self, Poly};
use crate::parallel;
use crate::quadratic::QuadField;
use crate::ring::{primes_of_norm_up_to, residue_index, Element, Modulus, RingDescriptor};

/// A tuple of k distinct ring elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    ring: RingDescriptor,
    elements: Vec<Element>,
}

impl Tuple {
    pub fn new(ring: RingDescriptor, elements: Vec<Element>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::precondition("a tuple needs at least one element"));
        }
        for e in &elements {
            if e.ring() != ring {
                return Err(Error::precondition("tuple element from the wrong ring"));
            }
        }
        let mut sorted = elements.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::precondition("tuple elements must be pairwise distinct"));
        }
        Ok(Tuple { ring, elements })
    }

    pub fn from_integers(values: Vec<i64>) -> Result<Self> {
        Tuple::new(
            RingDescriptor::Integers,
            values.into_iter().map(Element::Int).collect(),
        )
    }

    pub fn from_polys(values: Vec<Poly>) -> Result<Self> {
        let field = values
            .first()
            .map(|p| p.field())
            .ok_or_else(|| Error::precondition("empty tuple"))?;
        Tuple::new(
            RingDescriptor::PolyRing(field),
            values.into_iter().map(Element::Poly).collect(),
        )
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn integer_values(&self) -> Result<Vec<i64>> {
        self.elements
            .iter()
            .map(|e| match e {
                Element::Int(v) => Ok(*v),
                _ => Err(Error::precondition("tuple is not over the integers")),
            })
            .collect()
    }

    /// Max minus min, for integer tuples.
    pub fn diameter(&self) -> Result<u64> {
        let vals = self.integer_values()?;
        let min = vals.iter().min().unwrap();
        let max = vals.iter().max().unwrap();
        Ok((max - min) as u64)
    }
}

/// A fully covered prime found by the admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub prime: Modulus,
    pub covered: Vec<u64>,
}

/// Outcome of an admissibility check: the primes examined are exactly those
/// of norm at most k (a k-element set cannot cover a larger residue ring).
#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub witness: Option<Witness>,
    pub primes_checked: Vec<Modulus>,
}

/// Checks admissibility: no prime of norm at most k has every residue class
/// hit by the tuple.
pub fn is_admissible(tuple: &Tuple) -> Result<AdmissibilityReport> {
    let k = tuple.k() as u64;
    let primes = primes_of_norm_up_to(tuple.ring(), k)?;
    for prime in &primes {
        let norm = prime.norm();
        let mut seen = vec![false; norm as usize];
        let mut distinct = 0u64;
        for e in tuple.elements() {
            let idx = residue_index(e, prime)? as usize;
            if !seen[idx] {
                seen[idx] = true;
                distinct += 1;
            }
        }
        if distinct == norm {
            let covered = (0..norm).collect();
            return Ok(AdmissibilityReport {
                admissible: false,
                witness: Some(Witness { prime: prime.clone(), covered }),
                primes_checked: primes.clone(),
            });
        }
    }
    Ok(AdmissibilityReport { admissible: true, witness: None, primes_checked: primes })
}

/// Checks that an integer-admissible tuple stays admissible in a quadratic
/// ring by running the ideal-level check directly (this exists to test the
/// lifting property, not to assume it).
pub fn lift_admissible_check(tuple: &Tuple, target: QuadField) -> Result<AdmissibilityReport> {
    let values = tuple.integer_values()?;
    let base = is_admissible(tuple)?;
    if !base.admissible {
        return Err(Error::precondition(
            "lift requires a tuple admissible over the integers",
        ));
    }
    let lifted = Tuple::new(
        RingDescriptor::RealQuadratic(target),
        values
            .into_iter()
            .map(|v| Element::Quad(target.element(v, 0)))
            .collect(),
    )?;
    is_admissible(&lifted)
}

/// Greedy narrow-tuple search.
///
/// Over the integers `budget` caps the sieved window length; over `F_q[t]`
/// it caps the candidate-set size `q^(D+1)` while the degree cap D grows.
/// Results are deterministic for a given `(ring, k, budget)`; `threads` only
/// parallelizes the integer local-shrink scan, whose merge takes the
/// lexicographically smallest best tuple.
pub fn find_narrow_tuple(
    ring: RingDescriptor,
    k: usize,
    budget: u64,
    threads: usize,
) -> Result<Tuple> {
    if k < 2 {
        return Err(Error::precondition("narrow-tuple search needs k >= 2"));
    }
    match ring {
        RingDescriptor::Integers => narrow_integer_tuple(k, budget, threads),
        RingDescriptor::PolyRing(_) => narrow_poly_tuple(ring, k, budget),
        RingDescriptor::RealQuadratic(_) => Err(Error::Unsupported(
            "narrow-tuple search over a quadratic ring".into(),
        )),
    }
}

fn sieve_survivors(window: u64, avoided: &[(u64, u64)]) -> Vec<u64> {
    (0..window)
        .filter(|x| avoided.iter().all(|&(p, a)| x % p != a))
        .collect()
}

/// Best k consecutive survivors: (diameter, start index).
fn best_window(survivors: &[u64], k: usize) -> Option<(u64, usize)> {
    if survivors.len() < k {
        return None;
    }
    (0..=survivors.len() - k)
        .map(|i| (survivors[i + k - 1] - survivors[i], i))
        .min()
}

fn narrow_integer_tuple(k: usize, budget: u64, threads: usize) -> Result<Tuple> {
    let primes: Vec<u64> = crate::arith::primes_below(k as u64 + 1);
    let mut window = (4 * k as u64).max(16);
    loop {
        if window > budget {
            return Err(Error::budget(format!(
                "no admissible {k}-tuple found within window budget {budget}"
            )));
        }
        // greedy: per prime remove the class killing the fewest survivors,
        // ties to the smallest class
        let mut avoided: Vec<(u64, u64)> = Vec::new();
        let mut survivors: Vec<u64> = (0..window).collect();
        for &p in &primes {
            let mut counts = vec![0u64; p as usize];
            for &x in &survivors {
                counts[(x % p) as usize] += 1;
            }
            let a = (0..p).min_by_key(|&a| counts[a as usize]).unwrap();
            avoided.push((p, a));
            survivors.retain(|&x| x % p != a);
        }
        if let Some((mut best_diam, mut best_at)) = best_window(&survivors, k) {
            let mut best_avoided = avoided.clone();
            let mut best_survivors = survivors;
            // local shrink: single avoided-class changes, steepest descent
            loop {
                let flat: Vec<(usize, u64)> = primes
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &p)| (0..p).map(move |a| (i, a)))
                    .collect();
                let best_avoided_ref = &best_avoided;
                let improvements = parallel::map_shards(
                    flat.len() as u64,
                    8,
                    threads,
                    |range| {
                        let mut best: Option<(u64, Vec<u64>, (usize, u64))> = None;
                        for idx in range {
                            let (i, a) = flat[idx as usize];
                            if best_avoided_ref[i].1 == a {
                                continue;
                            }
                            let mut trial = best_avoided_ref.clone();
                            trial[i].1 = a;
                            let surv = sieve_survivors(window, &trial);
                            if let Some((d, at)) = best_window(&surv, k) {
                                let tup: Vec<u64> = surv[at..at + k].to_vec();
                                if best.as_ref().map_or(true, |(bd, bt, _)| {
                                    d < *bd || (d == *bd && tup < *bt)
                                }) {
                                    best = Some((d, tup, (i, a)));
                                }
                            }
                        }
                        best
                    },
                );
                let candidate = improvements
                    .into_iter()
                    .flatten()
                    .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
                match candidate {
                    Some((d, _, (i, a))) if d < best_diam => {
                        best_avoided[i].1 = a;
                        best_survivors = sieve_survivors(window, &best_avoided);
                        let (nd, nat) = best_window(&best_survivors, k).unwrap();
                        best_diam = nd;
                        best_at = nat;
                    }
                    _ => break,
                }
            }
            let base = best_survivors[best_at];
            let values: Vec<i64> = best_survivors[best_at..best_at + k]
                .iter()
                .map(|&x| (x - base) as i64)
                .collect();
            let tuple = Tuple::from_integers(values)?;
            debug_assert!(is_admissible(&tuple)?.admissible);
            return Ok(tuple);
        }
        window = (window * 2).min(budget.max(window + 1));
    }
}

fn narrow_poly_tuple(ring: RingDescriptor, k: usize, budget: u64) -> Result<Tuple> {
    let q = match ring {
        RingDescriptor::PolyRing(f) => f.q(),
        _ => unreachable!(),
    };
    let primes = primes_of_norm_up_to(ring, k as u64)?;
    let mut degree_cap = 0u32;
    loop {
        let candidates = match q.checked_pow(degree_cap + 1) {
            Some(c) if c <= budget => c,
            _ => {
                return Err(Error::budget(format!(
                    "no admissible {k}-tuple of polynomials found within budget {budget}"
                )))
            }
        };
        // all polynomials of degree <= degree_cap, in index order
        let mut pool: Vec<Poly> = Vec::with_capacity(candidates as usize);
        for deg in 0..=degree_cap {
            if deg == 0 {
                pool.push(Poly::new(crate::ffpoly::PrimeField::new(q)?, vec![]));
                for c in 1..q {
                    pool.push(Poly::new(crate::ffpoly::PrimeField::new(q)?, vec![c]));
                }
            } else {
                for lead in 1..q {
                    for f in ffpoly::enumerate_monic(q, deg, u64::MAX)? {
                        pool.push(f.mul_scalar(lead));
                    }
                }
            }
        }
        let mut survivors: Vec<usize> = (0..pool.len()).collect();
        for prime in &primes {
            let norm = prime.norm();
            let mut counts = vec![0u64; norm as usize];
            let residues: Vec<u64> = survivors
                .iter()
                .map(|&i| residue_index(&Element::Poly(pool[i].clone()), prime))
                .collect::<Result<_>>()?;
            for &r in &residues {
                counts[r as usize] += 1;
            }
            let avoid = (0..norm).min_by_key(|&a| counts[a as usize]).unwrap();
            survivors = survivors
                .iter()
                .zip(residues.iter())
                .filter(|&(_, &r)| r != avoid)
                .map(|(&i, _)| i)
                .collect();
        }
        if survivors.len() >= k {
            // prefer low degree, then enumeration order
            survivors.sort_by_key(|&i| (pool[i].degree().map_or(0, |d| d + 1), i));
            let values: Vec<Poly> = survivors[..k].iter().map(|&i| pool[i].clone()).collect();
            let tuple = Tuple::from_polys(values)?;
            if is_admissible(&tuple)?.admissible {
                return Ok(tuple);
            }
        }
        degree_cap += 1;
    }
}

/// Exhaustively certified minimal diameter of an admissible k-tuple, by
/// scanning widths upward. Usable only for small k; this is the oracle the
/// greedy search is tested against.
pub fn minimal_diameter_exhaustive(k: usize, cap: u64) -> Option<u64> {
    fn extend(
        chosen: &mut Vec<i64>,
        rest_needed: usize,
        pool: &[i64],
        start: usize,
        k: usize,
    ) -> bool {
        if rest_needed == 0 {
            let t = Tuple::from_integers(chosen.clone()).unwrap();
            return is_admissible(&t).unwrap().admissible;
        }
        for i in start..pool.len() {
            chosen.push(pool[i]);
            if extend(chosen, rest_needed - 1, pool, i + 1, k) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
        false
    }
    for width in (k as u64 - 1)..=cap {
        let pool: Vec<i64> = (1..width as i64).collect();
        let mut chosen = vec![0, width as i64];
        let mut sorted_pool = pool;
        sorted_pool.sort();
        if extend(&mut chosen, k - 2, &sorted_pool, 0, k) {
            return Some(width);
        }
    }
    None
}

/// Collects every subset of the residues hit by a tuple, for the brute-force
/// admissibility oracle used in tests.
pub fn brute_force_admissible(tuple: &Tuple) -> Result<bool> {
    let k = tuple.k() as u64;
    for prime in primes_of_norm_up_to(tuple.ring(), k)? {
        let mut hit = BTreeSet::new();
        for e in tuple.elements() {
            hit.insert(residue_index(e, &prime)?);
        }
        if hit.len() as u64 == prime.norm() {
            return Ok(false);
        }
    }
    Ok(true)
}
