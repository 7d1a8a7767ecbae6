//! Gap censuses between monic irreducible polynomials, the unit-twist
//! construction that moves one monomial gap to another, the brute-force
//! degree-constrained tuple assertion `Z(k,d,n)`, and the gap-proportion
//! bound.

use std::collections::HashMap;

use num_rational::Rational64;

use crate::arith;
use crate::error::{Error, Result};
use crate::ffpoly::{self, Poly, PrimeField};
use crate::parallel;
use crate::tuples::{is_admissible, Tuple};

/// Ordered-pair occurrence counts of degree-d differences between monic
/// irreducibles of degree n.
#[derive(Debug, Clone)]
pub struct GapCensus {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    /// Difference polynomial -> number of ordered pairs realizing it.
    pub occurrences: HashMap<Poly, u64>,
    /// Number of degree-d polynomials in the ring.
    pub total_of_degree: u64,
    /// How many of them occur as gaps.
    pub occurring: u64,
}

impl GapCensus {
    /// Fraction of degree-d polynomials that occur, as an exact rational.
    pub fn proportion(&self) -> Rational64 {
        Rational64::new(self.occurring as i64, self.total_of_degree as i64)
    }

    /// Census closed under negation: count(g) = count(-g).
    pub fn negation_closed(&self) -> bool {
        self.occurrences
            .iter()
            .all(|(g, &c)| self.occurrences.get(&g.neg()).copied().unwrap_or(0) == c)
    }
}

/// Exact census of degree-d differences `f1 - f2` over all ordered pairs of
/// monic irreducibles of degree n.
///
/// Two monic polynomials differ in degree exactly d iff they agree on every
/// coefficient above d and differ at d, so pairs are bucketed by the high
/// coefficients and only intra-bucket pairs are examined.
pub fn gap_census(q: u64, n: u32, d: u32, budget: u64, threads: usize) -> Result<GapCensus> {
    if d >= n {
        return Err(Error::precondition("gap degree must be below the prime degree"));
    }
    let total = q
        .checked_pow(n)
        .ok_or_else(|| Error::budget("box size overflows"))?;
    if total > budget {
        return Err(Error::budget(format!(
            "enumerating {total} polynomials exceeds budget {budget}"
        )));
    }
    let field = PrimeField::new(q)?;
    let primes = irreducibles_sharded(field, n, threads);
    // bucket by coefficients strictly above d
    let mut buckets: HashMap<Vec<u64>, Vec<&Poly>> = HashMap::new();
    for p in &primes {
        let key: Vec<u64> = (d + 1..n).map(|i| p.coeff(i as usize)).collect();
        buckets.entry(key).or_default().push(p);
    }
    let mut occurrences: HashMap<Poly, u64> = HashMap::new();
    for group in buckets.values() {
        for f1 in group {
            for f2 in group {
                let diff = f1.sub(f2)?;
                if diff.degree() == Some(d as usize) {
                    *occurrences.entry(diff).or_insert(0) += 1;
                }
            }
        }
    }
    let total_of_degree = q.pow(d) * (q - 1);
    let occurring = occurrences.len() as u64;
    Ok(GapCensus { q, n, d, occurrences, total_of_degree, occurring })
}

/// The census restricted to monomial differences `a * t^d`, with the twist
/// applicability data.
#[derive(Debug, Clone)]
pub struct MonomialCensus {
    pub census: GapCensus,
    /// Is `gcd(n - d, q - 1) = 1`, so the twist acts transitively?
    pub gcd_coprime: bool,
    /// Do all q-1 monomials of degree d occur?
    pub all_occur: bool,
}

/// Census restricted to keys of the form `a * t^d`: pairs must agree on
/// every coefficient except the one at degree d.
pub fn monomial_census(
    q: u64,
    n: u32,
    d: u32,
    budget: u64,
    threads: usize,
) -> Result<MonomialCensus> {
    if d >= n {
        return Err(Error::precondition("gap degree must be below the prime degree"));
    }
    let total = q
        .checked_pow(n)
        .ok_or_else(|| Error::budget("box size overflows"))?;
    if total > budget {
        return Err(Error::budget(format!(
            "enumerating {total} polynomials exceeds budget {budget}"
        )));
    }
    let field = PrimeField::new(q)?;
    let primes = irreducibles_sharded(field, n, threads);
    let mut buckets: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    for p in &primes {
        let key: Vec<u64> = (0..n)
            .filter(|&i| i != d)
            .map(|i| p.coeff(i as usize))
            .collect();
        buckets.entry(key).or_default().push(p.coeff(d as usize));
    }
    let mut occurrences: HashMap<Poly, u64> = HashMap::new();
    for coeffs in buckets.values() {
        for &c1 in coeffs {
            for &c2 in coeffs {
                if c1 != c2 {
                    let gap = field.monomial((c1 + q - c2) % q, d as usize);
                    *occurrences.entry(gap).or_insert(0) += 1;
                }
            }
        }
    }
    let occurring = occurrences.len() as u64;
    let census = GapCensus {
        q,
        n,
        d,
        occurrences,
        total_of_degree: q - 1,
        occurring,
    };
    Ok(MonomialCensus {
        gcd_coprime: num_integer::gcd((n - d) as u64, q - 1) == 1,
        all_occur: occurring == q - 1,
        census,
    })
}

fn irreducibles_sharded(field: PrimeField, n: u32, threads: usize) -> Vec<Poly> {
    let total = field.q().pow(n);
    parallel::map_shards(total, 4096, threads, |range| {
        let mut out = Vec::new();
        for idx in range {
            let f = ffpoly::monic_from_index(field, n, idx);
            if ffpoly::is_irreducible(&f).expect("nonzero") {
                out.push(f);
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Converts a monomial gap `c * t^d` between monic irreducibles into the
/// target gap `a * t^d` via `f(t) -> f(w t) / w^n`, where `w^(n-d) = c / a`.
/// Requires `gcd(n - d, q - 1) = 1` so the root exists uniquely.
pub fn twist_gap(f1: &Poly, f2: &Poly, target_leading: u64) -> Result<(Poly, Poly, u64)> {
    let q = f1.q();
    let field = f1.field();
    let n = f1
        .degree()
        .ok_or_else(|| Error::precondition("zero polynomial"))?;
    if f2.degree() != Some(n) {
        return Err(Error::precondition("twist inputs must have equal degree"));
    }
    if !f1.is_monic() || !f2.is_monic() {
        return Err(Error::precondition("twist inputs must be monic"));
    }
    if !ffpoly::is_irreducible(f1)? || !ffpoly::is_irreducible(f2)? {
        return Err(Error::precondition("twist inputs must be irreducible"));
    }
    let a = target_leading % q;
    if a == 0 {
        return Err(Error::precondition("target leading coefficient must be a unit"));
    }
    let diff = f1.sub(f2)?;
    let d = diff
        .degree()
        .ok_or_else(|| Error::precondition("inputs are equal"))?;
    if diff.coeffs().iter().take(d).any(|&c| c != 0) {
        return Err(Error::precondition("difference is not a monomial"));
    }
    let c = diff.leading();
    let e = (n - d) as u64;
    if num_integer::gcd(e, q - 1) != 1 {
        return Err(Error::precondition(format!(
            "gcd(n-d, q-1) = gcd({e}, {}) is not 1; the twist root may not exist",
            q - 1
        )));
    }
    // w = (c/a)^(e^{-1} mod q-1) in the unit group
    let e_inv = arith::inv_mod(e % (q - 1), q - 1)?;
    let ca = c * arith::inv_mod(a, q)? % q;
    let w = arith::pow_mod(ca, e_inv, q);
    debug_assert_eq!(arith::pow_mod(w, e, q), ca);
    let w_n_inv = arith::inv_mod(arith::pow_mod(w, n as u64, q), q)?;
    let g1 = f1.compose_scale(w).mul_scalar(w_n_inv);
    let g2 = f2.compose_scale(w).mul_scalar(w_n_inv);
    debug_assert!(g1.is_monic() && g2.is_monic());
    debug_assert!(ffpoly::is_irreducible(&g1)? && ffpoly::is_irreducible(&g2)?);
    let out_diff = g1.sub(&g2)?;
    debug_assert_eq!(out_diff, field.monomial(a, d));
    Ok((g1, g2, w))
}

/// Outcome of the degree-constrained tuple assertion.
#[derive(Debug, Clone)]
pub struct ZAssertionResult {
    pub q: u64,
    pub k: usize,
    pub d: u32,
    pub n: u32,
    pub holds: bool,
    /// An admissible constrained tuple with no translate producing two
    /// irreducibles, канonicalized to h_1 = 0; present iff `holds` is false.
    pub counterexample: Option<Vec<Poly>>,
    pub tuples_examined: u64,
}

/// Brute-force check of the assertion: every admissible k-tuple whose
/// elements and pairwise differences all have degree exactly d admits a
/// monic f of degree n with at least two monic irreducible translates.
///
/// Tuples are enumerated modulo translation, anchored at h_1 = 0: the
/// remaining elements have degree exactly d with pairwise distinct leading
/// coefficients. A budget overrun is an error, never a truth value.
pub fn check_z(
    q: u64,
    k: usize,
    d: u32,
    n: u32,
    budget: u64,
    threads: usize,
) -> Result<ZAssertionResult> {
    if k < 2 {
        return Err(Error::precondition("the assertion needs k >= 2"));
    }
    if d >= n {
        return Err(Error::precondition("gap degree must be below the prime degree"));
    }
    let field = PrimeField::new(q)?;
    // universe: polynomials of degree exactly d
    let mut universe: Vec<Poly> = Vec::new();
    for lead in 1..q {
        if d == 0 {
            universe.push(field.constant(lead));
        } else {
            for f in ffpoly::enumerate_monic(q, d, u64::MAX)? {
                universe.push(f.mul_scalar(lead));
            }
        }
    }
    let mut tuples: Vec<Vec<Poly>> = Vec::new();
    let mut cur: Vec<Poly> = Vec::new();
    collect_constrained(&universe, k - 1, 0, &mut cur, &mut tuples);
    let scans = tuples.len() as u64 * q.pow(n);
    if scans > budget {
        return Err(Error::budget(format!(
            "{} tuples times {} translates exceeds budget {budget}",
            tuples.len(),
            q.pow(n)
        )));
    }
    let mut examined = 0u64;
    let mut counterexamples: Vec<Vec<Poly>> = Vec::new();
    for tail in &tuples {
        let mut elements = vec![field.zero()];
        elements.extend(tail.iter().cloned());
        let tuple = Tuple::from_polys(elements.clone())?;
        if !is_admissible(&tuple)?.admissible {
            continue;
        }
        examined += 1;
        if !has_double_prime_translate(field, n, &elements, threads) {
            counterexamples.push(elements);
        }
    }
    counterexamples.sort();
    let counterexample = counterexamples.into_iter().next();
    Ok(ZAssertionResult {
        q,
        k,
        d,
        n,
        holds: counterexample.is_none(),
        counterexample,
        tuples_examined: examined,
    })
}

fn collect_constrained(
    universe: &[Poly],
    need: usize,
    start: usize,
    cur: &mut Vec<Poly>,
    out: &mut Vec<Vec<Poly>>,
) {
    if need == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..universe.len() {
        let cand = &universe[i];
        // pairwise difference of degree exactly d: leading coefficients differ
        if cur.iter().any(|p| p.leading() == cand.leading()) {
            continue;
        }
        cur.push(cand.clone());
        collect_constrained(universe, need - 1, i + 1, cur, out);
        cur.pop();
    }
}

fn has_double_prime_translate(
    field: PrimeField,
    n: u32,
    elements: &[Poly],
    threads: usize,
) -> bool {
    let q = field.q();
    let total = q.pow(n);
    let found = parallel::map_shards(total, 8192, threads, |range| {
        for idx in range {
            let f = ffpoly::monic_from_index(field, n, idx);
            let mut hits = 0;
            for h in elements {
                let translate = f.add(h).unwrap();
                // translates stay monic of degree n since deg h < n
                if ffpoly::is_irreducible(&translate).unwrap() {
                    hits += 1;
                    if hits >= 2 {
                        return true;
                    }
                }
            }
        }
        false
    });
    found.into_iter().any(|b| b)
}

/// The guaranteed gap proportion `1/(k0-1) - 1/(q-1)` as an exact rational.
pub fn proportion_bound(k0: u64, q: u64) -> Result<Rational64> {
    if k0 < 2 {
        return Err(Error::precondition("k0 must be at least 2"));
    }
    if q < k0 + 1 {
        return Err(Error::precondition(format!(
            "the bound requires q >= k0 + 1 (got q = {q}, k0 = {k0})"
        )));
    }
    Ok(Rational64::new(1, k0 as i64 - 1) - Rational64::new(1, q as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_q3_n2() {
        // all 6 degree-1 gaps occur; no degree-0 gap occurs
        let c1 = gap_census(3, 2, 1, 1 << 20, 1).unwrap();
        assert_eq!(c1.occurring, 6);
        assert_eq!(c1.total_of_degree, 6);
        assert_eq!(c1.proportion(), Rational64::new(1, 1));
        assert!(c1.negation_closed());

        let c0 = gap_census(3, 2, 0, 1 << 20, 1).unwrap();
        assert_eq!(c0.occurring, 0);
    }

    #[test]
    fn census_q2_n1() {
        // (t+1) - t = 1
        let c = gap_census(2, 1, 0, 1 << 20, 1).unwrap();
        assert_eq!(c.occurring, 1);
        assert_eq!(c.occurrences.values().sum::<u64>(), 2); // ordered pairs
    }

    #[test]
    fn census_negation_closure_randomish() {
        for (q, n, d) in [(3, 3, 0), (3, 3, 1), (5, 2, 0), (5, 2, 1), (2, 4, 2)] {
            let c = gap_census(q, n, d, 1 << 22, 2).unwrap();
            assert!(c.negation_closed(), "q={q} n={n} d={d}");
        }
    }

    #[test]
    fn twist_example_q3() {
        let f3 = PrimeField::new(3).unwrap();
        let f1 = Poly::new(f3, vec![1, 2, 0, 1]); // t^3 + 2t + 1
        let f2 = Poly::new(f3, vec![2, 2, 0, 1]); // t^3 + 2t + 2
        let (g1, g2, w) = twist_gap(&f1, &f2, 1).unwrap();
        assert_eq!(w, 2);
        let diff = g1.sub(&g2).unwrap();
        assert_eq!(diff, f3.constant(1));
        assert!(ffpoly::is_irreducible(&g1).unwrap());
        assert!(ffpoly::is_irreducible(&g2).unwrap());

        // a = c gives the identity twist
        let (h1, h2, w) = twist_gap(&f1, &f2, 2).unwrap();
        assert_eq!(w, 1);
        assert_eq!((h1, h2), (f1, f2));
    }

    #[test]
    fn twist_gcd_precondition() {
        // q=5, n=2, d=0: gcd(2, 4) = 2
        let irr = ffpoly::enumerate_irreducibles(5, 2, 1 << 10).unwrap();
        // find a constant-gap pair
        let mut found = None;
        'outer: for a in &irr {
            for b in &irr {
                if a != b && a.sub(b).unwrap().degree() == Some(0) {
                    found = Some((a.clone(), b.clone()));
                    break 'outer;
                }
            }
        }
        let (a, b) = found.expect("constant gaps exist over F_5 degree 2");
        assert!(matches!(twist_gap(&a, &b, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn twist_rejects_non_monomial() {
        let f3 = PrimeField::new(3).unwrap();
        // t^2+1 and t^2+t+2 differ by 2t + 2, not a monomial
        let f1 = Poly::new(f3, vec![1, 0, 1]);
        let f2 = Poly::new(f3, vec![2, 1, 1]);
        assert!(twist_gap(&f1, &f2, 1).is_err());
    }

    #[test]
    fn monomial_census_examples() {
        // q=3, n=3, d=0: both constants occur
        let mc = monomial_census(3, 3, 0, 1 << 20, 1).unwrap();
        assert!(mc.gcd_coprime);
        assert!(mc.all_occur);
        assert_eq!(mc.census.occurring, 2);

        // q=3, n=2, d=0: none occur
        let mc = monomial_census(3, 2, 0, 1 << 20, 1).unwrap();
        assert_eq!(mc.census.occurring, 0);
        assert!(!mc.all_occur);
    }

    #[test]
    fn omega_orbit_closure() {
        // with gcd(n-d, q-1) = 1, one realized monomial implies all q-1
        for (q, n, d) in [(3u64, 3u32, 0u32), (5, 2, 1), (7, 3, 1), (5, 4, 1)] {
            if num_integer::gcd((n - d) as u64, q - 1) != 1 {
                continue;
            }
            let mc = monomial_census(q, n, d, 1 << 22, 2).unwrap();
            assert!(
                mc.census.occurring == 0 || mc.census.occurring == q - 1,
                "q={q} n={n} d={d}: {} of {}",
                mc.census.occurring,
                q - 1
            );
        }
    }

    #[test]
    fn zcheck_examples() {
        // q=3, k=2, d=0, n=2: no two monic irreducible quadratics differ by
        // a constant, so the assertion fails with a counterexample
        let r = check_z(3, 2, 0, 2, 1 << 20, 1).unwrap();
        assert!(!r.holds);
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.len(), 2);
        assert!(ce[0].is_zero());

        // q=3, k=2, d=1, n=2: every degree-1 difference occurs
        let r = check_z(3, 2, 1, 2, 1 << 20, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.tuples_examined, 6);

        // k - 1 exceeds the number of available leading coefficients:
        // no constrained tuples at all, vacuously true
        let r = check_z(3, 5, 0, 2, 1 << 20, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.tuples_examined, 0);
    }

    #[test]
    fn zcheck_budget_is_error() {
        assert!(matches!(
            check_z(3, 2, 1, 8, 100, 1),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn z_monotone_in_k() {
        // if Z(k-1,d,n) holds then Z(k,d,n) holds
        for (q, d, n) in [(3u64, 1u32, 2u32), (5, 0, 2), (5, 1, 2), (3, 0, 3)] {
            let mut prev = None;
            for k in 2..=3usize {
                let r = check_z(q, k, d, n, 1 << 24, 2).unwrap();
                if let Some(true) = prev {
                    assert!(r.holds, "monotonicity broken at q={q} k={k} d={d} n={n}");
                }
                prev = Some(r.holds);
            }
        }
    }

    #[test]
    fn proportion_bound_examples() {
        assert_eq!(
            proportion_bound(105, 107).unwrap(),
            Rational64::new(1, 5512)
        );
        assert_eq!(proportion_bound(2, 4).unwrap(), Rational64::new(2, 3));
        assert!(proportion_bound(5, 5).is_err());
    }

    #[test]
    fn proportion_logic_desk_scale() {
        // where Z(q,k,d,n) holds, the measured proportion meets the bound
        for (q, k, d, n) in [
            (3u64, 2usize, 1u32, 2u32),
            (5, 2, 1, 2),
            (5, 3, 1, 2),
            (5, 2, 0, 3),
            (7, 2, 0, 2),
        ] {
            if q < k as u64 + 1 {
                continue;
            }
            let z = check_z(q, k, d, n, 1 << 26, 4).unwrap();
            if !z.holds {
                continue;
            }
            let census = gap_census(q, n, d, 1 << 22, 2).unwrap();
            let bound = proportion_bound(k as u64, q).unwrap();
            assert!(
                census.proportion() >= bound,
                "q={q} k={k} d={d} n={n}: {} < {}",
                census.proportion(),
                bound
            );
        }
    }
}
