//! The multidimensional sieve weight system over the integers and `F_q[t]`:
//! the `lambda` weights induced by a test function `F`, the diagonalizing
//! `y` change of variables, brute-force evaluation of the weighted sums `S1`
//! and `S2`, and the asymptotic main-term predictions they are compared to.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::arith::{self, PrimeTable};
use crate::error::{Error, Result};
use crate::ffpoly::{self, Poly, PrimeField};
use crate::parallel;
use crate::ring::{
    enumerate_squarefree_moduli, primorial_w, BoxSpec, Element, Modulus, ModulusValue,
    RingDescriptor,
};
use crate::tuples::{is_admissible, Tuple};
use crate::variational::{self, SymmetricBasis};

mod ggpy;
mod lod;

pub use ggpy::{ggpy_sum_check, GFunction, GgpySummary};
pub use lod::{measure_level_of_distribution, LodReport, LodRow};

/// A test function on the simplex, expressed over the symmetric basis
/// `(1-P1)^a P2^b` and clipped to zero off the simplex.
#[derive(Debug, Clone)]
pub struct TestFunctionF {
    pub basis: SymmetricBasis,
    pub coeffs: Vec<f64>,
    /// Upper bound for `sup|F| + sum_i sup|dF/dx_i|`.
    pub f_max: f64,
}

impl TestFunctionF {
    pub fn from_coefficients(basis: SymmetricBasis, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::precondition("coefficient count must match basis size"));
        }
        let k = basis.k();
        let f_max = basis
            .generators()
            .iter()
            .zip(&coeffs)
            .map(|(&(a, b), c)| c.abs() * (1.0 + (k as u32 * a) as f64 + 2.0 * b as f64))
            .sum();
        Ok(TestFunctionF { basis, coeffs, f_max })
    }

    /// The power family `(1 - x_1 - ... - x_k)^a` on the simplex.
    pub fn power(k: usize, a: u32) -> Result<Self> {
        let basis = SymmetricBasis::standard(k, a)?;
        let mut coeffs = vec![0.0; basis.len()];
        let idx = basis
            .generators()
            .iter()
            .position(|&g| g == (a, 0))
            .expect("power generator present");
        coeffs[idx] = 1.0;
        TestFunctionF::from_coefficients(basis, coeffs)
    }

    /// Evaluates F, returning 0 off the simplex.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let s: f64 = x.iter().sum();
        if s > 1.0 || x.iter().any(|&v| v < 0.0 || v > 1.0) {
            return 0.0;
        }
        let p2: f64 = x.iter().map(|v| v * v).sum();
        self.basis
            .generators()
            .iter()
            .zip(&self.coeffs)
            .map(|(&(a, b), c)| c * (1.0 - s).powi(a as i32) * p2.powi(b as i32))
            .sum()
    }

    /// Exact quadratic functionals `(I(F), Jsum(F))` from the rational forms.
    pub fn exact_functionals(&self) -> (f64, f64) {
        let forms = variational::build_forms(&self.basis);
        let v: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|&c| BigRational::from_float(c).expect("finite coefficient"))
            .collect();
        let (q1, q2) = forms.quadratic_values(&v);
        (
            variational::rational_to_f64(&q1),
            variational::rational_to_f64(&q2),
        )
    }
}

/// Sieve parameters: the admissible tuple, box, level-of-distribution
/// exponents, primorial threshold, and the derived `R`, `w`, `v0`.
#[derive(Debug, Clone)]
pub struct SieveParams {
    pub ring: RingDescriptor,
    pub tuple: Tuple,
    pub box_spec: BoxSpec,
    pub theta: f64,
    pub delta: f64,
    pub d0: u64,
    /// `|A(N)|^(theta/2 - delta)`, unless overridden directly.
    pub r_bound: f64,
    pub w: Modulus,
    pub v0: Element,
}

impl SieveParams {
    pub fn new(
        ring: RingDescriptor,
        tuple: Tuple,
        box_size: u64,
        theta: f64,
        delta: f64,
        d0: u64,
        r_override: Option<f64>,
    ) -> Result<Self> {
        if matches!(ring, RingDescriptor::RealQuadratic(_)) {
            return Err(Error::Unsupported("sieving over a quadratic ring".into()));
        }
        if tuple.ring() != ring {
            return Err(Error::precondition("tuple ring does not match sieve ring"));
        }
        if !(0.0 < theta && theta < 1.0) {
            return Err(Error::precondition("theta must lie in (0,1)"));
        }
        if delta <= 0.0 || theta / 2.0 - delta <= 0.0 {
            return Err(Error::precondition("need 0 < delta < theta/2"));
        }
        if d0 < 2 {
            return Err(Error::precondition("D0 must be at least 2"));
        }
        // rings with primes of norm 2 need them inside w, or the S2
        // diagonalization degenerates at g(p) = |p| - 2 = 0
        let has_norm2 = match ring {
            RingDescriptor::Integers => true,
            RingDescriptor::PolyRing(f) => f.q() == 2,
            RingDescriptor::RealQuadratic(_) => unreachable!(),
        };
        if has_norm2 && d0 < 3 {
            return Err(Error::precondition(
                "D0 must be at least 3 so that the norm-2 primes divide w",
            ));
        }
        let report = is_admissible(&tuple)?;
        if !report.admissible {
            return Err(Error::precondition("sieve tuple must be admissible"));
        }
        let box_spec = BoxSpec::new(ring, box_size)?;
        if let RingDescriptor::PolyRing(_) = ring {
            // translates alpha + h_i must stay monic of the box degree
            let deg = box_spec.poly_degree().unwrap() as usize;
            for e in tuple.elements() {
                if let Element::Poly(p) = e {
                    if p.degree().map_or(false, |d| d >= deg) {
                        return Err(Error::precondition(
                            "tuple degrees must stay below the box degree",
                        ));
                    }
                }
            }
        }
        let card = box_spec.cardinality().unwrap() as f64;
        let r_bound = r_override.unwrap_or_else(|| card.powf(theta / 2.0 - delta));
        if r_bound < 2.0 {
            return Err(Error::precondition(format!(
                "derived R = {r_bound:.3} is below 2; enlarge the box or theta"
            )));
        }
        let w = primorial_w(ring, d0)?;
        let v0 = choose_v0(&tuple, d0)?;
        Ok(SieveParams { ring, tuple, box_spec, theta, delta, d0, r_bound, w, v0 })
    }

    pub fn k(&self) -> usize {
        self.tuple.k()
    }
}

/// Smallest valid residue mod each prime below `d0`, combined by CRT so that
/// every `v0 + h_i` is coprime to `w`.
fn choose_v0(tuple: &Tuple, d0: u64) -> Result<Element> {
    match tuple.ring() {
        RingDescriptor::Integers => {
            let hs = tuple.integer_values()?;
            let mut v = 0u64;
            let mut m = 1u64;
            for p in arith::primes_below(d0) {
                let r = (0..p)
                    .find(|&r| {
                        hs.iter()
                            .all(|&h| (r as i64 + h).rem_euclid(p as i64) != 0)
                    })
                    .ok_or_else(|| {
                        Error::precondition(format!("no valid residue mod {p}: tuple covers it"))
                    })?;
                let (nv, nm) = arith::crt(v, m, r, p)?;
                v = nv;
                m = nm;
            }
            Ok(Element::Int(v as i64))
        }
        RingDescriptor::PolyRing(field) => {
            let q = field.q();
            let hs: Vec<Poly> = tuple
                .elements()
                .iter()
                .map(|e| match e {
                    Element::Poly(p) => p.clone(),
                    _ => unreachable!(),
                })
                .collect();
            let mut primes = Vec::new();
            let mut deg = 1u32;
            while q.checked_pow(deg).map_or(false, |n| n < d0) {
                primes.extend(ffpoly::enumerate_irreducibles(q, deg, u64::MAX)?);
                deg += 1;
            }
            let mut v = field.zero();
            let mut modulus = field.constant(1);
            for p in &primes {
                let norm = p.norm()?;
                let r = (0..norm)
                    .map(|idx| poly_from_index(field, p.degree().unwrap(), idx))
                    .find(|r| {
                        hs.iter().all(|h| {
                            !r.add(h).unwrap().rem(p).unwrap().is_zero()
                        })
                    })
                    .ok_or_else(|| {
                        Error::precondition(format!("no valid residue mod {p}: tuple covers it"))
                    })?;
                // CRT: v' = v + modulus * ((r - v) * modulus^{-1} mod p)
                let diff = r.sub(&v)?.rem(p)?;
                let minv = ffpoly::inv_mod_poly(&modulus, p)?;
                let adj = diff.mul(&minv)?.rem(p)?;
                v = v.add(&modulus.mul(&adj)?)?;
                modulus = modulus.mul(p)?;
                v = v.rem(&modulus)?;
            }
            Ok(Element::Poly(v))
        }
        RingDescriptor::RealQuadratic(_) => unreachable!(),
    }
}

/// Polynomial of degree below `deg` whose ascending coefficients are the
/// base-q digits of `index`.
fn poly_from_index(field: PrimeField, deg: usize, index: u64) -> Poly {
    let q = field.q();
    let mut coeffs = Vec::with_capacity(deg);
    let mut idx = index;
    for _ in 0..deg {
        coeffs.push(idx % q);
        idx /= q;
    }
    Poly::new(field, coeffs)
}

/// The indexed support set: squarefree moduli coprime to `w` of norm at most
/// `R`, and the k-tuples of pairwise coprime moduli whose product norm stays
/// at most `R`.
#[derive(Debug, Clone)]
pub struct SupportIndex {
    pub moduli: Vec<Modulus>,
    norms: Vec<u64>,
    phis: Vec<u64>,
    factor_norms: Vec<Vec<u64>>,
    mus: Vec<i32>,
    divisors: Vec<Vec<u32>>,
    pub tuples: Vec<Vec<u32>>,
    position: HashMap<Vec<u32>, u32>,
}

impl SupportIndex {
    pub fn build(params: &SieveParams, table_cap: u64) -> Result<Self> {
        let r_floor = params.r_bound.floor() as u64;
        let moduli = enumerate_squarefree_moduli(params.ring, r_floor, &params.w)?;
        let norms: Vec<u64> = moduli.iter().map(|m| m.norm()).collect();
        let phis: Vec<u64> = moduli.iter().map(|m| m.euler_phi()).collect();
        let mus: Vec<i32> = moduli.iter().map(|m| m.moebius()).collect();
        let factor_norms: Vec<Vec<u64>> = moduli.iter().map(|m| m.factor_norms()).collect();
        let n = moduli.len();
        let mut divisors = vec![Vec::new(); n];
        let mut coprime = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                coprime[i][j] = moduli[i].is_coprime(&moduli[j])?;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if divides(&moduli[j], &moduli[i])? {
                    divisors[i].push(j as u32);
                }
            }
        }
        // enumerate support tuples in lexicographic index order
        let k = params.k();
        let mut tuples: Vec<Vec<u32>> = Vec::new();
        let mut cur = vec![0u32; k];
        build_tuples(
            &mut tuples,
            &mut cur,
            0,
            1,
            r_floor,
            &norms,
            &coprime,
            table_cap,
        )?;
        let position = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        Ok(SupportIndex {
            moduli,
            norms,
            phis,
            factor_norms,
            mus,
            divisors,
            tuples,
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    fn pos(&self, tuple: &[u32]) -> u32 {
        self.position[tuple]
    }

    /// Product of factor norms minus two; positive only when every prime in
    /// the support has norm at least 3.
    fn g_value(&self, idx: u32) -> f64 {
        self.factor_norms[idx as usize]
            .iter()
            .map(|&p| (p - 2) as f64)
            .product()
    }
}

fn divides(a: &Modulus, b: &Modulus) -> Result<bool> {
    match (a.value(), b.value()) {
        (ModulusValue::Int(x), ModulusValue::Int(y)) => Ok(y % x == 0),
        (ModulusValue::Poly(x), ModulusValue::Poly(y)) => x.divides(y),
        _ => Err(Error::precondition("mixed-ring modulus divisibility")),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_tuples(
    out: &mut Vec<Vec<u32>>,
    cur: &mut Vec<u32>,
    slot: usize,
    norm_product: u64,
    r_floor: u64,
    norms: &[u64],
    coprime: &[Vec<bool>],
    cap: u64,
) -> Result<()> {
    if slot == cur.len() {
        if out.len() as u64 >= cap {
            return Err(Error::budget(format!(
                "weight table would exceed {cap} entries"
            )));
        }
        out.push(cur.clone());
        return Ok(());
    }
    for i in 0..norms.len() as u32 {
        let np = match norm_product.checked_mul(norms[i as usize]) {
            Some(v) if v <= r_floor => v,
            _ => continue,
        };
        if cur[..slot]
            .iter()
            .any(|&j| !coprime[i as usize][j as usize])
        {
            continue;
        }
        cur[slot] = i;
        build_tuples(out, cur, slot + 1, np, r_floor, norms, coprime, cap)?;
    }
    Ok(())
}

/// Paired weight tables over a support index.
#[derive(Debug, Clone)]
pub struct WeightSystem {
    pub params: SieveParams,
    pub support: SupportIndex,
    pub y: Vec<f64>,
    pub lambda: Vec<f64>,
    pub y_max: f64,
    pub lambda_max: f64,
}

impl WeightSystem {
    /// Builds the full system from a test function: y from F, then lambda.
    pub fn from_test_function(
        params: SieveParams,
        f: &TestFunctionF,
        table_cap: u64,
    ) -> Result<Self> {
        if f.basis.k() != params.k() {
            return Err(Error::precondition("test function dimension mismatch"));
        }
        let support = SupportIndex::build(&params, table_cap)?;
        let y = compute_y_from_f(&params, &support, f);
        let lambda = compute_lambda_from_y(&support, &y);
        let y_max = y.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let lambda_max = lambda.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let ws = WeightSystem { params, support, y, lambda, y_max, lambda_max };
        ws.assert_support_invariant();
        Ok(ws)
    }

    /// Support invariant: nonzero entries sit on squarefree pairwise-coprime
    /// tuples of norm product within R, coprime to w (true by construction
    /// of the index; asserted for the paranoid).
    fn assert_support_invariant(&self) {
        let r = self.params.r_bound.floor() as u64;
        for (t, &lv) in self.support.tuples.iter().zip(&self.lambda) {
            if lv != 0.0 {
                let prod: u64 = t.iter().map(|&i| self.support.norms[i as usize]).product();
                debug_assert!(prod <= r);
            }
        }
    }

    /// Max relative deviation of `lambda -> y -> lambda` from the identity.
    pub fn roundtrip_error(&self) -> f64 {
        let y2 = invert_lambda_to_y(&self.support, &self.lambda);
        let scale = self.y_max.max(1e-300);
        self.y
            .iter()
            .zip(&y2)
            .map(|(a, b)| (a - b).abs() / scale)
            .fold(0.0, f64::max)
    }
}

/// `y[(r_i)] = F(log|r_1|/log R, ..., log|r_k|/log R)` on the support.
pub fn compute_y_from_f(
    params: &SieveParams,
    support: &SupportIndex,
    f: &TestFunctionF,
) -> Vec<f64> {
    let log_r = params.r_bound.ln();
    support
        .tuples
        .iter()
        .map(|t| {
            let x: Vec<f64> = t
                .iter()
                .map(|&i| (support.norms[i as usize] as f64).ln() / log_r)
                .collect();
            f.eval(&x)
        })
        .collect()
}

/// `lambda_d = (prod mu(d_i)|d_i|) sum_{d_i | r_i} y_r / prod phi(r_i)`;
/// the square of the Moebius function is 1 on every support tuple.
pub fn compute_lambda_from_y(support: &SupportIndex, y: &[f64]) -> Vec<f64> {
    let mut lambda = vec![0.0f64; support.len()];
    distribute_to_divisor_tuples(support, y, &mut lambda, |r_tuple| {
        let phi_prod: f64 = r_tuple
            .iter()
            .map(|&i| support.phis[i as usize] as f64)
            .product();
        1.0 / phi_prod
    });
    for (t, lv) in support.tuples.iter().zip(lambda.iter_mut()) {
        let pref: f64 = t
            .iter()
            .map(|&i| support.mus[i as usize] as f64 * support.norms[i as usize] as f64)
            .product();
        *lv *= pref;
    }
    lambda
}

/// `y_r = (prod mu(r_i) phi(r_i)) sum_{r_i | d_i} lambda_d / prod |d_i|`.
pub fn invert_lambda_to_y(support: &SupportIndex, lambda: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0f64; support.len()];
    distribute_to_divisor_tuples(support, lambda, &mut y, |d_tuple| {
        let norm_prod: f64 = d_tuple
            .iter()
            .map(|&i| support.norms[i as usize] as f64)
            .product();
        1.0 / norm_prod
    });
    for (t, yv) in support.tuples.iter().zip(y.iter_mut()) {
        let pref: f64 = t
            .iter()
            .map(|&i| support.mus[i as usize] as f64 * support.phis[i as usize] as f64)
            .product();
        *yv *= pref;
    }
    y
}

/// `y^(m)_r = (prod mu(r_i) g(r_i)) sum_{r_i | d_i, d_m = 1} lambda_d / prod phi(d_i)`,
/// with `g(p) = |p| - 2`. Requires every support prime to have norm >= 3.
pub fn compute_ym(ws: &WeightSystem, m: usize) -> Result<Vec<f64>> {
    let support = &ws.support;
    if m >= ws.params.k() {
        return Err(Error::precondition("translate index out of range"));
    }
    if support
        .factor_norms
        .iter()
        .any(|f| f.iter().any(|&p| p <= 2))
    {
        return Err(Error::precondition(
            "a prime of norm 2 is in the support; g(p) = |p| - 2 degenerates",
        ));
    }
    let mut ym = vec![0.0f64; support.len()];
    // restrict the source sum to d_m = unit
    let restricted: Vec<f64> = support
        .tuples
        .iter()
        .zip(&ws.lambda)
        .map(|(t, &lv)| if t[m] == 0 { lv } else { 0.0 })
        .collect();
    distribute_to_divisor_tuples(support, &restricted, &mut ym, |d_tuple| {
        let phi_prod: f64 = d_tuple
            .iter()
            .map(|&i| support.phis[i as usize] as f64)
            .product();
        1.0 / phi_prod
    });
    for (t, yv) in support.tuples.iter().zip(ym.iter_mut()) {
        let pref: f64 = t
            .iter()
            .map(|&i| support.mus[i as usize] as f64 * support.g_value(i))
            .product();
        *yv *= pref;
    }
    Ok(ym)
}

/// Adds `source[t] * weight(t)` onto every componentwise divisor tuple of t.
fn distribute_to_divisor_tuples(
    support: &SupportIndex,
    source: &[f64],
    dest: &mut [f64],
    weight: impl Fn(&[u32]) -> f64,
) {
    let k = support.tuples.first().map_or(0, |t| t.len());
    let mut combo = vec![0u32; k];
    for (t, &sv) in support.tuples.iter().zip(source) {
        if sv == 0.0 {
            continue;
        }
        let w = sv * weight(t);
        // cartesian product over the divisor lists of each component
        let lists: Vec<&[u32]> = t
            .iter()
            .map(|&i| support.divisors[i as usize].as_slice())
            .collect();
        let mut idx = vec![0usize; k];
        'product: loop {
            for (slot, &list_pos) in idx.iter().enumerate() {
                combo[slot] = lists[slot][list_pos];
            }
            dest[support.pos(&combo) as usize] += w;
            let mut slot = 0;
            loop {
                if slot == k {
                    break 'product;
                }
                idx[slot] += 1;
                if idx[slot] < lists[slot].len() {
                    break;
                }
                idx[slot] = 0;
                slot += 1;
            }
        }
    }
}

/// Brute-force evaluation of the weighted sums over the box progression
/// `alpha = v0 mod w`: `S1` squares the inner divisor-tuple sum, `S2`
/// weights it by the number of prime translates.
pub fn brute_force_sums(ws: &WeightSystem, budget: u64, threads: usize) -> Result<(f64, f64)> {
    match ws.params.ring {
        RingDescriptor::Integers => brute_force_sums_int(ws, budget, threads),
        RingDescriptor::PolyRing(_) => brute_force_sums_poly(ws, budget, threads),
        RingDescriptor::RealQuadratic(_) => unreachable!(),
    }
}

pub fn brute_force_s1(ws: &WeightSystem, budget: u64, threads: usize) -> Result<f64> {
    Ok(brute_force_sums(ws, budget, threads)?.0)
}

pub fn brute_force_s2(ws: &WeightSystem, budget: u64, threads: usize) -> Result<f64> {
    Ok(brute_force_sums(ws, budget, threads)?.1)
}

fn brute_force_sums_int(ws: &WeightSystem, budget: u64, threads: usize) -> Result<(f64, f64)> {
    let n = ws.params.box_spec.n as i64;
    if ws.params.box_spec.n > budget {
        return Err(Error::budget(format!(
            "box of size {} exceeds budget {budget}",
            ws.params.box_spec.n
        )));
    }
    let hs = ws.params.tuple.integer_values()?;
    let w = ws.params.w.norm() as i64;
    let v0 = match ws.params.v0 {
        Element::Int(v) => v,
        _ => unreachable!(),
    };
    let h_max = hs.iter().copied().max().unwrap().max(0);
    let table = PrimeTable::up_to((2 * n + h_max) as u64);
    let first = n + 1 + (v0 - (n + 1)).rem_euclid(w);
    let count = if first > 2 * n { 0 } else { ((2 * n - first) / w + 1) as u64 };
    // non-unit entries only; the unit tuple always divides
    let entries: Vec<(Vec<(usize, u64)>, f64)> = ws
        .support
        .tuples
        .iter()
        .zip(&ws.lambda)
        .map(|(t, &lv)| {
            let checks: Vec<(usize, u64)> = t
                .iter()
                .enumerate()
                .filter(|&(_, &mi)| mi != 0)
                .map(|(slot, &mi)| (slot, ws.support.norms[mi as usize]))
                .collect();
            (checks, lv)
        })
        .collect();
    let sums = parallel::sum_shards(count, 4096, threads, |range| {
        let mut s1 = 0.0f64;
        let mut s2 = 0.0f64;
        for idx in range {
            let alpha = first + idx as i64 * w;
            let mut inner = 0.0f64;
            for (checks, lv) in &entries {
                if *lv == 0.0 {
                    continue;
                }
                if checks
                    .iter()
                    .all(|&(slot, m)| (alpha + hs[slot]).rem_euclid(m as i64) == 0)
                {
                    inner += lv;
                }
            }
            let sq = inner * inner;
            let chi = hs
                .iter()
                .filter(|&&h| {
                    let v = alpha + h;
                    v >= 2 && table.is_prime(v as u64)
                })
                .count() as f64;
            s1 += sq;
            s2 += chi * sq;
        }
        (s1, s2)
    });
    Ok(sums)
}

fn brute_force_sums_poly(ws: &WeightSystem, budget: u64, threads: usize) -> Result<(f64, f64)> {
    let field = match ws.params.ring {
        RingDescriptor::PolyRing(f) => f,
        _ => unreachable!(),
    };
    if ws.params.box_spec.n > budget {
        return Err(Error::budget(format!(
            "box of size {} exceeds budget {budget}",
            ws.params.box_spec.n
        )));
    }
    let q = field.q();
    let n_deg = ws.params.box_spec.poly_degree().unwrap() as usize;
    let hs: Vec<Poly> = ws
        .params
        .tuple
        .elements()
        .iter()
        .map(|e| match e {
            Element::Poly(p) => p.clone(),
            _ => unreachable!(),
        })
        .collect();
    let w_poly = match ws.params.w.value() {
        ModulusValue::Poly(p) => p.clone(),
        _ => unreachable!(),
    };
    let v0 = match &ws.params.v0 {
        Element::Poly(p) => p.clone(),
        _ => unreachable!(),
    };
    let dw = w_poly.degree().unwrap();
    if n_deg < dw {
        return Err(Error::precondition(
            "box degree is below the primorial degree; no progression fits",
        ));
    }
    let free = (n_deg - dw) as u32;
    let count = q.pow(free);
    let entries: Vec<(Vec<(usize, Poly)>, f64)> = ws
        .support
        .tuples
        .iter()
        .zip(&ws.lambda)
        .map(|(t, &lv)| {
            let checks: Vec<(usize, Poly)> = t
                .iter()
                .enumerate()
                .filter(|&(_, &mi)| mi != 0)
                .map(|(slot, &mi)| {
                    let p = match ws.support.moduli[mi as usize].value() {
                        ModulusValue::Poly(p) => p.clone(),
                        _ => unreachable!(),
                    };
                    (slot, p)
                })
                .collect();
            (checks, lv)
        })
        .collect();
    let sums = parallel::sum_shards(count, 2048, threads, |range| {
        let mut s1 = 0.0f64;
        let mut s2 = 0.0f64;
        let mut irr_memo: HashMap<Poly, bool> = HashMap::new();
        for idx in range {
            // alpha = v0 + w * (the idx-th monic of the free degree)
            let g = ffpoly::monic_from_index(field, free, idx);
            let alpha = v0.add(&w_poly.mul(&g).unwrap()).unwrap();
            let mut inner = 0.0f64;
            for (checks, lv) in &entries {
                if *lv == 0.0 {
                    continue;
                }
                if checks.iter().all(|(slot, m)| {
                    alpha.add(&hs[*slot]).unwrap().rem(m).unwrap().is_zero()
                }) {
                    inner += lv;
                }
            }
            let sq = inner * inner;
            let mut chi = 0.0f64;
            for h in &hs {
                let translate = alpha.add(h).unwrap();
                let irr = *irr_memo
                    .entry(translate.clone())
                    .or_insert_with(|| ffpoly::is_irreducible(&translate).unwrap());
                if irr {
                    chi += 1.0;
                }
            }
            s1 += sq;
            s2 += chi * sq;
        }
        (s1, s2)
    });
    Ok(sums)
}

/// The displayed asymptotic main terms for `S1` and `S2`, with the prime
/// count `|P(N)|` taken exactly.
pub fn predicted_main_terms(params: &SieveParams, f: &TestFunctionF) -> Result<(f64, f64)> {
    let k = params.k() as i32;
    let card = params.box_spec.cardinality().unwrap() as f64;
    let c_a = params.ring.zeta_residue()?;
    let log_r = params.r_bound.ln();
    let w_norm = params.w.norm() as f64;
    let w_phi = params.w.euler_phi() as f64;
    let (i_k, j_sum) = f.exact_functionals();
    let prime_count = match params.ring {
        RingDescriptor::Integers => {
            let n = params.box_spec.n;
            let table = PrimeTable::up_to(2 * n);
            table.count_in(n, 2 * n) as f64
        }
        RingDescriptor::PolyRing(f) => {
            let deg = params.box_spec.poly_degree().unwrap();
            ffpoly::count_irreducibles(f.q(), deg)? as f64
        }
        RingDescriptor::RealQuadratic(_) => unreachable!(),
    };
    let front = w_phi.powi(k) / w_norm.powi(k + 1);
    let s1 = front * card * (c_a * log_r).powi(k) * i_k;
    let s2 = front * prime_count * (c_a * log_r).powi(k + 1) * j_sum;
    Ok((s1, s2))
}

#[cfg(test)]
mod tests;
