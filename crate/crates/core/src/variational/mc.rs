//! Monte Carlo oracle for the Rayleigh quotient, independent of the exact
//! Dirichlet-integral assembly it cross-checks.
//!
//! Both functionals are reduced to integrals over the (k-1)-simplex by
//! integrating the last coordinate out exactly (an elementary Beta integral
//! per polynomial term):
//!
//! ```text
//! I(F)    = int_{R_{k-1}} H,     H(s,u) = int_0^{1-s} F^2 dt
//! Jsum(F) = k int_{R_{k-1}} G^2, G(s,u) = int_0^{1-s} F dt
//! ```
//!
//! with `s` the coordinate sum and `u` the square sum of the remaining
//! variables. Sampling the same points for numerator and denominator makes
//! their errors cancel in the ratio. Half the draws are uniform and half
//! come from the Dirichlet density proportional to `(1 - s)^c`, combined
//! with balance-heuristic weights (bounded by 2), which tames the heavy
//! cofactor powers that uniform sampling almost never visits.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::parallel;

use super::{beta, factorials, rational_to_f64, SymmetricBasis};

#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    /// Estimated `Jsum(F) / I(F)`.
    pub rayleigh: f64,
    /// Weighted mean of the integrated square over the (k-1)-simplex.
    pub i_mean: f64,
    /// Weighted mean of the squared inner integral.
    pub j_mean: f64,
    pub samples: u64,
}

fn exp_draw(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.random();
    -(1.0 - u).ln()
}

/// Fills `buf` with a point of the simplex: uniform for `cofactor = 0`,
/// otherwise Dirichlet(1, ..., 1, cofactor + 1). Returns `1 - sum`.
fn simplex_point(rng: &mut ChaCha8Rng, buf: &mut [f64], cofactor: u32) -> f64 {
    let mut total = 0.0;
    for v in buf.iter_mut() {
        *v = exp_draw(rng);
        total += *v;
    }
    let mut tail = 0.0;
    for _ in 0..=cofactor {
        tail += exp_draw(rng);
    }
    total += tail;
    let inv = 1.0 / total.max(f64::MIN_POSITIVE);
    for v in buf.iter_mut() {
        *v *= inv;
    }
    tail * inv
}

/// `C(m + c, c)`, the density ratio scale between the weighted Dirichlet
/// and the uniform law on the m-simplex.
fn binomial(m: usize, c: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 1..=c as usize {
        acc *= (m + i) as f64 / i as f64;
    }
    acc
}

/// Sparse polynomial in `u` and `(1-s)`, stored per exponent cell.
struct CellPoly {
    /// (coefficient, u power, (1-s) power)
    cells: Vec<(f64, u32, u32)>,
    max_u: u32,
    max_c: u32,
}

impl CellPoly {
    fn from_map(map: std::collections::BTreeMap<(u32, u32), f64>) -> Self {
        let mut cells = Vec::with_capacity(map.len());
        let (mut max_u, mut max_c) = (0, 0);
        for ((up, cp), coef) in map {
            if coef != 0.0 {
                max_u = max_u.max(up);
                max_c = max_c.max(cp);
                cells.push((coef, up, cp));
            }
        }
        CellPoly { cells, max_u, max_c }
    }

    fn eval(&self, u_pows: &[f64], c_pows: &[f64]) -> f64 {
        self.cells
            .iter()
            .map(|&(coef, up, cp)| coef * u_pows[up as usize] * c_pows[cp as usize])
            .sum()
    }
}

/// Estimates the Rayleigh quotient of the basis combination `coeffs` with
/// `samples` common draws for numerator and denominator, deterministically
/// for a given seed and any thread count.
pub fn mc_rayleigh(
    basis: &SymmetricBasis,
    coeffs: &[f64],
    samples: u64,
    seed: u64,
    threads: usize,
) -> McEstimate {
    let k = basis.k();
    assert_eq!(coeffs.len(), basis.len());
    let gens = basis.generators();
    let fac = factorials(4 * basis.degree_bound() as usize + 4);

    // G(s,u) = sum_i c_i sum_j C(b_i,j) beta(a_i,j) u^{b_i-j} (1-s)^{a_i+2j+1}
    let mut g_map = std::collections::BTreeMap::new();
    for (&(a, b), &c) in gens.iter().zip(coeffs) {
        for j in 0..=b {
            let choose = &fac[b as usize] / (&fac[j as usize] * &fac[(b - j) as usize]);
            let choose = num_traits::ToPrimitive::to_f64(&choose).unwrap();
            let coef = c * choose * rational_to_f64(&beta(a, j, &fac));
            *g_map.entry((b - j, a + 2 * j + 1)).or_insert(0.0) += coef;
        }
    }
    let g_poly = CellPoly::from_map(g_map);

    // H(s,u) = sum_{i,j} c_i c_j sum_m C(b_i+b_j, m) beta(a_i+a_j, m)
    //          u^{b_i+b_j-m} (1-s)^{a_i+a_j+2m+1}
    let mut h_map = std::collections::BTreeMap::new();
    for (gi, &(ai, bi)) in gens.iter().enumerate() {
        for (gj, &(aj, bj)) in gens.iter().enumerate() {
            let c2 = coeffs[gi] * coeffs[gj];
            if c2 == 0.0 {
                continue;
            }
            let (a, b) = (ai + aj, bi + bj);
            for m in 0..=b {
                let choose = &fac[b as usize] / (&fac[m as usize] * &fac[(b - m) as usize]);
                let choose = num_traits::ToPrimitive::to_f64(&choose).unwrap();
                let coef = c2 * choose * rational_to_f64(&beta(a, m, &fac));
                *h_map.entry((b - m, a + 2 * m + 1)).or_insert(0.0) += coef;
            }
        }
    }
    let h_poly = CellPoly::from_map(h_map);

    let m = k - 1;
    if m == 0 {
        // both functionals are the closed forms at the empty point
        let ones = vec![1.0; h_poly.max_c.max(g_poly.max_c) as usize + 1];
        let i_mean = h_poly.eval(&[1.0], &ones);
        let g = g_poly.eval(&[1.0], &ones);
        let j_mean = g * g;
        return McEstimate { rayleigh: 0.0, i_mean, j_mean, samples }
            .with_ratio(k, i_mean, j_mean);
    }

    let cofactor = 2 * basis.degree_bound() + 2;
    let scale = binomial(m, cofactor);
    let max_u = h_poly.max_u.max(g_poly.max_u) as usize;
    let max_c = (h_poly.max_c.max(g_poly.max_c).max(cofactor)) as usize;
    const SHARD: u64 = 1 << 16;
    let partials = parallel::map_shards(samples, SHARD, threads, |range| {
        let shard_idx = range.start / SHARD;
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ shard_idx.wrapping_mul(0x9e3779b97f4a7c15));
        let mut buf = vec![0.0f64; m];
        let mut u_pows = vec![1.0f64; max_u + 1];
        let mut c_pows = vec![1.0f64; max_c + 1];
        let mut i_acc = 0.0f64;
        let mut j_acc = 0.0f64;
        for i in range {
            let from_weighted = i % 2 == 1;
            let rem = simplex_point(&mut rng, &mut buf, if from_weighted { cofactor } else { 0 });
            let u: f64 = buf.iter().map(|v| v * v).sum();
            for p in 1..=max_u {
                u_pows[p] = u_pows[p - 1] * u;
            }
            for p in 1..=max_c {
                c_pows[p] = c_pows[p - 1] * rem;
            }
            // balance heuristic over the uniform/weighted mixture
            let ratio = scale * c_pows[cofactor as usize];
            let w = 1.0 / (0.5 + 0.5 * ratio);
            i_acc += h_poly.eval(&u_pows, &c_pows) * w;
            let g = g_poly.eval(&u_pows, &c_pows);
            j_acc += g * g * w;
        }
        (i_acc, j_acc)
    });
    let (i_sum, j_sum) = partials
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let i_mean = i_sum / samples as f64;
    let j_mean = j_sum / samples as f64;
    McEstimate { rayleigh: 0.0, i_mean, j_mean, samples }.with_ratio(k, i_mean, j_mean)
}

impl McEstimate {
    fn with_ratio(mut self, k: usize, i_mean: f64, j_mean: f64) -> Self {
        // common volume factors cancel: Jsum/I = k * mean(G^2) / mean(H)
        self.rayleigh = k as f64 * j_mean / i_mean;
        self
    }
}
