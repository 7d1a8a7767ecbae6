//! Exact-rational construction of the variational quadratic forms and
//! generalized-eigenvalue lower bounds for the optimization constant `M_k`.
//!
//! Test functions live on the simplex `R_k = {x in [0,1]^k : sum x_i <= 1}`
//! and are spanned by the symmetric generators `(1 - P1)^a * P2^b` with
//! `P1 = sum x_i`, `P2 = sum x_i^2`. The two quadratic functionals are
//!
//! ```text
//! I(F)        = int_{R_k} F^2
//! Jsum(F)     = sum_m int ( int F dx_m )^2
//! ```
//!
//! Both Gram matrices are assembled exactly over the rationals from the
//! Dirichlet integral
//!
//! ```text
//! int_{R_m} prod x_i^{e_i} (1 - sum x)^c dx = prod(e_i!) c! / (m + c + sum e_i)!
//! ```
//!
//! using partition bookkeeping so no k-variable expansion is ever formed.
//! The eigenproblem itself runs in floating point; the reported bound is the
//! exact rational Rayleigh quotient of the rounded eigenvector, so it is a
//! true lower bound for `M_k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

mod mc;
mod solve;

pub use mc::{mc_rayleigh, McEstimate};
pub use solve::{mk_lower_bound, r_k, MkResult};

/// Symmetric polynomial basis: generator `(a, b)` is `(1-P1)^a * P2^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBasis {
    k: usize,
    degree_bound: u32,
    generators: Vec<(u32, u32)>,
}

impl SymmetricBasis {
    /// All generators with `a + 2b <= degree_bound`.
    ///
    /// For k = 1 the square sum `P2` equals `P1^2`, so generators with
    /// `b > 0` would be linearly dependent on the pure `(1-P1)^a` family;
    /// they are omitted to keep the Gram matrix nonsingular.
    pub fn standard(k: usize, degree_bound: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::precondition("dimension k must be positive"));
        }
        let mut generators = Vec::new();
        let b_max = if k == 1 { 0 } else { degree_bound / 2 };
        for b in 0..=b_max {
            for a in 0..=degree_bound.saturating_sub(2 * b) {
                generators.push((a, b));
            }
        }
        Ok(SymmetricBasis { k, degree_bound, generators })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn generators(&self) -> &[(u32, u32)] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// The two Gram matrices over a symmetric basis, exact and symmetric.
#[derive(Debug, Clone)]
pub struct QuadraticFormPair {
    pub basis: SymmetricBasis,
    /// Pairings under `I`.
    pub m1: Vec<Vec<BigRational>>,
    /// Pairings under `Jsum`.
    pub m2: Vec<Vec<BigRational>>,
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        let next = &out[i - 1] * BigInt::from(i);
        out.push(next);
    }
    out
}

/// `int_{R_k} prod_i x_i^{e_i} (1 - sum x)^c dx`, exactly.
///
/// Exponents beyond the slice are zero; the slice must not be longer than k.
pub fn monomial_simplex_integral(k: usize, exponents: &[u32], cofactor: u32) -> Result<BigRational> {
    if exponents.len() > k {
        return Err(Error::precondition("more exponents than variables"));
    }
    let total: u32 = exponents.iter().sum();
    let fac = factorials(k + cofactor as usize + total as usize);
    let mut num = fac[cofactor as usize].clone();
    for &e in exponents {
        num *= &fac[e as usize];
    }
    let den = fac[k + cofactor as usize + total as usize].clone();
    Ok(BigRational::new(num, den))
}

/// Partitions of `n` into at most `max_parts` parts, descending.
fn partitions(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, max_part: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        let hi = n.min(max_part);
        for p in (1..=hi).rev() {
            cur.push(p);
            rec(n - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// `int_{R_m} (sum x_i^2)^b (1 - sum x)^c dx` via multinomial expansion of
/// the power sum over partitions of `b` assigned to distinct variables.
fn p2_power_integral(m: usize, b: u32, c: u32, fac: &[BigInt]) -> BigRational {
    if b == 0 {
        // plain Dirichlet with no monomial part
        if m == 0 {
            return BigRational::one();
        }
        return BigRational::new(fac[c as usize].clone(), fac[m + c as usize].clone());
    }
    if m == 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::zero();
    for lam in partitions(b, m) {
        let r = lam.len();
        // distinct-variable assignments: m falling r / prod over multiplicities
        let mut ways = BigInt::one();
        for i in 0..r {
            ways *= BigInt::from(m - i);
        }
        let mut run = 1usize;
        for i in 1..=r {
            if i < r && lam[i] == lam[i - 1] {
                run += 1;
            } else {
                ways /= &fac[run];
                run = 1;
            }
        }
        // multinomial b! / prod(lam_i!) and the Dirichlet numerator prod (2 lam_i)!
        let mut num = ways * &fac[b as usize];
        for &p in &lam {
            num = num * &fac[2 * p as usize] / &fac[p as usize];
        }
        let den = fac[m + c as usize + 2 * b as usize].clone();
        acc += BigRational::new(num * &fac[c as usize], den);
    }
    acc
}

/// `beta(a, j) = int_0^1 (1-w)^a w^{2j} dw = (2j)! a! / (a + 2j + 1)!`, the
/// scale factor of the inner integral along one variable.
fn beta(a: u32, j: u32, fac: &[BigInt]) -> BigRational {
    BigRational::new(
        &fac[2 * j as usize] * &fac[a as usize],
        fac[a as usize + 2 * j as usize + 1].clone(),
    )
}

/// Assembles the exact Gram matrices of `I` and `Jsum` over the basis.
///
/// The inner integral of `(1-P1)^a P2^b` along `x_m` runs over
/// `[0, 1 - s]` (F vanishes past the simplex), leaving a polynomial in the
/// remaining variables through `u = P2 - x_m^2` and `(1-s)` with
/// `s = P1 - x_m`; the outer integral is again of Dirichlet type.
pub fn build_forms(basis: &SymmetricBasis) -> QuadraticFormPair {
    let k = basis.k;
    let n = basis.len();
    let fac = factorials(k + 4 * basis.degree_bound as usize + 4);
    let gens = &basis.generators;
    let mut m1 = vec![vec![BigRational::zero(); n]; n];
    let mut m2 = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let (ai, bi) = gens[i];
            let (aj, bj) = gens[j];
            let v1 = p2_power_integral(k, bi + bj, ai + aj, &fac);
            // Jsum: all k coordinates contribute equally by symmetry
            let mut v2 = BigRational::zero();
            for j1 in 0..=bi {
                for j2 in 0..=bj {
                    let choose = BigRational::from_integer(
                        &fac[bi as usize] * &fac[bj as usize]
                            / (&fac[j1 as usize] * &fac[(bi - j1) as usize])
                            / (&fac[j2 as usize] * &fac[(bj - j2) as usize]),
                    );
                    let scale = beta(ai, j1, &fac) * beta(aj, j2, &fac);
                    let outer = p2_power_integral(
                        k - 1,
                        bi + bj - j1 - j2,
                        ai + aj + 2 * j1 + 2 * j2 + 2,
                        &fac,
                    );
                    v2 += choose * scale * outer;
                }
            }
            v2 *= BigRational::from_integer(BigInt::from(k));
            m1[i][j] = v1.clone();
            m1[j][i] = v1;
            m2[i][j] = v2.clone();
            m2[j][i] = v2;
        }
    }
    QuadraticFormPair { basis: basis.clone(), m1, m2 }
}

impl QuadraticFormPair {
    /// Exact quadratic form values `(v' M1 v, v' M2 v)` of a rational vector.
    pub fn quadratic_values(&self, v: &[BigRational]) -> (BigRational, BigRational) {
        let n = self.basis.len();
        assert_eq!(v.len(), n);
        let mut q1 = BigRational::zero();
        let mut q2 = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                let w = &v[i] * &v[j];
                q1 += &self.m1[i][j] * &w;
                q2 += &self.m2[i][j] * &w;
            }
        }
        (q1, q2)
    }

    /// Certifies positive definiteness of `M1` by exact fraction-free
    /// (Bareiss) elimination: all leading principal minors must be positive.
    pub fn certify_m1_positive_definite(&self) -> Result<()> {
        let n = self.basis.len();
        // clear denominators: every entry times (k + 2 deg)! is integral
        let fac = factorials(self.basis.k + 2 * self.basis.degree_bound as usize);
        let scale = fac.last().unwrap();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let scaled = &self.m1[i][j] * BigRational::from_integer(scale.clone());
                        if !scaled.is_integer() {
                            // fall back to exact rational times lcm of this row later;
                            // with the standard basis this does not happen
                            panic!("unexpected non-integral scaled Gram entry");
                        }
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        for p in 0..n {
            if a[p][p].is_zero() || a[p][p].is_negative() {
                return Err(Error::SingularBasis(format!(
                    "leading principal minor {} of the Gram matrix is not positive",
                    p + 1
                )));
            }
            for i in p + 1..n {
                for j in p + 1..n {
                    let num = &a[p][p] * &a[i][j] - &a[i][p] * &a[p][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[p][p].clone();
        }
        Ok(())
    }
}

/// Ratio of two big integers as f64, robust to magnitudes far outside the
/// float range as long as the ratio itself is representable.
pub(crate) fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    if num.is_zero() {
        return 0.0;
    }
    let scaled: BigInt = (num << 128) / den;
    scaled.to_f64().map_or(f64::NAN, |v| v * 2f64.powi(-128))
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    big_ratio_to_f64(r.numer(), r.denom())
}
