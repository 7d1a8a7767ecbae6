//! Generalized symmetric-definite eigenvalue solve for the form pair, with
//! exact rational re-verification of the reported bound.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{
    big_ratio_to_f64, build_forms, rational_to_f64, QuadraticFormPair, SymmetricBasis,
};

/// Result of a lower-bound computation for `M_k`.
#[derive(Debug, Clone)]
pub struct MkResult {
    pub k: usize,
    pub degree_bound: u32,
    pub basis_size: usize,
    /// Exact rational Rayleigh quotient of the rounded eigenvector,
    /// reported as f64. A true lower bound for `M_k`.
    pub lower_bound: f64,
    /// The float eigenvalue the solver produced, for diagnostics.
    pub eigenvalue: f64,
    /// Relative residual of the generalized eigenpair.
    pub residual: f64,
    /// Optimal coefficients over the basis generators.
    pub coefficients: Vec<f64>,
}

/// `r_k = ceil(theta * M_k / 2)`.
pub fn r_k(theta: f64, mk: f64) -> Result<u64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::precondition("theta must lie in (0, 1]"));
    }
    if mk <= 0.0 {
        return Err(Error::precondition("the variational bound must be positive"));
    }
    Ok((theta * mk / 2.0).ceil() as u64)
}

/// Power-of-two scale exponent close to `sqrt(value)`, so the rescaled Gram
/// matrices stay exactly representable and exactly invertible.
fn half_log2_exponent(value: &BigRational) -> i64 {
    let nb = value.numer().bits() as i64;
    let db = value.denom().bits() as i64;
    (nb - db) / 2
}

fn shift_rational(value: &BigRational, e: i64) -> BigRational {
    // value * 2^e
    if e >= 0 {
        value * BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        value / BigRational::from_integer(BigInt::one() << (-e) as usize)
    }
}

/// Largest generalized eigenvalue of the pencil `(M2, M1)` over the basis
/// span, followed by exact re-evaluation of the Rayleigh quotient of the
/// rounded eigenvector.
pub fn mk_lower_bound(k: usize, degree_bound: u32) -> Result<MkResult> {
    let basis = SymmetricBasis::standard(k, degree_bound)?;
    let forms = build_forms(&basis);
    forms.certify_m1_positive_definite()?;
    solve_pencil(&forms)
}

pub fn solve_pencil(forms: &QuadraticFormPair) -> Result<MkResult> {
    let basis = &forms.basis;
    let n = basis.len();
    // balance by powers of two near the diagonal square roots
    let exps: Vec<i64> = (0..n)
        .map(|i| half_log2_exponent(&forms.m1[i][i]))
        .collect();
    let to_f64 = |m: &Vec<Vec<BigRational>>, i: usize, j: usize| -> f64 {
        rational_to_f64(&shift_rational(&m[i][j], -(exps[i] + exps[j])))
    };
    let m1 = DMatrix::from_fn(n, n, |i, j| to_f64(&forms.m1, i, j));
    let m2 = DMatrix::from_fn(n, n, |i, j| to_f64(&forms.m2, i, j));

    let eig1 = m1.clone().symmetric_eigen();
    let max_ev = eig1.eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v));
    let min_ev = eig1.eigenvalues.iter().fold(f64::MAX, |a, &v| a.min(v));
    if !(min_ev > 0.0) || min_ev < 1e-13 * max_ev {
        return Err(Error::SingularBasis(format!(
            "Gram spectrum spans [{min_ev:.3e}, {max_ev:.3e}]; reduce the basis"
        )));
    }
    // whitening transform W = Q diag(1/sqrt(ev))
    let mut w = eig1.eigenvectors.clone();
    for (c, &ev) in eig1.eigenvalues.iter().enumerate() {
        let s = ev.sqrt().recip();
        for r in 0..n {
            w[(r, c)] *= s;
        }
    }
    let mut b = w.transpose() * &m2 * &w;
    // symmetrize against rounding
    b = (&b + b.transpose()) * 0.5;
    let eig2 = b.symmetric_eigen();
    let (best, _) = eig2
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty spectrum");
    let eigenvalue = eig2.eigenvalues[best];
    let u = eig2.eigenvectors.column(best);
    let mut v: DVector<f64> = &w * u;
    // deterministic normalization: largest component becomes +1
    let (imax, _) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .unwrap();
    let scale = v[imax].recip();
    v *= scale;

    let m1v = &m1 * &v;
    let m2v = &m2 * &v;
    let residual = (&m2v - &m1v * eigenvalue).norm() / m1v.norm();

    // exact Rayleigh quotient of the rounded vector in the original basis
    let v_exact: Vec<BigRational> = (0..n)
        .map(|i| {
            let c = BigRational::from_float(v[i]).unwrap_or_else(BigRational::zero);
            shift_rational(&c, -exps[i])
        })
        .collect();
    let (q1, q2) = forms.quadratic_values(&v_exact);
    if !q1.is_positive() {
        return Err(Error::SingularBasis(
            "rounded eigenvector has nonpositive norm under the Gram form".into(),
        ));
    }
    let ratio = q2 / q1;
    let lower_bound = big_ratio_to_f64(ratio.numer(), ratio.denom());

    // coefficients in the original basis, as floats
    let coefficients: Vec<f64> = v_exact.iter().map(rational_to_f64).collect();
    Ok(MkResult {
        k: basis.k(),
        degree_bound: basis.degree_bound(),
        basis_size: n,
        lower_bound,
        eigenvalue,
        residual,
        coefficients,
    })
}
