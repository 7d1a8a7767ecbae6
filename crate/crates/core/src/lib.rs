//! A computational laboratory for the multidimensional Selberg sieve over the
//! integers, the polynomial rings `F_q[t]`, and real quadratic rings of
//! integers.
//!
//! The crate is organized around a small dictionary of ring-agnostic notions
//! (boxes, norms, the phi and Moebius functions, primes) on top of which sit:
//!
//! * admissible-tuple machinery ([`tuples`]), including narrow-tuple search
//!   and lifting of integer tuples into real quadratic rings,
//! * the sieve weight systems and their diagonalizing change of variables,
//!   with brute-force evaluation of the weighted sums and main-term
//!   predictions ([`sieve`]),
//! * exact-rational assembly of the variational quadratic forms on a
//!   symmetric polynomial basis and generalized-eigenvalue lower bounds for
//!   the optimization constant `M_k` ([`variational`]),
//! * gap censuses between monic irreducible polynomials, the twist
//!   construction for monomial gaps, and the brute-force `Z(k,d,n)` checker
//!   ([`gaps`]),
//! * prime elements and bounded-gap prime pairs in real quadratic rings
//!   ([`quadratic`]).

pub mod arith;
pub mod engelsma;
pub mod error;
pub mod ffpoly;
pub mod gaps;
pub mod parallel;
pub mod quadratic;
pub mod ring;
pub mod sieve;
pub mod tuples;
pub mod variational;

pub use error::{Error, Result};
