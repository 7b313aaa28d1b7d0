//! The polynomials `D_{n,k}(a,x)` over GF(q): exact evaluation and checks.
//!
//! `D_{n,k}(a,x) = Σ_i (n-ki)/(n-i)·C(n-i,i)·(-x)^i·a^{n-2i}`, with several
//! independent evaluators, permutation tests and the power-sum machinery
//! for `Σ_{a∈GF(q)} D_{n,k}(1,a)`.
//!
//! - [`gf`]: GF(p^e), GF(q^2), square roots and the set `V`.
//! - [`rdpoly`]: evaluators, closed forms, `f_{n,k}` and the generating function.
//! - [`permcheck`]: permutation tests and theorem verifiers.
//! - [`charsum`]: the coefficient vectors `b`, `c`, `d` and the sum tables.

mod cache;
pub mod charsum;
pub mod combin;
pub mod fpoly;
pub mod gf;
pub mod poly;
pub mod permcheck;
pub mod rdpoly;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use fpoly::FieldPolynomial;
pub use gf::{ExtField, Field, FieldSpec, FiniteField, Fq, Fq2};
pub use poly::{Poly, Scalar};

/// Polynomials with arbitrary-precision integer coefficients.
pub type IntPolynomial = Poly<BigInt>;
/// Polynomials with exact rational coefficients.
pub type RatPolynomial = Poly<BigRational>;
