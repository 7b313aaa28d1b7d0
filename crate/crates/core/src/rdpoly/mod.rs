//! Evaluators and polynomial forms of `D_{n,k}(a,x)`.
//!
//! Independent routes to the same values:
//! - [`eval_definition`]: integer coefficients of the first and second kinds,
//!   combined as `k·E_n - (k-1)·D_n` and reduced mod p;
//! - [`eval_recurrence`]: `D_n = D_{n-1} - x·D_{n-2}` from `D_0 = 2-k`, `D_1 = 1`;
//! - [`eval_functional`]: the substitution `x = y(1-y)` in GF(q^2);
//! - [`eval_via_fnk`]: the expansion `(1/2)^n·f_{n,k}(1-4x)`;
//! - [`closed_form`] for `n = p^l, p^l+1, p^l+2`, [`genfun_coeffs`] and
//!   [`as_polynomial`].

mod closed;
mod definition;
mod fnk;
mod functional;
mod genfun;
mod recurrence;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gf::{FiniteField, Field, Fq, GfError};

pub use closed::{classify_shape, closed_form, closed_form_pl2_in_u, closed_form_with, Shape};
pub use definition::{char2_eval, dickson_rows, eval_definition, DicksonRows, MAX_DEFINITION_INDEX};
pub use fnk::{eval_via_fnk, fnk_coeffs, fnk_specialize, FnkIdentityReport, IdentityCheck};
pub use functional::{eval_functional, functional_value};
pub use genfun::{as_polynomial, as_polynomial_by_doubling, as_polynomial_linear, genfun_coeffs};
pub use recurrence::{eval_a0, eval_recurrence, eval_recurrence_unreduced, quarter_value};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdpError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("this evaluator is defined for a = 1 only")]
    RequiresUnitParameter,
    #[error("this evaluator is defined for a = 0 only")]
    RequiresZeroParameter,
    #[error("characteristic-2 evaluation requested over a field of characteristic {0}")]
    RequiresCharacteristicTwo(u64),
    #[error("index n = {0} is too large for this evaluator")]
    IndexTooLarge(BigUint),
    #[error("n = {0} is not of the form p^l, p^l+1 or p^l+2")]
    UnsupportedShape(BigUint),
    #[error("functional expression left GF(q); arithmetic inconsistency")]
    LeftBaseField,
    #[error("identity report defined for k in {{0,1,2,3}}, got {0}")]
    UnsupportedKind(u64),
    #[error("the k = 3 identity needs even n, got {0}")]
    OddIndex(u64),
    #[error("generating-function coefficient count must be positive")]
    EmptySeries,
}

/// Selects one polynomial `D_{n,k}(a, ·)`. `k` is stored reduced into
/// `[0, p-1]`; only its residue matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdpParams {
    pub n: BigUint,
    pub k: u64,
    pub a: Fq,
    k_input: BigInt,
}

impl RdpParams {
    pub fn new(field: &Field, n: impl Into<BigUint>, k: impl Into<BigInt>, a: Fq) -> Self {
        let k_input = k.into();
        let k = k_input.mod_floor(&BigInt::from(field.p())).to_u64().unwrap();
        RdpParams { n: n.into(), k, a, k_input }
    }

    /// Parameter `a = 1`.
    pub fn unit(field: &Field, n: impl Into<BigUint>, k: impl Into<BigInt>) -> Self {
        RdpParams::new(field, n, k, field.one())
    }

    /// The kind as given before reduction mod p.
    pub fn k_input(&self) -> &BigInt {
        &self.k_input
    }

    pub fn kind_was_reduced(&self) -> bool {
        self.k_input != BigInt::from(self.k)
    }

    pub fn n_u64(&self) -> Option<u64> {
        self.n.to_u64()
    }

    pub fn kind(&self, field: &Field) -> Fq {
        field.from_u64(self.k)
    }

    pub fn is_unit(&self) -> bool {
        self.a == Fq(1)
    }

    pub(crate) fn require_unit(&self) -> Result<(), RdpError> {
        if self.a.index() == 1 {
            Ok(())
        } else {
            Err(RdpError::RequiresUnitParameter)
        }
    }
}

/// `2 - k` in the field.
pub(crate) fn initial_value(field: &Field, k: u64) -> Fq {
    field.sub(field.from_u64(2), field.from_u64(k))
}
