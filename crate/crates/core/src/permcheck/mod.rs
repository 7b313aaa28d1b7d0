//! Permutation tests for `D_{n,k}(a,·)` and sweeps over the PP theorems.

mod theorems;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{ExtField, FieldSpec, FiniteField, Field, Fq, GfError};
use crate::rdpoly::{classify_shape, eval_recurrence, functional_value, quarter_value, RdpError, RdpParams, Shape};

pub use theorems::{verify_theorem, AuxCheck, DEFAULT_MAX_Q, GridPoint, PointResult, TheoremGrid, TheoremId, TheoremReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error(transparent)]
    Rdp(#[from] RdpError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("grid point GF({q}) exceeds the size bound q <= {max}")]
    GridTooLarge { q: u64, max: u64 },
    #[error("the monomial test needs n >= 1")]
    ZeroExponent,
    #[error("the 2-to-1 criterion needs n >= 1")]
    ZeroIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    BruteForce,
    MonomialGcd,
    TwoToOne,
    TheoremClosedForm,
}

/// Evidence against a permutation verdict. Coordinates are constant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two inputs with the same image.
    Collision { x1: Vec<u64>, x2: Vec<u64> },
    /// A domain point of GF(q^2) whose fiber does not have exactly two points.
    Fiber { y: Vec<u64>, size: usize },
    /// A domain point of GF(q^2) mapping to the value taken at `x = 1/4`.
    ExcludedValue { y: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsSummary {
    pub n: String,
    pub k: u64,
    pub a: Vec<u64>,
}

impl ParamsSummary {
    pub fn new(field: &Field, params: &RdpParams) -> Self {
        ParamsSummary { n: params.n.to_string(), k: params.k, a: field.coords(params.a) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPReport {
    pub verdict: bool,
    pub criterion: Criterion,
    pub witness: Option<Witness>,
    pub field: FieldSpec,
    pub params: Option<ParamsSummary>,
}

/// First `(x1, x2)` in enumeration order with `f(x1) = f(x2)`, if any.
pub fn first_collision(field: &Field, f: impl Fn(Fq) -> Fq) -> Option<(Fq, Fq)> {
    let mut seen: Vec<Option<Fq>> = vec![None; field.q() as usize];
    for x in field.elements() {
        let slot = &mut seen[f(x).index() as usize];
        if let Some(prev) = *slot {
            return Some((prev, x));
        }
        *slot = Some(x);
    }
    None
}

/// Evaluates `f` on all of GF(q); a permutation iff no collision occurs.
pub fn is_pp_bruteforce(field: &Field, f: impl Fn(Fq) -> Fq) -> PPReport {
    let collision = first_collision(field, f);
    PPReport {
        verdict: collision.is_none(),
        criterion: Criterion::BruteForce,
        witness: collision.map(|(a, b)| Witness::Collision { x1: field.coords(a), x2: field.coords(b) }),
        field: field.spec().clone(),
        params: None,
    }
}

/// Brute-force test of `x ↦ D_{n,k}(a,x)`.
pub fn rdp_pp_bruteforce(field: &Field, params: &RdpParams) -> Result<PPReport, PermError> {
    let values = field.elements().map(|x| eval_recurrence(field, params, x)).collect::<Result<Vec<_>, _>>()?;
    let mut report = is_pp_bruteforce(field, |x| values[x.index() as usize]);
    report.params = Some(ParamsSummary::new(field, params));
    Ok(report)
}

fn gcd_is_one(m: &BigUint, q: u64) -> bool {
    m.gcd(&BigUint::from(q - 1)).is_one()
}

/// `x^n` permutes GF(q) iff `gcd(n, q-1) = 1`.
pub fn monomial_pp(n: &BigUint, field: &Field) -> Result<PPReport, PermError> {
    if n.is_zero() {
        return Err(PermError::ZeroExponent);
    }
    Ok(PPReport {
        verdict: gcd_is_one(n, field.q()),
        criterion: Criterion::MonomialGcd,
        witness: None,
        field: field.spec().clone(),
        params: None,
    })
}

/// The domain `(GF(q) ∪ V) \ {1/2}`: GF(q) in enumeration order, then `V`.
pub fn two_to_one_domain(ext: &ExtField) -> Result<Vec<crate::gf::Fq2>, PermError> {
    let base = ext.base();
    let half = ext.embed(base.half()?);
    let mut domain: Vec<_> = base.elements().map(|x| ext.embed(x)).filter(|&y| y != half).collect();
    domain.extend(ext.enumerate_v().into_iter().filter(|&y| y != half));
    Ok(domain)
}

/// `D_{n,k}(1,·)` permutes GF(q) iff
/// `g(y) = k·(y^n(1-y) - y(1-y)^n)/(2y-1) + y^n + (1-y)^n` is exactly 2-to-1
/// on `(GF(q) ∪ V) \ {1/2}` and never takes the value `(k(n-1)+2)/2^n`.
pub fn is_pp_two_to_one(field: &Field, n: &BigUint, k: u64) -> Result<PPReport, PermError> {
    if n.is_zero() {
        return Err(PermError::ZeroIndex);
    }
    let ext = ExtField::new(field)?;
    let domain = two_to_one_domain(&ext)?;
    let k = k % field.p();
    let excluded = ext.embed(quarter_value(field, n, k)?);
    let values: Vec<_> = domain
        .iter()
        .map(|&y| functional_value(&ext, n, k, y).expect("domain excludes 1/2"))
        .collect();
    let report = |verdict, witness| PPReport {
        verdict,
        criterion: Criterion::TwoToOne,
        witness,
        field: field.spec().clone(),
        params: Some(ParamsSummary { n: n.to_string(), k, a: field.coords(field.one()) }),
    };
    if let Some(i) = values.iter().position(|&v| v == excluded) {
        return Ok(report(false, Some(Witness::ExcludedValue { y: ext.coords(domain[i]) })));
    }
    let mut fibers: HashMap<_, usize> = HashMap::new();
    for &v in &values {
        *fibers.entry(v).or_default() += 1;
    }
    if let Some(i) = values.iter().position(|v| fibers[v] != 2) {
        let size = fibers[&values[i]];
        return Ok(report(false, Some(Witness::Fiber { y: ext.coords(domain[i]), size })));
    }
    Ok(report(true, None))
}

/// Verdict read off the closed forms, when one of the PP theorems covers
/// `(n, k)` over this field. `None` when no stated result applies.
pub fn predict_by_theorem(field: &Field, params: &RdpParams) -> Option<PPReport> {
    let q = field.q();
    let p = field.p();
    let k = params.k;
    let verdict = if params.a == field.zero() {
        let (l, r) = params.n.div_rem(&BigUint::from(2u32));
        Some(k != 2 % p && r.is_zero() && gcd_is_one(&l, q))
    } else if params.a != field.one() || p == 2 {
        None
    } else {
        let (shape, l) = classify_shape(p, &params.n)?;
        let pl = BigUint::from(p).pow(l);
        let low = (&pl - 1u32) / 2u32;
        let high = (&pl + 1u32) / 2u32;
        match shape {
            Shape::PrimePower => Some(k != 0 && gcd_is_one(&low, q)),
            Shape::PrimePowerPlusOne => match k {
                0 => Some(gcd_is_one(&high, q)),
                _ if k == 2 % p => Some(gcd_is_one(&low, q)),
                _ => Some(l == 0),
            },
            Shape::PrimePowerPlusTwo if l == 0 => Some(k != 3 % p),
            Shape::PrimePowerPlusTwo if k == 2 % p => Some(false),
            Shape::PrimePowerPlusTwo if k == 0 && l == field.e() => Some(q % 3 == 1),
            Shape::PrimePowerPlusTwo => None,
        }
    }?;
    Some(PPReport {
        verdict,
        criterion: Criterion::TheoremClosedForm,
        witness: None,
        field: field.spec().clone(),
        params: Some(ParamsSummary::new(field, params)),
    })
}
