use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{RdpError, RdpParams};
use crate::gf::{FiniteField, Field, Fq};

/// Index families with a closed form in `u = 1 - 4x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// `n = p^l`
    PrimePower,
    /// `n = p^l + 1`
    PrimePowerPlusOne,
    /// `n = p^l + 2`
    PrimePowerPlusTwo,
}

impl Shape {
    pub fn offset(self) -> u32 {
        match self {
            Shape::PrimePower => 0,
            Shape::PrimePowerPlusOne => 1,
            Shape::PrimePowerPlusTwo => 2,
        }
    }
}

fn log_p(p: u64, m: &BigUint) -> Option<u32> {
    if m.is_zero() {
        return None;
    }
    let p = BigUint::from(p);
    let mut r = m.clone();
    let mut l = 0;
    while !r.is_one() {
        let (quot, rem) = r.div_rem(&p);
        if !rem.is_zero() {
            return None;
        }
        r = quot;
        l += 1;
    }
    Some(l)
}

/// First matching shape in the order `p^l`, `p^l+1`, `p^l+2`, with its `l`.
pub fn classify_shape(p: u64, n: &BigUint) -> Option<(Shape, u32)> {
    [Shape::PrimePower, Shape::PrimePowerPlusOne, Shape::PrimePowerPlusTwo]
        .into_iter()
        .find_map(|shape| {
            let off = BigUint::from(shape.offset());
            if *n < off {
                return None;
            }
            log_p(p, &(n - off)).map(|l| (shape, l))
        })
}

struct Pieces {
    u: Fq,
    /// u^{(p^l-1)/2}
    low: Fq,
    /// u^{(p^l+1)/2}
    high: Fq,
    k: Fq,
    half: Fq,
    quarter: Fq,
}

fn pieces(field: &Field, l: u32, k: u64, x: Fq) -> Result<Pieces, RdpError> {
    let half = field.half()?;
    let quarter = field.quarter()?;
    let u = field.sub(field.one(), field.mul(field.from_u64(4), x));
    let pl = BigUint::from(field.p()).pow(l);
    let low = field.pow_big(u, &((&pl - 1u32) / 2u32));
    let high = field.pow_big(u, &((&pl + 1u32) / 2u32));
    Ok(Pieces { u, low, high, k: field.from_u64(k), half, quarter })
}

/// Closed form of `D_{p^l+offset,k}(1,x)` for an explicit shape:
///
/// - `p^l`:   `(k/2)·u^{(p^l-1)/2} + 1 - k/2`
/// - `p^l+1`: `(1/2 - k/4)·u^{(p^l+1)/2} + (k/4)·u^{(p^l-1)/2} + 1/2`
/// - `p^l+2`: `(1/2)·u^{(p^l+1)/2} + (k/2)·x·u^{(p^l-1)/2} - (1 - k/2)·x + 1/2`
///
/// with `u = 1 - 4x` and `u^0 = 1`.
pub fn closed_form_with(field: &Field, shape: Shape, l: u32, k: u64, x: Fq) -> Result<Fq, RdpError> {
    let f = field;
    let Pieces { low, high, k, half, quarter, .. } = pieces(f, l, k, x)?;
    let k_half = f.mul(k, half);
    let k_quarter = f.mul(k, quarter);
    let value = match shape {
        Shape::PrimePower => f.add(f.mul(k_half, low), f.sub(f.one(), k_half)),
        Shape::PrimePowerPlusOne => {
            let lead = f.sub(half, k_quarter);
            f.add(f.add(f.mul(lead, high), f.mul(k_quarter, low)), half)
        }
        Shape::PrimePowerPlusTwo => {
            let a = f.mul(half, high);
            let b = f.mul(k_half, f.mul(x, low));
            let c = f.mul(f.sub(f.one(), k_half), x);
            f.add(f.sub(f.add(a, b), c), half)
        }
    };
    Ok(value)
}

/// The `p^l+2` closed form rewritten in `u = 1 - 4x`:
/// `(1/2 - k/8)·u^{(p^l+1)/2} + (k/8)·u^{(p^l-1)/2} + (1 - k/2)·u/4 + k/8 + 1/4`.
pub fn closed_form_pl2_in_u(field: &Field, l: u32, k: u64, x: Fq) -> Result<Fq, RdpError> {
    let f = field;
    let Pieces { u, low, high, k, half, quarter } = pieces(f, l, k, x)?;
    let k_eighth = f.mul(k, f.mul(half, quarter));
    let k_half = f.mul(k, half);
    let t1 = f.mul(f.sub(half, k_eighth), high);
    let t2 = f.mul(k_eighth, low);
    let t3 = f.mul(f.mul(f.sub(f.one(), k_half), u), quarter);
    Ok(f.add(f.add(f.add(t1, t2), t3), f.add(k_eighth, quarter)))
}

/// Closed-form `D_{n,k}(1,x)` when `n ∈ {p^l, p^l+1, p^l+2}`.
pub fn closed_form(field: &Field, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    params.require_unit()?;
    field.require_odd()?;
    let (shape, l) = classify_shape(field.p(), &params.n)
        .ok_or_else(|| RdpError::UnsupportedShape(params.n.clone()))?;
    closed_form_with(field, shape, l, params.k, x)
}
