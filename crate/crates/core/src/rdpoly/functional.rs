use num_bigint::BigUint;

use super::{quarter_value, RdpError, RdpParams};
use crate::gf::{ExtField, FiniteField, Fq, Fq2};

/// `k·(y^n(1-y) - y(1-y)^n)/(2y-1) + y^n + (1-y)^n` in GF(q^2).
/// `None` at `y = 1/2`, where the quotient is undefined.
pub fn functional_value(ext: &ExtField, n: &BigUint, k: u64, y: Fq2) -> Option<Fq2> {
    let one = ext.one();
    let z = ext.sub(one, y);
    let denom = ext.sub(ext.add(y, y), one);
    let yn = ext.pow_big(y, n);
    let zn = ext.pow_big(z, n);
    let num = ext.sub(ext.mul(yn, z), ext.mul(y, zn));
    let quotient = ext.div(num, denom)?;
    let kk = ext.embed(ext.base().from_u64(k));
    Some(ext.add(ext.mul(kk, quotient), ext.add(yn, zn)))
}

/// `D_{n,k}(1,x)` through `x = y(1-y)`, `y ∈ GF(q^2)`. The root with the
/// smaller coordinate vector is used; either root gives the same value.
/// At `x = 1/4` (double root `y = 1/2`) returns `(k(n-1)+2)/2^n`.
pub fn eval_functional(ext: &ExtField, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    params.require_unit()?;
    let field = ext.base();
    if x == field.quarter()? {
        return quarter_value(field, &params.n, params.k);
    }
    let y = ext.solve_y(x)[0];
    let value = functional_value(ext, &params.n, params.k, y).ok_or(RdpError::LeftBaseField)?;
    ext.to_base(value).ok_or(RdpError::LeftBaseField)
}
