use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{initial_value, RdpError, RdpParams};
use crate::gf::{FiniteField, Field, Fq};

/// `D_{n,k}(1, 1/4) = (k(n-1)+2)/2^n`.
pub fn quarter_value(field: &Field, n: &BigUint, k: u64) -> Result<Fq, RdpError> {
    let numerator = BigInt::from(k) * (BigInt::from(n.clone()) - 1) + 2;
    let num = field.from_bigint(&numerator);
    let den = field.pow2_big(n)?;
    Ok(field.div(num, den).unwrap())
}

/// `D_{n,k}(0,x)`: zero for odd `n`, `(2-k)(-x)^l` for `n = 2l`.
pub fn eval_a0(field: &Field, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    if params.a != field.zero() {
        return Err(RdpError::RequiresZeroParameter);
    }
    let (l, r) = params.n.div_rem(&BigUint::from(2u32));
    if !r.is_zero() {
        return Ok(field.zero());
    }
    let base = field.pow_big(field.neg(x), &l);
    Ok(field.mul(initial_value(field, params.k), base))
}

/// Runs `D_j = D_{j-1} - x·D_{j-2}` up to `j = n` from `D_0 = 2-k`, `D_1 = 1`.
fn linear_recurrence(field: &Field, n: u64, k: u64, x: Fq) -> Fq {
    let d0 = initial_value(field, k);
    if n == 0 {
        return d0;
    }
    let (mut prev, mut cur) = (d0, field.one());
    for _ in 2..=n {
        let next = field.sub(cur, field.mul(x, prev));
        prev = cur;
        cur = next;
    }
    cur
}

type Mat2<T> = [[T; 2]; 2];

/// `m^e` for a 2x2 matrix over a commutative ring given by closures.
pub(crate) fn mat_pow<T: Clone>(
    m: &Mat2<T>,
    e: &BigUint,
    zero: T,
    one: T,
    add: &impl Fn(&T, &T) -> T,
    mul: &impl Fn(&T, &T) -> T,
) -> Mat2<T> {
    let prod = |a: &Mat2<T>, b: &Mat2<T>| -> Mat2<T> {
        let entry = |i: usize, j: usize| add(&mul(&a[i][0], &b[0][j]), &mul(&a[i][1], &b[1][j]));
        [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
    };
    let mut result = [[one.clone(), zero.clone()], [zero, one]];
    for i in (0..e.bits()).rev() {
        result = prod(&result, &result);
        if e.bit(i) {
            result = prod(&result, m);
        }
    }
    result
}

/// `D_{n,k}(1,x)` by the recurrence with no period reduction, using
/// matrix powering for large `n`. Valid in every characteristic.
pub fn eval_recurrence_unreduced(field: &Field, n: &BigUint, k: u64, x: Fq) -> Fq {
    if let Some(small) = n.to_u64().filter(|&v| v <= 4096) {
        return linear_recurrence(field, small, k, x);
    }
    // [D_n, D_{n-1}]^T = M^{n-1} [D_1, D_0]^T with M = [[1, -x], [1, 0]]
    let m = [[field.one(), field.neg(x)], [field.one(), field.zero()]];
    let e = n - 1u32;
    let pw = mat_pow(&m, &e, field.zero(), field.one(), &|a, b| field.add(*a, *b), &|a, b| {
        field.mul(*a, *b)
    });
    let d0 = initial_value(field, k);
    field.add(pw[0][0], field.mul(pw[0][1], d0))
}

/// `D_{n,k}(a,x)` by the three-term recurrence.
///
/// `a = 0` uses the explicit even/odd form and `a ∉ {0,1}` the scaling
/// `D_{n,k}(a,x) = a^n·D_{n,k}(1, x/a^2)`. In odd characteristic `n ≥ 1` is
/// first reduced into `[1, q^2-1]` (the values repeat with period `q^2-1`
/// away from `x = 1/4`), and `x = 1/4` returns `(k(n-1)+2)/2^n` directly.
pub fn eval_recurrence(field: &Field, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    if params.a == field.zero() {
        return eval_a0(field, params, x);
    }
    if params.a != field.one() {
        let a = params.a;
        let scaled_x = field.div(x, field.square(a)).unwrap();
        let unit = RdpParams { a: field.one(), ..params.clone() };
        let inner = eval_recurrence(field, &unit, scaled_x)?;
        return Ok(field.mul(field.pow_big(a, &params.n), inner));
    }
    if !field.is_odd_characteristic() {
        return Ok(eval_recurrence_unreduced(field, &params.n, params.k, x));
    }
    if x == field.quarter()? {
        return quarter_value(field, &params.n, params.k);
    }
    if params.n.is_zero() {
        return Ok(initial_value(field, params.k));
    }
    let q = field.q();
    let period = BigUint::from(q * q - 1);
    let reduced = ((&params.n - BigUint::one()) % &period).to_u64().unwrap() + 1;
    Ok(linear_recurrence(field, reduced, params.k, x))
}
