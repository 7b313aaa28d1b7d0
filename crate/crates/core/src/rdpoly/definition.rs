use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{RdpError, RdpParams};
use crate::cache::Memo;
use crate::combin::binomial;
use crate::gf::{FiniteField, Field, Fq};

/// Largest `n` accepted by the coefficient-based evaluators.
pub const MAX_DEFINITION_INDEX: u64 = 1 << 20;

/// Integer weights of `(-x)^i a^{n-2i}`, `i = 0..=n/2`, for the reversed
/// Dickson polynomials of the first kind (`n/(n-i)·C(n-i,i)`) and the second
/// kind (`C(n-i,i)`). At `n = 0` they are the constants 2 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicksonRows {
    pub first: Vec<BigInt>,
    pub second: Vec<BigInt>,
}

fn build_rows(n: u64) -> DicksonRows {
    if n == 0 {
        return DicksonRows { first: vec![BigInt::from(2)], second: vec![BigInt::from(1)] };
    }
    let mut first = Vec::with_capacity(n as usize / 2 + 1);
    let mut second = Vec::with_capacity(n as usize / 2 + 1);
    for i in 0..=n / 2 {
        let c = binomial(n - i, i);
        // exact: n/(n-i)·C(n-i,i) = C(n-i,i) + C(n-i-1,i-1)
        first.push(&c * n / (n - i));
        second.push(c);
    }
    DicksonRows { first, second }
}

fn rows_memo() -> &'static Memo<u64, DicksonRows> {
    static MEMO: OnceLock<Memo<u64, DicksonRows>> = OnceLock::new();
    MEMO.get_or_init(|| Memo::new(2048))
}

/// Residues of the two integer rows modulo p.
struct ResidueRows {
    first: Vec<u64>,
    second: Vec<u64>,
}

fn residue_memo() -> &'static Memo<(u64, u64), ResidueRows> {
    static MEMO: OnceLock<Memo<(u64, u64), ResidueRows>> = OnceLock::new();
    MEMO.get_or_init(|| Memo::new(8192))
}

/// Integer coefficient rows of `D_n` and `E_n` (memoized).
pub fn dickson_rows(n: u64) -> Arc<DicksonRows> {
    rows_memo().get_or_insert_with(&n, || build_rows(n))
}

fn residue_rows(n: u64, p: u64) -> Arc<ResidueRows> {
    residue_memo().get_or_insert_with(&(n, p), || {
        let rows = dickson_rows(n);
        let modp = BigInt::from(p);
        let reduce = |v: &Vec<BigInt>| -> Vec<u64> {
            v.iter().map(|c| (c % &modp).to_u64().unwrap()).collect()
        };
        ResidueRows { first: reduce(&rows.first), second: reduce(&rows.second) }
    })
}

fn definition_index(params: &RdpParams) -> Result<u64, RdpError> {
    params
        .n_u64()
        .filter(|&n| n <= MAX_DEFINITION_INDEX)
        .ok_or_else(|| RdpError::IndexTooLarge(params.n.clone()))
}

/// `Σ_i w_i·(-x)^i·a^{n-2i}` for residue weights `w`.
fn evaluate_weights(field: &Field, n: u64, weights: &[Fq], a: Fq, x: Fq) -> Fq {
    let m = weights.len() - 1;
    let a2 = field.square(a);
    // a^{n-2i} for i = m down to 0
    let mut apow = vec![field.zero(); m + 1];
    apow[m] = field.pow(a, n - 2 * m as u64);
    for i in (0..m).rev() {
        apow[i] = field.mul(apow[i + 1], a2);
    }
    let t = field.neg(x);
    let mut tpow = field.one();
    let mut acc = field.zero();
    for (i, &w) in weights.iter().enumerate() {
        acc = field.add(acc, field.mul(w, field.mul(tpow, apow[i])));
        tpow = field.mul(tpow, t);
    }
    acc
}

/// `D_{n,k}(a,x)` from the integer coefficients: `k·E_n - (k-1)·D_n`
/// assembled over the integers, then reduced mod p. Valid in every
/// characteristic and for every `a`; never divides mod p.
pub fn eval_definition(field: &Field, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    let n = definition_index(params)?;
    let rows = residue_rows(n, field.p());
    let k = params.kind(field);
    let km1 = field.sub(k, field.one());
    let weights: Vec<Fq> = rows
        .second
        .iter()
        .zip(&rows.first)
        .map(|(&e, &d)| field.sub(field.mul(k, Fq(e)), field.mul(km1, Fq(d))))
        .collect();
    Ok(evaluate_weights(field, n, &weights, params.a, x))
}

/// Characteristic 2: `D_{n,k} = E_n` for odd `k` and `D_n` for even `k`.
pub fn char2_eval(field: &Field, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    if field.p() != 2 {
        return Err(RdpError::RequiresCharacteristicTwo(field.p()));
    }
    let n = definition_index(params)?;
    let rows = residue_rows(n, 2);
    let row = if params.k % 2 == 1 { &rows.second } else { &rows.first };
    let weights: Vec<Fq> = row.iter().map(|&w| Fq(w)).collect();
    Ok(evaluate_weights(field, n, &weights, params.a, x))
}
