//! Sums `𝒟_{n,k} = Σ_{a∈GF(q)} D_{n,k}(1,a)` for `1 ≤ n ≤ q²-1`.
//!
//! With `d_n = 𝒟_{n,k} - (k(n-1)+2)/2^n` and
//! `Σ_j b_j z^j = [2-k+(k-1)z]·(-1-(z-z^q)^{q-1})`, the generating function
//! gives `(z^q - z^{q-1} - 1)·Σ_n d_n z^n = Σ_i c_i z^i` where
//!
//! ```text
//! Σ_i c_i z^i = (1+z^{q-1}-z^q)·Σ_{i=1}^{q²-1} z^i
//!             - (z^{2(q-1)} + Σ_{m=1}^{q-1} (z-1)^{q-1-m} z^{2m} 4^{-m})·Σ_j b_j z^j
//! ```
//!
//! Everything lives in the prime field GF(p).

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combin::binomial_mod_p;
use crate::gf::{FieldSpec, FiniteField, Field, Fq, GfError};
use crate::rdpoly::{eval_recurrence, quarter_value, RdpError, RdpParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharsumError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Rdp(#[from] RdpError),
    #[error("b_{j}: case formula gives {formula}, product expansion gives {product}")]
    BMismatch { j: usize, formula: u64, product: u64 },
    #[error("right-hand side has nonzero constant term {0}")]
    NonzeroConstant(u64),
    #[error("right-hand side has degree {0}, above q^2+q-1")]
    DegreeOverflow(usize),
    #[error("d_{n}: interior recurrence gives {interior}, tail formula gives {tail}")]
    TailMismatch { n: usize, interior: u64, tail: u64 },
    #[error("closed sum formula disagrees with the d-vector at n = {n}: {formula} vs {derived}")]
    TheoremMismatch { n: usize, formula: u64, derived: u64 },
}

/// `Σ_{a∈GF(q)} a^m` by direct summation, with `0^0 = 1`.
pub fn power_sum(field: &Field, m: u64) -> Fq {
    field.elements().fold(field.zero(), |acc, a| field.add(acc, field.pow(a, m)))
}

fn prime_field(field: &Field) -> Result<Field, CharsumError> {
    field.require_odd()?;
    Ok(Field::new(field.p(), 1, None)?)
}

fn b_by_cases(fp: &Field, q: usize, k: u64) -> Vec<Fq> {
    let p = fp.p();
    let kk = fp.from_u64(k);
    let two_minus_k = fp.sub(fp.from_u64(2), kk);
    let k_minus_one = fp.sub(kk, fp.one());
    (0..=q * q - q + 1)
        .map(|j| {
            let (alpha, beta) = (j % q, j / q);
            let signed_binom = || {
                let c = fp.from_u64(binomial_mod_p(q as u64 - 1, beta as u64, p));
                if beta % 2 == 0 { fp.neg(c) } else { c }
            };
            match alpha + beta {
                s if s == q - 1 => fp.mul(signed_binom(), two_minus_k),
                s if s == q => fp.mul(signed_binom(), k_minus_one),
                1 => fp.neg(k_minus_one),
                0 => fp.neg(two_minus_k),
                _ => fp.zero(),
            }
        })
        .collect()
}

fn b_by_product(fp: &Field, q: usize, k: u64) -> Vec<Fq> {
    // (z - z^q)^{q-1} by repeated multiplication
    let mut t = vec![fp.one()];
    for _ in 0..q - 1 {
        let mut next = vec![fp.zero(); t.len() + q];
        for (i, &c) in t.iter().enumerate().filter(|(_, c)| c.index() != 0) {
            next[i + 1] = fp.add(next[i + 1], c);
            next[i + q] = fp.sub(next[i + q], c);
        }
        t = next;
    }
    let mut factor: Vec<Fq> = t.into_iter().map(|c| fp.neg(c)).collect();
    factor[0] = fp.sub(factor[0], fp.one());
    let kk = fp.from_u64(k);
    let lin = [fp.sub(fp.from_u64(2), kk), fp.sub(kk, fp.one())];
    let mut out = vec![fp.zero(); factor.len() + 1];
    for (i, &c) in factor.iter().enumerate() {
        for (j, &l) in lin.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(c, l));
        }
    }
    out.truncate(q * q - q + 2);
    out
}

/// `b_0, ..., b_{q²-q+1}` from the digit-case formula, checked against the
/// expansion of `[2-k+(k-1)z]·(-1-(z-z^q)^{q-1})`.
pub fn b_coeffs(field: &Field, k: u64) -> Result<Vec<u64>, CharsumError> {
    let fp = prime_field(field)?;
    let q = field.q() as usize;
    let k = k % field.p();
    let cases = b_by_cases(&fp, q, k);
    let product = b_by_product(&fp, q, k);
    if let Some(j) = (0..cases.len()).find(|&j| cases[j] != product[j]) {
        return Err(CharsumError::BMismatch { j, formula: cases[j].index(), product: product[j].index() });
    }
    Ok(cases.into_iter().map(Fq::index).collect())
}

fn c_from_b(fp: &Field, q: usize, b: &[u64]) -> Result<Vec<u64>, CharsumError> {
    let top = q * q + q - 1;
    let mut rhs = vec![fp.zero(); top + q + 2];
    // (1 + z^{q-1} - z^q)·Σ_{i=1}^{q²-1} z^i
    for i in 1..q * q {
        rhs[i] = fp.add(rhs[i], fp.one());
        rhs[i + q - 1] = fp.add(rhs[i + q - 1], fp.one());
        rhs[i + q] = fp.sub(rhs[i + q], fp.one());
    }
    // z^{2(q-1)} + Σ_m (z-1)^{q-1-m} z^{2m} 4^{-m}
    let mut weight = vec![fp.zero(); 2 * q - 1];
    weight[2 * (q - 1)] = fp.one();
    let inv4 = fp.quarter()?;
    let mut binom = vec![fp.one()]; // (z-1)^r, r = q-1-m
    for m in (1..q).rev() {
        let scale = fp.pow(inv4, m as u64);
        for (i, &c) in binom.iter().enumerate() {
            weight[i + 2 * m] = fp.add(weight[i + 2 * m], fp.mul(c, scale));
        }
        let mut next = vec![fp.zero(); binom.len() + 1];
        for (i, &c) in binom.iter().enumerate() {
            next[i + 1] = fp.add(next[i + 1], c);
            next[i] = fp.sub(next[i], c);
        }
        binom = next;
    }
    for (j, &bj) in b.iter().enumerate().filter(|(_, &v)| v != 0) {
        for (i, &w) in weight.iter().enumerate() {
            let t = j + i;
            if t >= rhs.len() {
                rhs.resize(t + 1, fp.zero());
            }
            rhs[t] = fp.sub(rhs[t], fp.mul(Fq(bj), w));
        }
    }
    if rhs[0].index() != 0 {
        return Err(CharsumError::NonzeroConstant(rhs[0].index()));
    }
    if let Some(deg) = (top + 1..rhs.len()).rev().find(|&i| rhs[i].index() != 0) {
        return Err(CharsumError::DegreeOverflow(deg));
    }
    Ok(rhs[1..=top].iter().map(|c| c.index()).collect())
}

/// `c_1, ..., c_{q²+q-1}` (element `i-1` holds `c_i`).
pub fn c_coeffs(field: &Field, k: u64) -> Result<Vec<u64>, CharsumError> {
    let fp = prime_field(field)?;
    let b = b_coeffs(field, k)?;
    c_from_b(&fp, field.q() as usize, &b)
}

/// All vectors for one `(GF(q), k)`. `b` is 0-based; `c`, `d` and `sums`
/// are 1-based through the accessors. Values are prime-field residues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumTable {
    pub field: FieldSpec,
    pub k: u64,
    pub b: Vec<u64>,
    c: Vec<u64>,
    d: Vec<u64>,
    sums: Vec<u64>,
}

impl SumTable {
    pub fn q(&self) -> usize {
        self.field.q as usize
    }

    pub fn c(&self, i: usize) -> u64 {
        self.c[i - 1]
    }

    pub fn d(&self, n: usize) -> u64 {
        self.d[n - 1]
    }

    /// `𝒟_{n,k}` as a prime-field residue.
    pub fn sum_residue(&self, n: usize) -> u64 {
        self.sums[n - 1]
    }

    /// `𝒟_{n,k}` as an element of GF(q).
    pub fn sum(&self, n: usize) -> Fq {
        Fq(self.sums[n - 1])
    }

    pub fn c_vec(&self) -> &[u64] {
        &self.c
    }

    pub fn d_vec(&self) -> &[u64] {
        &self.d
    }

    pub fn sums_vec(&self) -> &[u64] {
        &self.sums
    }
}

fn quarter_values(fp: &Field, count: usize, k: u64) -> Result<Vec<Fq>, CharsumError> {
    (1..=count).map(|n| Ok(quarter_value(fp, &BigUint::from(n), k)?)).collect()
}

/// Solves for `d` by comparing coefficients: `d_j = -c_j` (`j < q`),
/// `d_q = c_1 - c_q`, then `d_i = d_{i-q} - d_{i-q+1} - c_i` for increasing
/// `i`. The last `q` entries also follow from `d_{q²-q+j} = Σ_{i=j}^{q-1}
/// c_{q²+i}`; both routes are computed and must agree.
fn solve_d(fp: &Field, q: usize, c: &[u64]) -> Result<Vec<Fq>, CharsumError> {
    let n_max = q * q - 1;
    let cc = |i: usize| Fq(c[i - 1]);
    let mut d = vec![fp.zero(); n_max + 1];
    for j in 1..q {
        d[j] = fp.neg(cc(j));
    }
    d[q] = fp.sub(cc(1), cc(q));
    for i in q + 1..=n_max {
        d[i] = fp.sub(fp.sub(d[i - q], d[i - q + 1]), cc(i));
    }
    let mut tail = fp.zero();
    for j in (0..q).rev() {
        tail = fp.add(tail, cc(q * q + j));
        let n = q * q - q + j;
        if tail != d[n] {
            return Err(CharsumError::TailMismatch { n, interior: d[n].index(), tail: tail.index() });
        }
    }
    d.remove(0);
    Ok(d)
}

/// `𝒟` rebuilt from the closed sum formulas, each step using earlier sums
/// from the same formulas and the constants they state.
fn sums_by_formulas(fp: &Field, q: usize, k: u64, c: &[u64]) -> Result<Vec<Fq>, CharsumError> {
    let cc = |i: usize| Fq(c[i - 1]);
    let kk = fp.from_u64(k);
    let two = fp.from_u64(2);
    let pow2 = |n: usize| fp.pow2_big(&BigUint::from(n));
    let two_q = pow2(q)?;
    let two_q1 = pow2(q - 1)?;
    let n_max = q * q - 1;
    let mut s = vec![fp.zero(); n_max + 1];
    for j in 1..q {
        let num = fp.add(fp.mul(kk, fp.from_u64(j as u64 - 1)), two);
        s[j] = fp.add(fp.neg(cc(j)), fp.div(num, pow2(j)?).unwrap());
    }
    s[q] = fp.add(fp.sub(cc(1), cc(q)), fp.div(fp.sub(two, kk), two_q).unwrap());
    for l in 1..=q - 2 {
        if l >= 2 {
            let n = l * q;
            let num = fp.add(fp.mul(fp.sub(kk, two), fp.sub(two_q, fp.one())), two_q);
            let base = fp.sub(fp.sub(s[n - q], s[n - q + 1]), cc(n));
            s[n] = fp.add(base, fp.div(num, pow2(n)?).unwrap());
        }
        for j in 1..q {
            let n = l * q + j;
            let kj2 = fp.add(fp.mul(kk, fp.from_u64(j as u64)), two);
            let factor = fp.add(fp.sub(fp.one(), two_q), two_q1);
            let num = fp.add(fp.mul(kj2, factor), fp.mul(kk, fp.sub(two_q, fp.one())));
            let base = fp.sub(fp.sub(s[n - q], s[n - q + 1]), cc(n));
            s[n] = fp.add(base, fp.div(num, pow2(n)?).unwrap());
        }
    }
    for j in 0..q {
        let n = q * q - q + j;
        let tail = (j..q).fold(fp.zero(), |acc, i| fp.add(acc, cc(q * q + i)));
        let num = fp.add(fp.mul(kk, fp.sub(fp.from_u64(j as u64), fp.one())), two);
        s[n] = fp.add(tail, fp.div(num, pow2(n)?).unwrap());
    }
    s.remove(0);
    Ok(s)
}

/// Builds the full table from `b` and `c`, derives `𝒟_n = d_n + (k(n-1)+2)/2^n`
/// and checks it against the closed sum formulas.
pub fn sums_via_recurrence(field: &Field, k: u64) -> Result<SumTable, CharsumError> {
    let fp = prime_field(field)?;
    let q = field.q() as usize;
    let k = k % field.p();
    let b = b_coeffs(field, k)?;
    let c = c_from_b(&fp, q, &b)?;
    let d = solve_d(&fp, q, &c)?;
    let quarter = quarter_values(&fp, q * q - 1, k)?;
    let sums: Vec<Fq> = d.iter().zip(&quarter).map(|(&dn, &t)| fp.add(dn, t)).collect();
    let formulas = sums_by_formulas(&fp, q, k, &c)?;
    if let Some(i) = (0..sums.len()).find(|&i| sums[i] != formulas[i]) {
        return Err(CharsumError::TheoremMismatch {
            n: i + 1,
            formula: formulas[i].index(),
            derived: sums[i].index(),
        });
    }
    Ok(SumTable {
        field: field.spec().clone(),
        k,
        b,
        c,
        d: d.into_iter().map(Fq::index).collect(),
        sums: sums.into_iter().map(Fq::index).collect(),
    })
}

/// `Σ_{a∈GF(q)} D_{n,k}(1,a)` by evaluating at every point.
pub fn sums_bruteforce(field: &Field, k: u64, n: &BigUint) -> Result<Fq, CharsumError> {
    let params = RdpParams::unit(field, n.clone(), k);
    let mut acc = field.zero();
    for a in field.elements() {
        acc = field.add(acc, eval_recurrence(field, &params, a)?);
    }
    Ok(acc)
}

/// `𝒟_1, ..., 𝒟_{q²-1}` by running the recurrence once per point.
pub fn sums_bruteforce_table(field: &Field, k: u64) -> Result<Vec<Fq>, CharsumError> {
    field.require_odd()?;
    let n_max = (field.q() * field.q() - 1) as usize;
    let k = k % field.p();
    let mut sums = vec![field.zero(); n_max];
    let d0 = field.sub(field.from_u64(2), field.from_u64(k));
    for x in field.elements() {
        let (mut prev, mut cur) = (d0, field.one());
        sums[0] = field.add(sums[0], cur);
        for s in sums.iter_mut().skip(1) {
            let next = field.sub(cur, field.mul(x, prev));
            prev = cur;
            cur = next;
            *s = field.add(*s, cur);
        }
    }
    Ok(sums)
}

/// `(z^q - z^{q-1} - 1)·Σ_n d_n z^n == Σ_i c_i z^i` with `d` taken from
/// brute-force sums.
pub fn residue_identity_holds(field: &Field, k: u64, brute: &[Fq]) -> Result<bool, CharsumError> {
    let fp = prime_field(field)?;
    let q = field.q() as usize;
    let k = k % field.p();
    let c = c_coeffs(field, k)?;
    let quarter = quarter_values(&fp, q * q - 1, k)?;
    let mut lhs = vec![fp.zero(); q * q + q];
    for (idx, (&s, &t)) in brute.iter().zip(&quarter).enumerate() {
        let Some(residue) = field.to_prime(s) else { return Ok(false) };
        let dn = fp.sub(Fq(residue), t);
        let n = idx + 1;
        lhs[n + q] = fp.add(lhs[n + q], dn);
        lhs[n + q - 1] = fp.sub(lhs[n + q - 1], dn);
        lhs[n] = fp.sub(lhs[n], dn);
    }
    Ok(lhs[0].index() == 0 && lhs[1..].iter().map(|v| v.index()).eq(c.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, e: u32) -> Field {
        Field::new(p, e, None).unwrap()
    }

    #[test]
    fn power_sum_rule() {
        let f = gf(5, 1);
        assert_eq!(power_sum(&f, 4), Fq(4));
        assert_eq!(power_sum(&f, 2), Fq(0));
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (2, 3)] {
            let f = gf(p, e);
            let q = f.q();
            assert_eq!(power_sum(&f, 0), f.zero());
            for m in 1..=3 * (q - 1) {
                let expect = if m % (q - 1) == 0 { f.neg(f.one()) } else { f.zero() };
                assert_eq!(power_sum(&f, m), expect, "q={q} m={m}");
            }
        }
    }

    #[test]
    fn b_examples() {
        let f = gf(5, 1);
        for k in 0..5 {
            let b = b_coeffs(&f, k).unwrap();
            assert_eq!(b.len(), 22);
            assert_eq!(Fq(b[0]), f.from_i64(k as i64 - 2));
            assert_eq!(Fq(b[1]), f.from_i64(1 - k as i64));
        }
        assert_eq!(b_coeffs(&f, 3).unwrap()[4], 1);
    }

    #[test]
    fn b_constructions_agree() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = gf(p, e);
            let fp = gf(p, 1);
            let q = f.q() as usize;
            for k in 0..p {
                assert_eq!(b_by_cases(&fp, q, k), b_by_product(&fp, q, k));
            }
        }
    }

    #[test]
    fn c_has_expected_length() {
        let f = gf(5, 1);
        assert_eq!(c_coeffs(&f, 2).unwrap().len(), 29);
    }

    #[test]
    fn table_examples() {
        let f = gf(5, 1);
        let t = sums_via_recurrence(&f, 3).unwrap();
        assert_eq!(t.sum(4), Fq(0));
        assert_eq!(t.sum(8), Fq(1));
        let two_q = f.pow(f.from_u64(2), 5);
        for k in 0..5 {
            let t = sums_via_recurrence(&f, k).unwrap();
            let expect = f.add(
                f.sub(Fq(t.c(1)), Fq(t.c(5))),
                f.div(f.from_i64(2 - k as i64), two_q).unwrap(),
            );
            assert_eq!(t.sum(5), expect);
            let brute = sums_bruteforce(&f, k, &BigUint::from(1u32)).unwrap();
            assert_eq!(brute, f.zero());
        }
    }

    #[test]
    fn table_matches_bruteforce() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = gf(p, e);
            for k in 0..p {
                let t = sums_via_recurrence(&f, k).unwrap();
                let brute = sums_bruteforce_table(&f, k).unwrap();
                for n in 1..(f.q() * f.q()) as usize {
                    assert_eq!(t.sum(n), brute[n - 1], "q={} k={k} n={n}", f.q());
                }
                assert!(residue_identity_holds(&f, k, &brute).unwrap());
            }
        }
    }

    #[test]
    fn single_sum_matches_table() {
        let f = gf(7, 1);
        let table = sums_bruteforce_table(&f, 4).unwrap();
        for n in [1usize, 2, 7, 30, 48] {
            assert_eq!(sums_bruteforce(&f, 4, &BigUint::from(n)).unwrap(), table[n - 1]);
        }
    }

    #[test]
    fn residue_check_rejects_perturbed_sums() {
        let f = gf(5, 1);
        let mut brute = sums_bruteforce_table(&f, 1).unwrap();
        brute[6] = f.add(brute[6], f.one());
        assert!(!residue_identity_holds(&f, 1, &brute).unwrap());
    }

    #[test]
    fn even_characteristic_rejected() {
        let f = gf(2, 2);
        assert!(matches!(sums_via_recurrence(&f, 1), Err(CharsumError::Field(_))));
    }
}
