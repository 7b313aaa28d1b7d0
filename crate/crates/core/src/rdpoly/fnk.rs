use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{RdpError, RdpParams, MAX_DEFINITION_INDEX};
use crate::cache::Memo;
use crate::combin::binomial;
use crate::gf::{FiniteField, Field, Fq};
use crate::{IntPolynomial, RatPolynomial};

/// `Σ_j C(m, 2j+1) x^j`
fn odd_part(m: u64) -> IntPolynomial {
    IntPolynomial::new((0..=m / 2).map(|j| binomial(m, 2 * j + 1)).collect())
}

/// `Σ_j C(m, 2j) x^j`
fn even_part(m: u64) -> IntPolynomial {
    IntPolynomial::new((0..=m / 2).map(|j| binomial(m, 2 * j)).collect())
}

/// `f_{n,k}(x) = k·Σ_j C(n-1,2j+1)(x^j - x^{j+1}) + 2·Σ_j C(n,2j) x^j`,
/// and `f_{0,k} = 2 - k`.
pub fn fnk_coeffs(n: u64, k: i64) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::constant(BigInt::from(2 - k));
    }
    let a = odd_part(n - 1);
    let one_minus_x = IntPolynomial::new(vec![BigInt::one(), -BigInt::one()]);
    let first = (&a * &one_minus_x).scale(&BigInt::from(k));
    let second = even_part(n).scale(&BigInt::from(2));
    first + second
}

fn residue_memo() -> &'static Memo<(u64, u64, u64), Vec<u64>> {
    static MEMO: OnceLock<Memo<(u64, u64, u64), Vec<u64>>> = OnceLock::new();
    MEMO.get_or_init(|| Memo::new(8192))
}

fn fnk_residues(n: u64, k: u64, p: u64) -> Arc<Vec<u64>> {
    residue_memo().get_or_insert_with(&(n, k, p), || {
        let modp = BigInt::from(p);
        let k = i64::try_from(k).expect("kind fits in i64");
        fnk_coeffs(n, k)
            .coeffs()
            .iter()
            .map(|c| {
                let r = c % &modp;
                let r = if r < BigInt::zero() { r + &modp } else { r };
                r.to_u64().unwrap()
            })
            .collect()
    })
}

/// `D_{n,k}(1,x) = (1/2)^n·f_{n,k}(1-4x)`.
pub fn eval_via_fnk(field: &Field, params: &RdpParams, x: Fq) -> Result<Fq, RdpError> {
    params.require_unit()?;
    field.require_odd()?;
    let n = params
        .n_u64()
        .filter(|&n| n <= MAX_DEFINITION_INDEX)
        .ok_or_else(|| RdpError::IndexTooLarge(params.n.clone()))?;
    let coeffs = fnk_residues(n, params.k, field.p());
    let u = field.sub(field.one(), field.mul(field.from_u64(4), x));
    let fu = coeffs.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, u), Fq(c)));
    let two_n = field.pow2_big(&params.n)?;
    Ok(field.div(fu, two_n).unwrap())
}

/// One polynomial identity with both sides over ℚ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: RatPolynomial,
    pub rhs: RatPolynomial,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: RatPolynomial, rhs: RatPolynomial) -> Self {
        let holds = lhs == rhs;
        IdentityCheck { name, lhs, rhs, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FnkIdentityReport {
    pub n: u64,
    pub k: u64,
    pub steps: Vec<IdentityCheck>,
    pub holds: bool,
}

fn rat(p: &IntPolynomial) -> RatPolynomial {
    p.map(|c| BigRational::from_integer(c.clone()))
}

/// `2^{-e}` for a possibly negative `e`.
fn two_pow(e: i64) -> BigRational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::new(BigInt::one(), mag)
    } else {
        BigRational::from_integer(mag)
    }
}

/// `(1 - x)`
fn one_minus_x() -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(), -BigInt::one()])
}

/// `-x^{n/2} + Σ_{j<n/2} (3n-8j-1)/(n+1)·C(n+1,2j+1) x^j` for even `n`.
fn kind_three_target(n: u64) -> RatPolynomial {
    let half = n / 2;
    let mut coeffs: Vec<BigRational> = (0..half)
        .map(|j| {
            let w = BigRational::new(BigInt::from(3 * n as i64 - 8 * j as i64 - 1), BigInt::from(n + 1));
            w * BigRational::from_integer(binomial(n + 1, 2 * j + 1))
        })
        .collect();
    coeffs.push(-BigRational::one());
    RatPolynomial::new(coeffs)
}

/// Rebuilds the specialisations of `f_{n,k}` for `k ∈ {0,1,2,3}` as exact
/// rational polynomials in `x` (standing for `(1-4x)`), including the
/// intermediate Pascal-identity steps, and reports whether each side matches.
///
/// The final check compares `(1/2)^n·f_{n,k}` with the normalised target:
/// `(1/2)^{n-1}·Σ C(n,2j)x^j` for `k = 0`, `(1/2)^n·Σ C(n+1,2j+1)x^j` for
/// `k = 1`, `(1/2)^{n-1}·Σ C(n,2j+1)x^j` for `k = 2`, and for `k = 3`, `n`
/// even, `(1/2)^n·(-x^{n/2} + Σ_{j<n/2} (3n-8j-1)/(n+1)·C(n+1,2j+1)x^j)`.
/// The Pascal steps need `n ≥ 1` and are skipped at `n = 0`.
pub fn fnk_specialize(n: u64, k: u64) -> Result<FnkIdentityReport, RdpError> {
    if k > 3 {
        return Err(RdpError::UnsupportedKind(k));
    }
    if k == 3 && n % 2 == 1 {
        return Err(RdpError::OddIndex(n));
    }
    let f = rat(&fnk_coeffs(n, k as i64));
    let ni = n as i64;
    let mut steps = Vec::new();
    match k {
        0 => {
            steps.push(IdentityCheck::new("definition", f.clone(), rat(&even_part(n).scale(&BigInt::from(2)))));
            steps.push(IdentityCheck::new(
                "normalised",
                f.scale(&two_pow(ni)),
                rat(&even_part(n)).scale(&two_pow(ni - 1)),
            ));
        }
        1 => {
            if n >= 1 {
                let rhs = &(&odd_part(n - 1) * &one_minus_x()) + &even_part(n).scale(&BigInt::from(2));
                steps.push(IdentityCheck::new("pascal", rat(&odd_part(n + 1)), rat(&rhs)));
            }
            steps.push(IdentityCheck::new(
                "normalised",
                f.scale(&two_pow(ni)),
                rat(&odd_part(n + 1)).scale(&two_pow(ni)),
            ));
        }
        2 => {
            if n >= 1 {
                let rhs = &(&odd_part(n - 1) * &one_minus_x()) + &even_part(n);
                steps.push(IdentityCheck::new("pascal", rat(&odd_part(n)), rat(&rhs)));
            }
            steps.push(IdentityCheck::new(
                "normalised",
                f.scale(&two_pow(ni)),
                rat(&odd_part(n)).scale(&two_pow(ni - 1)),
            ));
        }
        _ => {
            if n >= 2 {
                let l = n / 2;
                let three = BigInt::from(3);
                let lhs = &odd_part(2 * l + 1).scale(&three) - &even_part(2 * l).scale(&BigInt::from(4));
                let chain = &(&odd_part(2 * l - 1) * &one_minus_x()).scale(&three)
                    + &even_part(2 * l).scale(&BigInt::from(2));
                steps.push(IdentityCheck::new("pascal", rat(&lhs), rat(&chain)));
                let weighted = RatPolynomial::new(
                    (0..=l)
                        .map(|j| {
                            let w = BigRational::new(
                                BigInt::from(6 * l as i64 - 8 * j as i64 - 1),
                                BigInt::from(2 * l + 1),
                            );
                            w * BigRational::from_integer(binomial(2 * l + 1, 2 * j + 1))
                        })
                        .collect(),
                );
                steps.push(IdentityCheck::new("weighted", rat(&lhs), weighted));
            }
            steps.push(IdentityCheck::new(
                "normalised",
                f.scale(&two_pow(ni)),
                kind_three_target(n).scale(&two_pow(ni)),
            ));
        }
    }
    let holds = steps.iter().all(|s| s.holds);
    Ok(FnkIdentityReport { n, k, steps, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdpoly::eval_recurrence;

    fn ints(v: &[i64]) -> IntPolynomial {
        IntPolynomial::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn small_values() {
        assert_eq!(fnk_coeffs(2, 3), ints(&[5, -1]));
        assert_eq!(fnk_coeffs(0, 3), ints(&[-1]));
        assert_eq!(fnk_coeffs(0, 7), ints(&[-5]));
        assert_eq!(fnk_coeffs(1, 4), ints(&[2]));
        for n in 1..40u64 {
            for k in -3..8i64 {
                assert_eq!(fnk_coeffs(n, k).coeff(0), BigInt::from(k * (n as i64 - 1) + 2));
            }
        }
    }

    /// `2^n·D_{n,k}(1,(1-t)/4)` over ℤ from the three-term recurrence in `t`:
    /// with `x = (1-t)/4`, `2^n D_n = 2·2^{n-1}D_{n-1} - (1-t)·2^{n-2}D_{n-2}`.
    fn scaled_recurrence(n: usize, k: i64) -> IntPolynomial {
        let mut prev = ints(&[2 - k]);
        if n == 0 {
            return prev;
        }
        let mut cur = ints(&[2]);
        for _ in 2..=n {
            let next = &cur.scale(&BigInt::from(2)) - &(&ints(&[1, -1]) * &prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn matches_recurrence_over_integers() {
        for n in 0..40 {
            for k in 0..6 {
                assert_eq!(fnk_coeffs(n as u64, k), scaled_recurrence(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = Field::new(7, 1, None).unwrap();
        for x in f.elements() {
            let params = RdpParams::unit(&f, 2u32, 3);
            assert_eq!(eval_via_fnk(&f, &params, x).unwrap(), f.add(f.one(), x));
            for n in 0..30u32 {
                for k in 0..7 {
                    let params = RdpParams::unit(&f, n, k);
                    assert_eq!(eval_via_fnk(&f, &params, x).unwrap(), eval_recurrence(&f, &params, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn specialisations_hold() {
        for n in 0..=40 {
            for k in 0..3 {
                let r = fnk_specialize(n, k).unwrap();
                assert!(r.holds, "n={n} k={k}: {r:?}");
            }
            if n % 2 == 0 {
                assert!(fnk_specialize(n, 3).unwrap().holds);
            }
        }
        let r = fnk_specialize(2, 1).unwrap();
        assert_eq!(r.steps.last().unwrap().rhs, rat(&ints(&[3, 1])).scale(&two_pow(2)));
        let r = fnk_specialize(1, 0).unwrap();
        assert_eq!(r.steps[0].lhs, rat(&ints(&[2])));
    }

    #[test]
    fn specialisation_detects_a_broken_target() {
        let broken = IdentityCheck::new("x", rat(&ints(&[5, -1])), rat(&ints(&[5, 1])));
        assert!(!broken.holds);
    }

    #[test]
    fn specialisation_errors() {
        assert_eq!(fnk_specialize(3, 4), Err(RdpError::UnsupportedKind(4)));
        assert_eq!(fnk_specialize(3, 3), Err(RdpError::OddIndex(3)));
    }
}
