use num_bigint::BigUint;

use super::recurrence::mat_pow;
use super::{initial_value, RdpError, RdpParams};
use crate::fpoly::FieldPolynomial;
use crate::gf::{FiniteField, Field, Fq};

/// First `count` coefficients of `(2-k+(k-1)z) / (1-z+xz^2)`.
/// Coefficient `n` is `D_{n,k}(1,x)`.
pub fn genfun_coeffs(field: &Field, k: u64, x: Fq, count: usize) -> Result<Vec<Fq>, RdpError> {
    if count == 0 {
        return Err(RdpError::EmptySeries);
    }
    let kk = field.from_u64(k);
    let num = FieldPolynomial::new(vec![initial_value(field, k), field.sub(kk, field.one())]);
    let den = FieldPolynomial::new(vec![field.one(), field.neg(field.one()), x]);
    Ok(FieldPolynomial::series_div(field, &num, &den, count)?)
}

/// `x·P mod (x^q - x)`
fn times_x(field: &Field, p: &FieldPolynomial) -> FieldPolynomial {
    if p.is_zero() {
        return FieldPolynomial::zero();
    }
    let mut coeffs = Vec::with_capacity(p.coeffs().len() + 1);
    coeffs.push(field.zero());
    coeffs.extend_from_slice(p.coeffs());
    FieldPolynomial::new(coeffs).reduce_mod_xq_minus_x(field)
}

/// Runs `P_j = P_{j-1} - x·P_{j-2}` on polynomials reduced mod `x^q - x`.
pub fn as_polynomial_linear(field: &Field, n: u64, k: u64) -> FieldPolynomial {
    let p0 = FieldPolynomial::constant(initial_value(field, k));
    if n == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, FieldPolynomial::constant(field.one()));
    for _ in 2..=n {
        let next = cur.sub(field, &times_x(field, &prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// Same polynomial through powers of `[[1, -x], [1, 0]]` over `GF(q)[x]/(x^q - x)`.
pub fn as_polynomial_by_doubling(field: &Field, n: &BigUint, k: u64) -> FieldPolynomial {
    let p0 = FieldPolynomial::constant(initial_value(field, k));
    if n.bits() == 0 {
        return p0;
    }
    let one = FieldPolynomial::constant(field.one());
    let minus_x = FieldPolynomial::from_terms(field, &[(1, field.neg(field.one()))]);
    let m = [[one.clone(), minus_x], [one.clone(), FieldPolynomial::zero()]];
    let add = |a: &FieldPolynomial, b: &FieldPolynomial| a.add(field, b);
    let mul = |a: &FieldPolynomial, b: &FieldPolynomial| a.mul(field, b).reduce_mod_xq_minus_x(field);
    let pw = mat_pow(&m, &(n - 1u32), FieldPolynomial::zero(), one, &add, &mul);
    pw[0][0].add(field, &mul(&pw[0][1], &p0))
}

/// The representative of degree `< q` of `x ↦ D_{n,k}(1,x)` on GF(q).
pub fn as_polynomial(field: &Field, params: &RdpParams) -> Result<FieldPolynomial, RdpError> {
    params.require_unit()?;
    let q = field.q();
    let linear_limit = 4 * q * q;
    Ok(match params.n_u64().filter(|&n| n <= linear_limit) {
        Some(n) => as_polynomial_linear(field, n, params.k),
        None => as_polynomial_by_doubling(field, &params.n, params.k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdpoly::{eval_definition, eval_recurrence};

    #[test]
    fn leading_coefficients() {
        let f = Field::new(7, 1, None).unwrap();
        for k in 0..7 {
            for x in f.elements() {
                let c = genfun_coeffs(&f, k, x, 3).unwrap();
                assert_eq!(c[0], f.from_i64(2 - k as i64));
                assert_eq!(c[1], f.one());
                assert_eq!(c[2], f.sub(f.one(), f.mul(f.from_i64(2 - k as i64), x)));
            }
        }
        assert_eq!(genfun_coeffs(&f, 1, Fq(1), 0), Err(RdpError::EmptySeries));
    }

    #[test]
    fn series_times_denominator_is_numerator() {
        let f = Field::new(5, 1, None).unwrap();
        for k in 0..5 {
            for x in f.elements() {
                let c = genfun_coeffs(&f, k, x, 40).unwrap();
                // (1 - z + x z^2)·Σ c_n z^n must vanish beyond degree 1
                for n in 2..40 {
                    let v = f.add(f.sub(c[n], c[n - 1]), f.mul(x, c[n - 2]));
                    assert_eq!(v, f.zero());
                }
            }
        }
    }

    #[test]
    fn polynomial_examples() {
        let f = Field::new(7, 1, None).unwrap();
        let p = as_polynomial(&f, &RdpParams::unit(&f, 3u32, 0)).unwrap();
        assert_eq!(p, FieldPolynomial::new(vec![Fq(1), Fq(4)]));
        assert_eq!(p.format(&f), "1 + 4x");
        for k in 0..7 {
            let p = as_polynomial(&f, &RdpParams::unit(&f, 1u32, k)).unwrap();
            assert_eq!(p, FieldPolynomial::constant(f.one()));
        }
    }

    #[test]
    fn polynomial_matches_pointwise_values() {
        for (p, e) in [(3, 1), (5, 1), (3, 2)] {
            let f = Field::new(p, e, None).unwrap();
            for n in 0..60u32 {
                for k in 0..p {
                    let params = RdpParams::unit(&f, n, k);
                    let poly = as_polynomial(&f, &params).unwrap();
                    assert!(poly.degree().is_none_or(|d| d < f.q() as usize));
                    for x in f.elements() {
                        assert_eq!(poly.eval(&f, x), eval_definition(&f, &params, x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn doubling_matches_linear() {
        let f = Field::new(5, 1, None).unwrap();
        for n in [0u64, 1, 2, 3, 24, 25, 101, 250] {
            for k in 0..5 {
                assert_eq!(
                    as_polynomial_by_doubling(&f, &BigUint::from(n), k),
                    as_polynomial_linear(&f, n, k)
                );
            }
        }
        let big = BigUint::from(10u32).pow(30);
        let poly = as_polynomial(&f, &RdpParams::unit(&f, big.clone(), 2)).unwrap();
        for x in f.elements() {
            assert_eq!(poly.eval(&f, x), eval_recurrence(&f, &RdpParams::unit(&f, big.clone(), 2), x).unwrap());
        }
    }
}
