//! Dense polynomials over the prime field GF(p), coefficients as `u64`
//! residues, constant term first. Only what field construction needs:
//! reduction, multiplication modulo a monic polynomial, gcd and the
//! irreducibility test.

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = mul_mod_p(*r.last().unwrap(), lead_inv, p);
        for (i, &c) in m.iter().enumerate() {
            let sub = mul_mod_p(factor, c, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod_p(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod_p(*c, inv, p);
        }
    }
    a
}

/// `base^p` modulo `m` by square-and-multiply.
fn pow_p_mod(base: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Irreducibility over GF(p) of a polynomial of degree `d >= 1`: for every
/// `i <= d/2`, `gcd(f, x^{p^i} - x) = 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut frob = x.clone();
    for _ in 1..=d / 2 {
        frob = pow_p_mod(&frob, &f, p);
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(&f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_gf3() {
        // x^2 + 1, x^2 + x + 2, x^2 + 2x + 2 are the irreducible monic quadratics
        let mut irreducible = Vec::new();
        for c0 in 0..3 {
            for c1 in 0..3 {
                if is_irreducible(&[c0, c1, 1], 3) {
                    irreducible.push((c0, c1));
                }
            }
        }
        assert_eq!(irreducible, vec![(1, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn quartic_with_no_roots_but_reducible() {
        // (x^2+1)^2 over GF(3) has no roots in GF(3)
        let f = mul(&[1, 0, 1], &[1, 0, 1], 3);
        assert!(!is_irreducible(&f, 3));
    }

    #[test]
    fn irreducible_quartics_over_gf2() {
        let count = (0..8u64)
            .filter(|bits| {
                let f = [1, bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, 1];
                is_irreducible(&f, 2)
            })
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn inverse_mod_prime() {
        assert_eq!(inv_mod_p(4, 5), 4);
        for a in 1..13 {
            assert_eq!(a * inv_mod_p(a, 13) % 13, 1);
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }
}
