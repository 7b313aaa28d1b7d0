//! Binomial coefficients, exact and modulo a prime.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` over the integers; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let small = binomial(nd, kd) % BigInt::from(p);
        acc = acc * u64::try_from(small).unwrap() % p;
        n /= p;
        k /= p;
    }
    acc % p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_triangle() {
        for n in 0..30u64 {
            let row = binomial_row(n);
            for k in 0..=n {
                assert_eq!(row[k as usize], binomial(n, k));
                if n > 0 && k > 0 && k < n {
                    assert_eq!(row[k as usize], binomial(n - 1, k - 1) + binomial(n - 1, k));
                }
            }
        }
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn lucas_matches_exact() {
        for p in [2u64, 3, 5, 7] {
            for n in 0..60u64 {
                for k in 0..=n + 1 {
                    let exact = binomial(n, k) % BigInt::from(p);
                    assert_eq!(BigInt::from(binomial_mod_p(n, k, p)), exact);
                }
            }
        }
    }
}
