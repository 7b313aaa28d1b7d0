//! Dense polynomials with coefficients in GF(q). The field context is passed
//! to every operation.

use serde::{Deserialize, Serialize};

use crate::gf::{FiniteField, Field, Fq, GfError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldPolynomial {
    coeffs: Vec<Fq>,
}

/// JSON form: `{"coeffs": [[c0 coords], [c1 coords], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldPolynomialRepr {
    pub coeffs: Vec<Vec<u64>>,
}

impl FieldPolynomial {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.index() == 0) {
            coeffs.pop();
        }
        FieldPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        FieldPolynomial::default()
    }

    pub fn constant(c: Fq) -> Self {
        FieldPolynomial::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, f: &Field, x: Fq) -> Fq {
        self.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &Field, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        FieldPolynomial::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        FieldPolynomial::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, c: Fq) -> Self {
        FieldPolynomial::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Schoolbook product; zero coefficients on either side are skipped, so
    /// sparse factors are cheap.
    pub fn mul(&self, f: &Field, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FieldPolynomial::zero();
        }
        let rhs: Vec<(usize, Fq)> = other
            .coeffs
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| c.index() != 0)
            .collect();
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.index() == 0 {
                continue;
            }
            for &(j, b) in &rhs {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FieldPolynomial::new(out)
    }

    /// Sparse constructor from `(degree, coefficient)` terms.
    pub fn from_terms(f: &Field, terms: &[(usize, Fq)]) -> Self {
        let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![f.zero(); len];
        for &(d, c) in terms {
            coeffs[d] = f.add(coeffs[d], c);
        }
        FieldPolynomial::new(coeffs)
    }

    /// Reduction modulo `x^q - x`: exponents `m >= q` fold onto
    /// `1 + (m - 1) mod (q - 1)`.
    pub fn reduce_mod_xq_minus_x(&self, f: &Field) -> Self {
        let q = f.q() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = vec![f.zero(); q];
        for (m, &c) in self.coeffs.iter().enumerate() {
            let target = if m < q { m } else { 1 + (m - 1) % (q - 1) };
            out[target] = f.add(out[target], c);
        }
        FieldPolynomial::new(out)
    }

    /// First `count` coefficients of the power series `num / den`.
    pub fn series_div(f: &Field, num: &Self, den: &Self, count: usize) -> Result<Vec<Fq>, GfError> {
        let lead_inv = f.try_inv(den.coeff(0))?;
        let mut out: Vec<Fq> = Vec::with_capacity(count);
        for n in 0..count {
            let mut acc = num.coeff(n);
            for i in 1..=n.min(den.coeffs.len().saturating_sub(1)) {
                acc = f.sub(acc, f.mul(den.coeff(i), out[n - i]));
            }
            out.push(f.mul(acc, lead_inv));
        }
        Ok(out)
    }

    pub fn to_repr(&self, f: &Field) -> FieldPolynomialRepr {
        FieldPolynomialRepr { coeffs: self.coeffs.iter().map(|&c| f.coords(c)).collect() }
    }

    pub fn from_repr(f: &Field, repr: &FieldPolynomialRepr) -> Result<Self, GfError> {
        let coeffs = repr.coeffs.iter().map(|c| f.from_coords(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(FieldPolynomial::new(coeffs))
    }

    /// Human-readable form, e.g. `1 + 4x` over a prime field or
    /// `(1,2) + x^2` over an extension (coordinates constant first).
    pub fn format(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let fmt_coeff = |c: Fq| -> String {
            let coords: Vec<String> = f.coords(c).iter().map(u64::to_string).collect();
            if f.e() == 1 {
                coords[0].clone()
            } else {
                format!("({})", coords.join(","))
            }
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.index() != 0)
            .map(|(i, &c)| {
                let unit = c == f.one();
                match i {
                    0 => fmt_coeff(c),
                    1 if unit => "x".to_string(),
                    1 => format!("{}x", fmt_coeff(c)),
                    _ if unit => format!("x^{i}"),
                    _ => format!("{}x^{i}", fmt_coeff(c)),
                }
            })
            .collect();
        terms.join(" + ")
    }
}
