//! Exact arithmetic in GF(p^e) and its quadratic extension.
//!
//! Elements of GF(q) are stored as [`Fq`], the odometer index of the
//! coordinate vector in the polynomial basis (constant coordinate fastest),
//! so `Fq(i)` enumerates the field in a fixed order. All operations go
//! through an immutable [`Field`] context.

mod element;
mod ext;
pub(crate) mod prime_poly;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element::{field_arith, ArithOp, FieldElement};
pub use ext::{ExtField, Fq2};

/// Largest field order accepted by [`Field::new`]; keeps `q^2` inside `u64`.
pub const MAX_FIELD_ORDER: u64 = 1 << 31;

/// Log/antilog tables are built for non-prime fields up to this order.
const TABLE_LIMIT: u64 = 1 << 22;

/// Fields above this order take square roots with Tonelli-Shanks instead
/// of exhaustive search.
pub const DEFAULT_SQRT_THRESHOLD: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the supported bound 2^31")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegree { expected: u32, got: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficient(u64),
    #[error("modulus is reducible over GF(p)")]
    ReducibleModulus,
    #[error("coordinate vector {0:?} is not an element of the field")]
    BadCoordinates(Vec<u64>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation needs odd characteristic")]
    EvenCharacteristic,
    #[error("{op} expects {expected} operand(s), got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },
    #[error("invalid field descriptor {0:?}")]
    BadDescriptor(String),
}

/// An element of GF(q): the odometer index of its coordinate vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub(crate) u64);

impl Fq {
    pub fn index(self) -> u64 {
        self.0
    }
}

/// Arithmetic shared by GF(q) and GF(q^2).
pub trait FiniteField {
    type Elem: Copy + Eq + Hash + fmt::Debug;

    /// Number of elements.
    fn order(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the prime-subfield embedding.
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    /// Square-and-multiply; `0^0 = 1`.
    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Power with an arbitrary-precision exponent. Nonzero bases reduce the
    /// exponent modulo `order - 1` first.
    fn pow_big(&self, a: Self::Elem, e: &BigUint) -> Self::Elem {
        if e.is_zero() {
            return self.one();
        }
        if self.is_zero(a) {
            return self.zero();
        }
        let reduced = (e % BigUint::from(self.order() - 1)).to_u64().unwrap();
        self.pow(a, reduced)
    }

    fn square(&self, a: Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
}

/// Plain description of GF(p^e): characteristic, degree and modulus
/// (constant term first). Serializes as a table-free record.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
    pub q: u64,
}

impl FieldSpec {
    /// The `p^e/c0,c1,...,1` form accepted by [`FieldDescriptor`].
    pub fn descriptor(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(u64::to_string).collect();
        format!("{}^{}/{}", self.p, self.e, coeffs.join(","))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

/// Parsed field description: `q`, `p^e`, or `p^e/c0,c1,...,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Option<Vec<u64>>,
}

impl FromStr for FieldDescriptor {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, GfError> {
        let bad = || GfError::BadDescriptor(s.to_string());
        let s = s.trim();
        let (order, modulus) = match s.split_once('/') {
            Some((o, m)) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                (o, Some(coeffs))
            }
            None => (s, None),
        };
        let (p, e) = match order.split_once('^') {
            Some((p, e)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                e.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = order.parse::<u64>().map_err(|_| bad())?;
                prime_power(q).ok_or_else(|| {
                    if q >= 2 {
                        GfError::NotPrime(q)
                    } else {
                        bad()
                    }
                })?
            }
        };
        Ok(FieldDescriptor { p, e, modulus })
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_poly::prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u64>,
    log: Vec<u64>,
}

/// An immutable GF(p^e) context. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    tables: Option<Arc<Tables>>,
    sqrt_threshold: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^e). Without an explicit modulus, the lexicographically
    /// smallest monic irreducible of degree `e` is used, comparing
    /// coefficient vectors constant term first.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Field, GfError> {
        if !prime_poly::is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(GfError::FieldTooLarge { p, e })?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(GfError::ModulusDegree { expected: e, got: m.len().saturating_sub(1) });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(GfError::ModulusCoefficient(c));
                }
                if m[e as usize] != 1 {
                    return Err(GfError::ModulusNotMonic);
                }
                if !prime_poly::is_irreducible(m, p) {
                    return Err(GfError::ReducibleModulus);
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, e),
        };
        let mut field = Field {
            spec: FieldSpec { p, e, modulus, q },
            tables: None,
            sqrt_threshold: DEFAULT_SQRT_THRESHOLD,
        };
        if e > 1 && q <= TABLE_LIMIT {
            field.tables = Some(Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Field, GfError> {
        Field::new(desc.p, desc.e, desc.modulus.as_deref())
    }

    /// Overrides the order above which square roots switch from exhaustive
    /// search to Tonelli-Shanks.
    pub fn with_sqrt_threshold(mut self, threshold: u64) -> Field {
        self.sqrt_threshold = threshold;
        self
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn e(&self) -> u32 {
        self.spec.e
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn is_odd_characteristic(&self) -> bool {
        self.spec.p != 2
    }

    pub fn require_odd(&self) -> Result<(), GfError> {
        if self.is_odd_characteristic() {
            Ok(())
        } else {
            Err(GfError::EvenCharacteristic)
        }
    }

    /// All elements in odometer order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.spec.q).map(Fq)
    }

    pub fn from_index(&self, index: u64) -> Option<Fq> {
        (index < self.spec.q).then_some(Fq(index))
    }

    pub fn coords(&self, a: Fq) -> Vec<u64> {
        let p = self.spec.p;
        let mut v = a.0;
        (0..self.spec.e)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// Element from its coordinates (constant first). Shorter vectors are
    /// zero-padded; prime fields accept a single residue.
    pub fn from_coords(&self, coords: &[u64]) -> Result<Fq, GfError> {
        let p = self.spec.p;
        if coords.len() > self.spec.e as usize || coords.iter().any(|&c| c >= p) {
            return Err(GfError::BadCoordinates(coords.to_vec()));
        }
        Ok(Fq(coords.iter().rev().fold(0u64, |acc, &c| acc * p + c)))
    }

    pub fn from_u64(&self, v: u64) -> Fq {
        Fq(v % self.spec.p)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fq {
        let r = v.mod_floor(&BigInt::from(self.spec.p));
        Fq(r.to_u64().unwrap())
    }

    pub fn from_biguint(&self, v: &BigUint) -> Fq {
        Fq((v % self.spec.p).to_u64().unwrap())
    }

    /// The residue in `[0, p-1]` when `a` lies in the prime subfield.
    pub fn to_prime(&self, a: Fq) -> Option<u64> {
        (a.0 < self.spec.p).then_some(a.0)
    }

    /// 1/2; odd characteristic only.
    pub fn half(&self) -> Result<Fq, GfError> {
        self.require_odd()?;
        Ok(self.inv(self.from_u64(2)).unwrap())
    }

    /// 1/4; odd characteristic only.
    pub fn quarter(&self) -> Result<Fq, GfError> {
        self.require_odd()?;
        Ok(self.inv(self.from_u64(4)).unwrap())
    }

    pub fn try_inv(&self, a: Fq) -> Result<Fq, GfError> {
        self.inv(a).ok_or(GfError::DivisionByZero)
    }

    /// Power with a signed exponent; negative exponents need a nonzero base.
    pub fn pow_int(&self, a: Fq, e: &BigInt) -> Result<Fq, GfError> {
        match e.sign() {
            Sign::Minus => {
                let inv = self.try_inv(a)?;
                Ok(self.pow_big(inv, e.magnitude()))
            }
            _ => Ok(self.pow_big(a, e.magnitude())),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let mut order = self.spec.q - 1;
        for r in prime_poly::prime_factors(order) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    /// `2^n` with `n` reduced modulo the multiplicative order of 2.
    pub fn pow2_big(&self, n: &BigUint) -> Result<Fq, GfError> {
        self.require_odd()?;
        let two = self.from_u64(2);
        let ord = self.mult_order(two).unwrap();
        let r = (n % BigUint::from(ord)).to_u64().unwrap();
        Ok(self.pow(two, r))
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: Fq) -> bool {
        if a.0 == 0 || self.spec.p == 2 {
            return true;
        }
        self.pow(a, (self.spec.q - 1) / 2) == self.one()
    }

    /// Square roots inside GF(q), smaller index first. Empty for
    /// non-squares, a single zero for zero.
    pub fn sqrt(&self, a: Fq) -> Vec<Fq> {
        if a.0 == 0 {
            return vec![Fq(0)];
        }
        let root = if self.spec.q <= self.sqrt_threshold || self.spec.p == 2 {
            self.sqrt_exhaustive(a)
        } else {
            self.sqrt_tonelli_shanks(a)
        };
        match root {
            Some(r) => {
                let s = self.neg(r);
                if s == r {
                    vec![r]
                } else {
                    vec![r.min(s), r.max(s)]
                }
            }
            None => Vec::new(),
        }
    }

    pub(crate) fn sqrt_exhaustive(&self, a: Fq) -> Option<Fq> {
        self.elements().find(|&r| self.mul(r, r) == a)
    }

    /// Tonelli-Shanks over GF(q), q odd.
    pub(crate) fn sqrt_tonelli_shanks(&self, a: Fq) -> Option<Fq> {
        if !self.is_square(a) {
            return None;
        }
        let one = self.one();
        let mut s = 0u32;
        let mut odd = self.spec.q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self.elements().skip(1).find(|&z| !self.is_square(z)).unwrap();
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        while t != one {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != one {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    fn add_digits(&self, a: u64, b: u64) -> u64 {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.e {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_digits(&self, a: u64) -> u64 {
        let p = self.spec.p;
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.e {
            let d = (p - a % p) % p;
            out += d * place;
            place *= p;
            a /= p;
        }
        out
    }

    /// Schoolbook multiplication in the polynomial basis. Used to build the
    /// log tables and for fields too large to tabulate.
    pub(crate) fn mul_reference(&self, a: Fq, b: Fq) -> Fq {
        let p = self.spec.p;
        let prod = prime_poly::rem(
            &prime_poly::mul(&self.coords(a), &self.coords(b), p),
            &self.spec.modulus,
            p,
        );
        self.from_coords(&prod).unwrap()
    }

    fn pow_reference(&self, a: Fq, mut e: u64) -> Fq {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_reference(result, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        result
    }

    fn build_tables(&self) -> Tables {
        let q = self.spec.q;
        let n = q - 1;
        let factors = prime_poly::prime_factors(n);
        let generator = (1..q)
            .map(Fq)
            .find(|&g| factors.iter().all(|&r| self.pow_reference(g, n / r) != self.one()))
            .expect("GF(q)* is cyclic");
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u64; q as usize];
        let mut x = self.one();
        for i in 0..n {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = self.mul_reference(x, generator);
        }
        exp.extend_from_within(..);
        Tables { exp, log }
    }
}

impl FiniteField for Field {
    type Elem = Fq;

    fn order(&self) -> u64 {
        self.spec.q
    }

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.spec.e == 1 {
            Fq((a.0 + b.0) % self.spec.p)
        } else {
            Fq(self.add_digits(a.0, b.0))
        }
    }

    fn neg(&self, a: Fq) -> Fq {
        if self.spec.e == 1 {
            Fq((self.spec.p - a.0) % self.spec.p)
        } else {
            Fq(self.neg_digits(a.0))
        }
    }

    fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        if self.spec.e == 1 {
            return Fq(a.0 * b.0 % self.spec.p);
        }
        match &self.tables {
            Some(t) => Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_reference(a, b),
        }
    }

    fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        if self.spec.e == 1 {
            return Some(Fq(prime_poly::inv_mod_p(a.0, self.spec.p)));
        }
        match &self.tables {
            Some(t) => {
                let n = self.spec.q - 1;
                Some(Fq(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
            }
            None => Some(self.pow(a, self.spec.q - 2)),
        }
    }

    fn from_i64(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.spec.p as i64) as u64)
    }
}

fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1];
    }
    // c0 is the most significant digit of the lexicographic order
    let count = p.pow(e);
    for n in 0..count {
        let mut coeffs = vec![0u64; e as usize + 1];
        let mut v = n;
        for i in (0..e as usize).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[e as usize] = 1;
        if coeffs[0] != 0 && prime_poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64, e: u32) -> Field {
        Field::new(p, e, None).unwrap()
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(gf(5, 1).spec().modulus, vec![0, 1]);
        assert_eq!(gf(3, 2).spec().modulus, vec![1, 0, 1]);
        assert_eq!(Field::new(4, 1, None), Err(GfError::NotPrime(4)));
    }

    #[test]
    fn smallest_modulus_matches_exhaustive_scan() {
        // scan every monic quadratic over GF(3) in constant-first lex order and
        // test irreducibility by the absence of roots
        let mut first = None;
        'outer: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                let has_root = (0..3u64).any(|x| (c0 + c1 * x + x * x) % 3 == 0);
                if !has_root {
                    first = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(Some(gf(3, 2).spec().modulus.clone()), first);
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(Field::new(3, 2, Some(&[1, 1, 1])).unwrap_err(), GfError::ReducibleModulus);
        assert_eq!(Field::new(3, 2, Some(&[1, 0, 2])).unwrap_err(), GfError::ModulusNotMonic);
        assert_eq!(
            Field::new(3, 2, Some(&[1, 1])).unwrap_err(),
            GfError::ModulusDegree { expected: 2, got: 1 }
        );
        assert!(Field::new(3, 2, Some(&[2, 1, 1])).is_ok());
    }

    #[test]
    fn descriptor_forms() {
        let d: FieldDescriptor = "9".parse().unwrap();
        assert_eq!((d.p, d.e, d.modulus), (3, 2, None));
        let d: FieldDescriptor = "3^2/2,1,1".parse().unwrap();
        assert_eq!(d.modulus, Some(vec![2, 1, 1]));
        assert!("6".parse::<FieldDescriptor>().is_err());
        assert!("x^2".parse::<FieldDescriptor>().is_err());
        let f = gf(5, 2);
        let back: FieldDescriptor = f.spec().descriptor().parse().unwrap();
        assert_eq!(Field::from_descriptor(&back).unwrap(), f);
    }

    #[test]
    fn inverse_and_zero() {
        let f = gf(5, 1);
        assert_eq!(f.inv(Fq(4)), Some(Fq(4)));
        assert_eq!(f.try_inv(Fq(0)), Err(GfError::DivisionByZero));
    }

    #[test]
    fn frobenius_fixes_every_element() {
        for (p, e) in [(2, 3), (3, 1), (3, 3), (5, 2), (7, 2)] {
            let f = gf(p, e);
            for x in f.elements() {
                assert_eq!(f.pow(x, f.q()), x);
            }
        }
    }

    #[test]
    fn tables_agree_with_reference_multiplication() {
        for (p, e) in [(2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = gf(p, e);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_reference(a, b));
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = gf(3, 3);
        for x in f.elements() {
            assert_eq!(f.from_coords(&f.coords(x)).unwrap(), x);
        }
        assert_eq!(f.coords(Fq(5)), vec![2, 1, 0]);
        assert!(f.from_coords(&[3]).is_err());
    }

    #[test]
    fn negative_powers() {
        let f = gf(7, 1);
        let x = Fq(3);
        let inv = f.pow_int(x, &BigInt::from(-1)).unwrap();
        assert_eq!(f.mul(inv, x), f.one());
        assert!(f.pow_int(Fq(0), &BigInt::from(-2)).is_err());
        assert_eq!(f.pow_int(Fq(0), &BigInt::from(0)).unwrap(), f.one());
    }

    #[test]
    fn square_roots_both_strategies() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (13, 1), (3, 3)] {
            let f = gf(p, e);
            for a in f.elements().skip(1) {
                let ex = f.sqrt_exhaustive(a);
                let ts = f.sqrt_tonelli_shanks(a);
                assert_eq!(ex.is_some(), ts.is_some());
                assert_eq!(ex.is_some(), f.is_square(a));
                if let Some(r) = ts {
                    assert_eq!(f.mul(r, r), a);
                }
            }
        }
        let f = gf(5, 1);
        assert_eq!(f.sqrt(Fq(4)), vec![Fq(2), Fq(3)]);
        assert_eq!(f.sqrt(Fq(0)), vec![Fq(0)]);
        assert!(f.sqrt(Fq(2)).is_empty());
        let forced = gf(7, 2).with_sqrt_threshold(0);
        assert_eq!(forced.sqrt(Fq(2)).len(), 2);
    }

    #[test]
    fn order_of_two() {
        let f = gf(7, 1);
        assert_eq!(f.mult_order(Fq(2)), Some(3));
        assert_eq!(f.pow2_big(&BigUint::from(10u32)).unwrap(), Fq(2));
    }

    fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
        prop_oneof![Just((3, 1)), Just((7, 1)), Just((2, 5)), Just((3, 3)), Just((5, 2)), Just((31, 1))]
    }

    proptest! {
        #[test]
        fn field_axioms((p, e) in field_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let f = gf(p, e);
            let (a, b, c) = (Fq(a % f.q()), Fq(b % f.q()), Fq(c % f.q()));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if a != f.zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }
}
