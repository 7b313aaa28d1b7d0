use std::cmp::Ordering;

use super::{FiniteField, Field, Fq, GfError};

/// `re + im·s` in GF(q^2) = GF(q)[s]/(s^2 - d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fq2 {
    pub re: Fq,
    pub im: Fq,
}

/// GF(q^2) built over GF(q) by adjoining the square root of a fixed
/// non-square `d`, the first non-square of GF(q)* in enumeration order.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: Field,
    nonresidue: Fq,
}

impl ExtField {
    pub fn new(base: &Field) -> Result<ExtField, GfError> {
        base.require_odd()?;
        let nonresidue = base
            .elements()
            .skip(1)
            .find(|&x| !base.is_square(x))
            .expect("odd q has non-squares");
        Ok(ExtField { base: base.clone(), nonresidue })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The non-square `d` with `s^2 = d`.
    pub fn nonresidue(&self) -> Fq {
        self.nonresidue
    }

    pub fn embed(&self, x: Fq) -> Fq2 {
        Fq2 { re: x, im: Fq(0) }
    }

    pub fn is_base(&self, y: Fq2) -> bool {
        y.im.0 == 0
    }

    /// Projection onto GF(q), defined only for base elements.
    pub fn to_base(&self, y: Fq2) -> Option<Fq> {
        self.is_base(y).then_some(y.re)
    }

    /// `y ↦ y^q`. Since `s^q = d^{(q-1)/2}·s = -s`, this is conjugation.
    pub fn frobenius(&self, y: Fq2) -> Fq2 {
        Fq2 { re: y.re, im: self.base.neg(y.im) }
    }

    /// Odometer order over `(re, im)` with `re` fastest.
    pub fn elements(&self) -> impl Iterator<Item = Fq2> + '_ {
        let q = self.base.q();
        (0..q * q).map(move |i| Fq2 { re: Fq(i % q), im: Fq(i / q) })
    }

    /// Coordinates of `re` followed by those of `im`.
    pub fn coords(&self, y: Fq2) -> Vec<u64> {
        let mut c = self.base.coords(y.re);
        c.extend(self.base.coords(y.im));
        c
    }

    pub fn cmp_coords(&self, a: Fq2, b: Fq2) -> Ordering {
        self.coords(a).cmp(&self.coords(b))
    }

    fn sorted(&self, mut v: Vec<Fq2>) -> Vec<Fq2> {
        v.sort_by(|a, b| self.cmp_coords(*a, *b));
        v.dedup();
        v
    }

    /// Both square roots of `v ∈ GF(q)` inside GF(q^2), ordered by
    /// coordinate vector. They lie in GF(q) exactly when `v` is a square.
    pub fn sqrt(&self, v: Fq) -> Vec<Fq2> {
        let f = &self.base;
        let roots = f.sqrt(v);
        if !roots.is_empty() {
            return self.sorted(roots.into_iter().map(|r| self.embed(r)).collect());
        }
        // v non-square => v/d square, and (t·s)^2 = t^2·d = v
        let t = f.sqrt(f.div(v, self.nonresidue).unwrap())[0];
        let neg = f.neg(t);
        self.sorted(vec![Fq2 { re: Fq(0), im: t }, Fq2 { re: Fq(0), im: neg }])
    }

    /// All `y ∈ GF(q^2)` with `y(1 - y) = x`: `y = (1 ± r)/2`, `r^2 = 1 - 4x`.
    /// A single `y = 1/2` when `x = 1/4`.
    pub fn solve_y(&self, x: Fq) -> Vec<Fq2> {
        let f = &self.base;
        let disc = f.sub(f.one(), f.mul(f.from_u64(4), x));
        let half = self.embed(f.half().unwrap());
        let one = self.one();
        let ys = self
            .sqrt(disc)
            .into_iter()
            .map(|r| self.mul(self.add(one, r), half))
            .collect();
        self.sorted(ys)
    }

    /// `V = { y ∈ GF(q^2) : y^q = 1 - y }`. With the conjugation form of the
    /// Frobenius this is `{ 1/2 + t·s : t ∈ GF(q) }`, listed by `t` in
    /// enumeration order.
    pub fn enumerate_v(&self) -> Vec<Fq2> {
        let half = self.base.half().unwrap();
        self.base.elements().map(|t| Fq2 { re: half, im: t }).collect()
    }
}

impl FiniteField for ExtField {
    type Elem = Fq2;

    fn order(&self) -> u64 {
        self.base.q() * self.base.q()
    }

    fn zero(&self) -> Fq2 {
        Fq2::default()
    }

    fn one(&self) -> Fq2 {
        Fq2 { re: Fq(1), im: Fq(0) }
    }

    fn add(&self, a: Fq2, b: Fq2) -> Fq2 {
        Fq2 { re: self.base.add(a.re, b.re), im: self.base.add(a.im, b.im) }
    }

    fn neg(&self, a: Fq2) -> Fq2 {
        Fq2 { re: self.base.neg(a.re), im: self.base.neg(a.im) }
    }

    fn mul(&self, a: Fq2, b: Fq2) -> Fq2 {
        let f = &self.base;
        let re = f.add(f.mul(a.re, b.re), f.mul(self.nonresidue, f.mul(a.im, b.im)));
        let im = f.add(f.mul(a.re, b.im), f.mul(a.im, b.re));
        Fq2 { re, im }
    }

    fn inv(&self, a: Fq2) -> Option<Fq2> {
        let f = &self.base;
        let norm = f.sub(f.mul(a.re, a.re), f.mul(self.nonresidue, f.mul(a.im, a.im)));
        let n_inv = f.inv(norm)?;
        Some(Fq2 { re: f.mul(a.re, n_inv), im: f.neg(f.mul(a.im, n_inv)) })
    }

    fn from_i64(&self, v: i64) -> Fq2 {
        self.embed(self.base.from_i64(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(p: u64, e: u32) -> ExtField {
        ExtField::new(&Field::new(p, e, None).unwrap()).unwrap()
    }

    #[test]
    fn nonresidue_is_first_non_square() {
        // squares mod 5 are {1, 4}; mod 7 are {1, 2, 4}
        assert_eq!(ext(5, 1).nonresidue(), Fq(2));
        assert_eq!(ext(7, 1).nonresidue(), Fq(3));
        let f2 = Field::new(2, 3, None).unwrap();
        assert_eq!(ExtField::new(&f2).unwrap_err(), GfError::EvenCharacteristic);
    }

    #[test]
    fn frobenius_is_the_q_power() {
        for (p, e) in [(3, 1), (5, 1), (3, 2)] {
            let k = ext(p, e);
            let q = k.base().q();
            for y in k.elements() {
                assert_eq!(k.pow(y, q), k.frobenius(y));
                assert_eq!(k.pow(y, q * q), y);
                assert_eq!(k.frobenius(y) == y, k.is_base(y));
            }
        }
    }

    #[test]
    fn extension_inverses() {
        let k = ext(7, 1);
        for y in k.elements().skip(1) {
            assert_eq!(k.mul(y, k.inv(y).unwrap()), k.one());
        }
    }

    #[test]
    fn square_root_examples() {
        let k = ext(5, 1);
        assert_eq!(k.sqrt(Fq(0)), vec![k.zero()]);
        assert_eq!(k.sqrt(Fq(4)), vec![k.embed(Fq(2)), k.embed(Fq(3))]);
        let roots = k.sqrt(Fq(2));
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!(!k.is_base(r));
            assert_eq!(k.mul(r, r), k.embed(Fq(2)));
        }
    }

    #[test]
    fn solve_y_examples() {
        let k = ext(5, 1);
        let f = k.base().clone();
        assert_eq!(k.solve_y(Fq(0)), vec![k.zero(), k.one()]);
        let quarter = f.quarter().unwrap();
        assert_eq!(k.solve_y(quarter), vec![k.embed(f.half().unwrap())]);
        // 1 - 4 = 2 is a non-square mod 5
        let ys = k.solve_y(Fq(1));
        assert_eq!(ys.len(), 2);
        for &y in &ys {
            assert!(!k.is_base(y));
            assert_eq!(k.mul(y, k.sub(k.one(), y)), k.embed(Fq(1)));
        }
        assert_eq!(k.frobenius(ys[0]), ys[1]);
    }

    #[test]
    fn solve_y_closed_under_reflection() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
            let k = ext(p, e);
            for x in k.base().elements() {
                let ys = k.solve_y(x);
                for &y in &ys {
                    assert_eq!(k.mul(y, k.sub(k.one(), y)), k.embed(x));
                    assert!(ys.contains(&k.sub(k.one(), y)));
                }
            }
        }
    }

    #[test]
    fn v_matches_brute_force_filter() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let k = ext(p, e);
            let one = k.one();
            let mut brute: Vec<Fq2> = k
                .elements()
                .filter(|&y| k.pow(y, k.base().q()) == k.sub(one, y))
                .collect();
            let mut v = k.enumerate_v();
            brute.sort_by_key(|y| (y.im, y.re));
            v.sort_by_key(|y| (y.im, y.re));
            assert_eq!(v, brute);
        }
    }

    #[test]
    fn v_cardinality_and_intersection() {
        let k = ext(3, 1);
        let v = k.enumerate_v();
        assert_eq!(v.len(), 3);
        // 1/2 = 2 in GF(3)
        let in_base: Vec<Fq2> = v.iter().copied().filter(|&y| k.is_base(y)).collect();
        assert_eq!(in_base, vec![k.embed(Fq(2))]);
        for (p, e) in [(5, 1), (7, 1), (3, 2)] {
            let k = ext(p, e);
            let q = k.base().q() as usize;
            let half = k.embed(k.base().half().unwrap());
            let mut union: Vec<Fq2> = k.base().elements().map(|x| k.embed(x)).collect();
            union.extend(k.enumerate_v());
            union.sort_by_key(|y| (y.im, y.re));
            union.dedup();
            union.retain(|&y| y != half);
            assert_eq!(union.len(), 2 * q - 2);
            for y in k.enumerate_v() {
                assert!(k.is_base(k.mul(y, k.sub(k.one(), y))));
            }
        }
    }

    #[test]
    fn products_landing_in_base_field() {
        // y(1-y) ∈ GF(q)  <=>  y^q = y or y^q = 1 - y
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let k = ext(p, e);
            let q = k.base().q();
            for y in k.elements() {
                let lhs = k.is_base(k.mul(y, k.sub(k.one(), y)));
                let yq = k.pow(y, q);
                let rhs = yq == y || yq == k.sub(k.one(), y);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
