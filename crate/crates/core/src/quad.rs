//! Exact arithmetic in `Q(√ρ)` for a rational radicand `ρ`.
//!
//! A negative `ρ` is never a rational square, so `Q(√ρ)` is still a field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// `u + w·√ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadValue {
    pub u: BigRational,
    pub w: BigRational,
}

impl QuadValue {
    pub fn rational(u: BigRational) -> Self {
        QuadValue { u, w: BigRational::zero() }
    }

    pub fn new(u: BigRational, w: BigRational) -> Self {
        QuadValue { u, w }
    }
}

/// The field `Q(√ρ)`. When `ρ` is the square of a rational the field is
/// `Q` itself and every value is kept with `w = 0`, so equality of
/// normalized values is equality of numbers.
#[derive(Debug, Clone)]
pub struct QuadField {
    rho: BigRational,
    root: Option<BigRational>,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

impl QuadField {
    pub fn new(rho: BigRational) -> Self {
        let root = rational_sqrt(&rho);
        QuadField { rho, root }
    }

    pub fn radicand(&self) -> &BigRational {
        &self.rho
    }

    pub fn normalize(&self, x: QuadValue) -> QuadValue {
        match &self.root {
            Some(r) if !x.w.is_zero() => QuadValue::rational(x.u + x.w * r),
            _ => x,
        }
    }

    pub fn zero(&self) -> QuadValue {
        QuadValue::rational(BigRational::zero())
    }

    pub fn rational(&self, q: BigRational) -> QuadValue {
        QuadValue::rational(q)
    }

    /// `√ρ` itself.
    pub fn sqrt(&self) -> QuadValue {
        self.normalize(QuadValue::new(BigRational::zero(), BigRational::from_integer(BigInt::from(1))))
    }

    pub fn add(&self, a: &QuadValue, b: &QuadValue) -> QuadValue {
        self.normalize(QuadValue::new(&a.u + &b.u, &a.w + &b.w))
    }

    pub fn mul(&self, a: &QuadValue, b: &QuadValue) -> QuadValue {
        let u = &a.u * &b.u + &a.w * &b.w * &self.rho;
        let w = &a.u * &b.w + &b.u * &a.w;
        self.normalize(QuadValue::new(u, w))
    }

    pub fn inv(&self, a: &QuadValue) -> Result<QuadValue> {
        let a = self.normalize(a.clone());
        let norm = &a.u * &a.u - &a.w * &a.w * &self.rho;
        if norm.is_zero() {
            return Err(Error::Evaluation("division by zero".into()));
        }
        Ok(QuadValue::new(&a.u / &norm, -&a.w / &norm))
    }

    pub fn pow(&self, a: &QuadValue, n: i64) -> Result<QuadValue> {
        let mut base = if n < 0 { self.inv(a)? } else { self.normalize(a.clone()) };
        let mut n = n.unsigned_abs();
        let mut acc = self.rational(BigRational::from_integer(BigInt::from(1)));
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use std::collections::BTreeMap;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_of_root() {
        let f = QuadField::new(q(3, 1));
        let x2 = LaurentPoly::parse("X^2", &["X"]).unwrap();
        let v = x2.eval_quad(&BTreeMap::from([("X", f.sqrt())]), &f).unwrap();
        assert_eq!(v, QuadValue::rational(q(3, 1)));
    }

    #[test]
    fn rationalized_inverse() {
        // √ρ − 1/√ρ = (ρ−1)/ρ · √ρ
        for rho in [2, 3, 5, 7] {
            let f = QuadField::new(q(rho, 1));
            let p = LaurentPoly::parse("X - X^-1", &["X"]).unwrap();
            let v = p.eval_quad(&BTreeMap::from([("X", f.sqrt())]), &f).unwrap();
            assert_eq!(v, QuadValue::new(q(0, 1), q(rho - 1, rho)));
        }
    }

    #[test]
    fn constant_polynomial() {
        let f = QuadField::new(q(2, 3));
        let one = LaurentPoly::one(&["X", "Y"]);
        let pt = BTreeMap::from([("X", f.sqrt()), ("Y", QuadValue::rational(q(-5, 7)))]);
        assert_eq!(one.eval_quad(&pt, &f).unwrap(), QuadValue::rational(q(1, 1)));
    }

    #[test]
    fn perfect_square_radicand_collapses() {
        let f = QuadField::new(q(9, 4));
        assert_eq!(f.sqrt(), QuadValue::rational(q(3, 2)));
        let z = f.add(&f.sqrt(), &QuadValue::rational(q(-3, 2)));
        assert_eq!(z, f.zero());
        assert!(f.inv(&z).is_err());
    }

    #[test]
    fn division_by_zero_value() {
        let f = QuadField::new(q(2, 1));
        let p = LaurentPoly::parse("X^-1", &["X"]).unwrap();
        let err = p.eval_quad(&BTreeMap::from([("X", f.zero())]), &f);
        assert!(matches!(err, Err(Error::Evaluation(_))));
    }

    #[test]
    fn negative_radicand() {
        let f = QuadField::new(q(-3, 2));
        let i = f.sqrt();
        assert_eq!(f.mul(&i, &i), QuadValue::rational(q(-3, 2)));
        let inv = f.inv(&f.add(&i, &QuadValue::rational(q(1, 1)))).unwrap();
        assert_eq!(f.mul(&inv, &f.add(&i, &QuadValue::rational(q(1, 1)))), QuadValue::rational(q(1, 1)));
    }

    #[test]
    fn multiplicative() {
        let f = QuadField::new(q(5, 2));
        let vars = ["X", "Y"];
        let a = LaurentPoly::parse("X^3*Y^-1 - 2*X + 7", &vars).unwrap();
        let b = LaurentPoly::parse("X^-2 + Y^2*X - 1", &vars).unwrap();
        let pt = BTreeMap::from([
            ("X", f.add(&f.sqrt(), &QuadValue::rational(q(1, 3)))),
            ("Y", QuadValue::new(q(-2, 5), q(1, 1))),
        ]);
        let lhs = (&a * &b).eval_quad(&pt, &f).unwrap();
        let rhs = f.mul(&a.eval_quad(&pt, &f).unwrap(), &b.eval_quad(&pt, &f).unwrap());
        assert_eq!(lhs, rhs);
    }
}
