//! Dense univariate polynomials over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::z_poly::ZPoly;
use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>,
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "QPoly({:?})", cs)
    }
}

impl QPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        QPoly::new(
            z.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::new(vec![BigRational::one()])
    }

    pub fn x() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        QPoly::new(super::karatsuba::mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division with remainder over Q; divisor must be nonzero.
    pub fn divrem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return (QPoly::zero(), self.clone());
        }
        let lci = div.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lci;
            quot[i - dd] = q.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, div: &QPoly) -> QPoly {
        self.divrem(div).1
    }

    pub fn make_monic(&self) -> QPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd via the Euclidean algorithm over Q.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Composition self(g(x)) by Horner's rule.
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// LCM of all coefficient denominators (1 for the zero polynomial).
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }

    /// Write self as z / den with z an integer polynomial and den > 0 minimal.
    pub fn clear_denominators(&self) -> (ZPoly, BigInt) {
        let den = self.denominator_lcm();
        let z = ZPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        );
        (z, den)
    }

    /// Inverse of self modulo `m` (extended Euclid over Q); errors when
    /// gcd(self, m) is not constant.
    pub fn modinv(&self, m: &QPoly) -> Result<QPoly> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("polynomial inverse"));
        }
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            (r0, r1) = (r1, r);
            let nt = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, nt);
        }
        if r0.degree() != Some(0) {
            return Err(Error::DivisionByZero("element not invertible"));
        }
        Ok(t0.scale(&r0.coeff(0).recip()).rem(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = QPoly::from_i64(&[1, -2, 0, 5]);
        let b = QPoly::from_i64(&[3, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn modinv_works() {
        let m = QPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1]); // x^6 - 2
        let a = QPoly::x();
        let inv = a.modinv(&m).unwrap();
        // alpha^-1 = alpha^5 / 2
        let mut expected = vec![BigRational::zero(); 6];
        expected[5] = rat(1, 2);
        assert_eq!(inv, QPoly::new(expected));
        assert_eq!(a.mul(&inv).rem(&m), QPoly::one());
    }

    #[test]
    fn clear_denominators_roundtrip() {
        let a = QPoly::new(vec![rat(1, 2), rat(-3, 4), rat(5, 1)]);
        let (z, den) = a.clear_denominators();
        assert_eq!(den, BigInt::from(4));
        assert_eq!(z, ZPoly::from_i64(&[2, -3, 20]));
    }
}
