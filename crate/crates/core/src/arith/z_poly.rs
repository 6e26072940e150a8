//! Dense univariate polynomials over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp;
use super::fp_poly::FpPoly;
use crate::error::{Error, Result};

/// Residue of a big integer modulo a machine-word prime.
pub fn bigint_mod_u64(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ZPoly {
    pub coeffs: Vec<BigInt>,
}

impl std::fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "ZPoly({:?})", cs)
    }
}

impl ZPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = ZPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        ZPoly::new(vec![BigInt::one()])
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

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        ZPoly::new(super::karatsuba::mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// gcd of all coefficients, non-negative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the content and normalize the leading coefficient to be
    /// positive. Zero stays zero.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        ZPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division; errors when the division leaves a remainder or a
    /// non-integer quotient.
    pub fn exact_div(&self, div: &ZPoly) -> Result<ZPoly> {
        assert!(!div.is_zero());
        if self.is_zero() {
            return Ok(ZPoly::zero());
        }
        let dd = div.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return Err(Error::NotExactDivisor);
        }
        let dlc = div.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&dlc);
            if !r.is_zero() {
                return Err(Error::NotExactDivisor);
            }
            quot[i - dd] = q.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotExactDivisor);
        }
        Ok(ZPoly::new(quot))
    }

    /// Image in F_p[x]. The degree may drop when p divides the leading
    /// coefficient.
    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        FpPoly::new(
            p,
            self.coeffs.iter().map(|c| bigint_mod_u64(c, p)).collect(),
        )
    }

    /// Squared 2-norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// 1-norm of the coefficient vector.
    pub fn norm1(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Smallest integer >= the 2-norm of the coefficient vector.
    pub fn norm2_ceil(&self) -> BigInt {
        let sq = self.norm2_sq();
        let r = sq.sqrt();
        if &r * &r == sq {
            r
        } else {
            r + 1
        }
    }
}

/// gcd over Z by the modular method: monic gcd images modulo several primes,
/// CRT and symmetric lift, then trial division into both inputs. The result
/// is primitive with positive leading coefficient.
pub fn zpoly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let ap = a.primitive();
    let bp = b.primitive();
    let lc_gcd: BigInt = ap.lc().gcd(&bp.lc());
    // Mignotte-style cap so the loop provably terminates.
    let mind = ap.degree().unwrap().min(bp.degree().unwrap());
    let hard_bound: BigInt =
        (BigInt::one() << (mind + 2)) * ap.norm2_ceil().min(bp.norm2_ceil()) * &lc_gcd;

    let mut p: u64 = 1 << 30;
    let mut best_deg: Option<usize> = None;
    let mut acc: Vec<BigInt> = vec![];
    let mut modulus = BigInt::one();
    let mut prev: Option<ZPoly> = None;
    loop {
        p = fp::next_prime(p);
        let am = ap.reduce_mod(p);
        let bm = bp.reduce_mod(p);
        if am.degree() != ap.degree() || bm.degree() != bp.degree() {
            continue; // p divides a leading coefficient
        }
        let g = am.gcd(&bm);
        let gd = g.degree().unwrap();
        if gd == 0 {
            return ZPoly::one();
        }
        match best_deg {
            Some(d) if gd > d => continue, // unlucky prime
            Some(d) if gd < d => {
                acc.clear();
                modulus = BigInt::one();
                prev = None;
                best_deg = Some(gd);
            }
            None => best_deg = Some(gd),
            _ => {}
        }
        // Reconstruct lc_gcd * (monic gcd image), which has integer
        // coefficients bounded by the Mignotte cap.
        let scaled = g.scale(bigint_mod_u64(&lc_gcd, p));
        let digits: Vec<BigInt> = (0..=gd).map(|i| BigInt::from(scaled.coeff(i))).collect();
        if acc.is_empty() {
            acc = digits;
            modulus = BigInt::from(p);
        } else {
            for (i, d) in digits.iter().enumerate() {
                acc[i] = crt_pair(&acc[i], &modulus, d, &BigInt::from(p));
            }
            modulus *= BigInt::from(p);
        }
        let cand = symmetric_lift_poly(&acc, &modulus).primitive();
        let stable = prev.as_ref() == Some(&cand);
        prev = Some(cand.clone());
        if (stable || modulus > hard_bound)
            && ap.exact_div(&cand).is_ok()
            && bp.exact_div(&cand).is_ok()
        {
            return cand;
        }
    }
}

/// Combine x0 mod m0 with x1 mod m1 (coprime moduli) into x mod m0*m1.
pub(crate) fn crt_pair(x0: &BigInt, m0: &BigInt, x1: &BigInt, m1: &BigInt) -> BigInt {
    let e = m0.extended_gcd(m1);
    debug_assert!(e.gcd.is_one());
    let diff = ((x1 - x0) * e.x).mod_floor(m1);
    x0 + diff * m0
}

/// Lift a residue in [0, m) to the symmetric range (-m/2, m/2].
pub(crate) fn symmetric_lift(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

pub(crate) fn symmetric_lift_poly(coeffs: &[BigInt], m: &BigInt) -> ZPoly {
    ZPoly::new(coeffs.iter().map(|c| symmetric_lift(c, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_and_content() {
        let a = ZPoly::from_i64(&[-6, 0, -9]);
        assert_eq!(a.content(), BigInt::from(3));
        assert_eq!(a.primitive(), ZPoly::from_i64(&[2, 0, 3]));
    }

    #[test]
    fn exact_division() {
        let a = ZPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = ZPoly::from_i64(&[1, 1]); // x + 1
        assert_eq!(a.exact_div(&b).unwrap(), ZPoly::from_i64(&[-1, 1]));
        let c = ZPoly::from_i64(&[1, 1, 1]);
        assert!(c.exact_div(&b).is_err());
    }

    #[test]
    fn modular_gcd_simple() {
        let a = ZPoly::from_i64(&[-1, 0, 1]).mul(&ZPoly::from_i64(&[3, 7]));
        let b = ZPoly::from_i64(&[1, 1]).mul(&ZPoly::from_i64(&[5, 2, 11]));
        let g = zpoly_gcd(&a, &b);
        assert_eq!(g, ZPoly::from_i64(&[1, 1]));
        let coprime = zpoly_gcd(&ZPoly::from_i64(&[1, 0, 1]), &ZPoly::from_i64(&[-2, 1]));
        assert_eq!(coprime, ZPoly::one());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let la = 75;
        let lb = 41;
        let a = ZPoly::new((0..la).map(|i| BigInt::from(i * i - 37 * i + 5)).collect());
        let b = ZPoly::new((0..lb).map(|i| BigInt::from(-3 * i * i + 11)).collect());
        let mut naive = vec![BigInt::zero(); (la + lb - 1) as usize];
        for i in 0..la as usize {
            for j in 0..lb as usize {
                naive[i + j] += a.coeff(i) * b.coeff(j);
            }
        }
        assert_eq!(a.mul(&b), ZPoly::new(naive));
    }

    #[test]
    fn crt_pair_agrees() {
        let r = crt_pair(
            &BigInt::from(1),
            &BigInt::from(3),
            &BigInt::from(2),
            &BigInt::from(5),
        );
        assert_eq!(r.mod_floor(&BigInt::from(15)), BigInt::from(7));
    }
}
