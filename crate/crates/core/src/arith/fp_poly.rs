//! Dense univariate polynomials over F_p.
//!
//! `coeffs[i]` is the coefficient of x^i; the zero polynomial is the empty
//! vector, so `degree()` returns `None` for zero.

use super::fp;
use rand::Rng;

/// Below this operand length multiplication stays schoolbook.
const KARATSUBA_THRESHOLD: usize = 32;

fn mul_coeffs(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = fp::add(out[i + j], fp::mul(x, y, p), p);
            }
        }
        return out;
    }
    // Karatsuba split at half the longer operand.
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));
    let z0 = mul_coeffs(a0, b0, p);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &c) in z0.iter().enumerate() {
        out[i] = fp::add(out[i], c, p);
    }
    if !a1.is_empty() && !b1.is_empty() {
        let z2 = mul_coeffs(a1, b1, p);
        for (i, &c) in z2.iter().enumerate() {
            out[2 * m + i] = fp::add(out[2 * m + i], c, p);
        }
        let sa: Vec<u64> = (0..a0.len().max(a1.len()))
            .map(|i| fp::add(*a0.get(i).unwrap_or(&0), *a1.get(i).unwrap_or(&0), p))
            .collect();
        let sb: Vec<u64> = (0..b0.len().max(b1.len()))
            .map(|i| fp::add(*b0.get(i).unwrap_or(&0), *b1.get(i).unwrap_or(&0), p))
            .collect();
        let z1 = mul_coeffs(&sa, &sb, p);
        for (i, &c) in z1.iter().enumerate() {
            let mut v = c;
            if let Some(&c0) = z0.get(i) {
                v = fp::sub(v, c0, p);
            }
            if let Some(&c2) = z2.get(i) {
                v = fp::sub(v, c2, p);
            }
            out[m + i] = fp::add(out[m + i], v, p);
        }
    } else {
        // one operand fit entirely below the split: only the cross term
        let (hi, lo) = if a1.is_empty() { (b1, a0) } else { (a1, b0) };
        if !hi.is_empty() && !lo.is_empty() {
            let z1 = mul_coeffs(lo, hi, p);
            for (i, &c) in z1.iter().enumerate() {
                out[m + i] = fp::add(out[m + i], c, p);
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl std::fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FpPoly(mod {}: {:?})", self.p, self.coeffs)
    }
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpPoly::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| fp::add(self.coeff(i), other.coeff(i), p))
            .collect();
        let mut r = FpPoly { p, coeffs };
        r.trim();
        r
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| fp::sub(self.coeff(i), other.coeff(i), p))
            .collect();
        let mut r = FpPoly { p, coeffs };
        r.trim();
        r
    }

    pub fn neg(&self) -> FpPoly {
        let coeffs = self.coeffs.iter().map(|&c| fp::neg(c, self.p)).collect();
        FpPoly { p: self.p, coeffs }
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(p);
        }
        let mut r = FpPoly {
            p,
            coeffs: mul_coeffs(&self.coeffs, &other.coeffs, p),
        };
        r.trim();
        r
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let coeffs = self.coeffs.iter().map(|&a| fp::mul(a, c, self.p)).collect();
        let mut r = FpPoly { p: self.p, coeffs };
        r.trim();
        r
    }

    /// Division with remainder; divisor must be nonzero.
    pub fn divrem(&self, div: &FpPoly) -> (FpPoly, FpPoly) {
        debug_assert_eq!(self.p, div.p);
        assert!(!div.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = div.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return (FpPoly::zero(p), self.clone());
        }
        let lc_inv = fp::inv(div.lc(), p).expect("leading coefficient invertible mod prime");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = fp::mul(rem[i], lc_inv, p);
            if q == 0 {
                continue;
            }
            quot[i - dd] = q;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                rem[i - dd + j] = fp::sub(rem[i - dd + j], fp::mul(q, dc, p), p);
            }
        }
        rem.truncate(dd);
        let mut r = FpPoly { p, coeffs: rem };
        r.trim();
        let mut q = FpPoly { p, coeffs: quot };
        q.trim();
        (q, r)
    }

    pub fn rem(&self, div: &FpPoly) -> FpPoly {
        self.divrem(div).1
    }

    pub fn make_monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = fp::inv(self.lc(), self.p).unwrap();
        self.scale(inv)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns (g, s, t) monic with s*self + t*other = g.
    pub fn xgcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            (r0, r1) = (r1, r);
            let ns = s0.sub(&q.mul(&s1));
            (s0, s1) = (s1, ns);
            let nt = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, nt);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lci = fp::inv(r0.lc(), p).unwrap();
        (r0.scale(lci), s0.scale(lci), t0.scale(lci))
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp::mul(c, (i as u64) % self.p, self.p))
            .collect();
        let mut r = FpPoly { p: self.p, coeffs };
        r.trim();
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = fp::add(fp::mul(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// self^exp mod m, with the exponent given as little-endian bits.
    pub fn pow_mod_bits(&self, exp_bits: &[bool], m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.rem(m);
        for &bit in exp_bits {
            if bit {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    pub fn pow_mod(&self, exp: u64, m: &FpPoly) -> FpPoly {
        let mut bits = vec![];
        let mut e = exp;
        while e > 0 {
            bits.push(e & 1 == 1);
            e >>= 1;
        }
        self.pow_mod_bits(&bits, m)
    }

    /// Uniformly random polynomial of degree < bound.
    pub fn random<R: Rng>(p: u64, bound: usize, rng: &mut R) -> FpPoly {
        let coeffs = (0..bound).map(|_| rng.gen_range(0..p)).collect();
        FpPoly::new(p, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let p = 13;
        let a = FpPoly::new(p, vec![1, 2, 3, 4, 5]);
        let b = FpPoly::new(p, vec![7, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().is_none_or(|d| d < 2));
    }

    #[test]
    fn xgcd_identity() {
        let p = 101;
        let a = FpPoly::new(p, vec![3, 0, 1]); // x^2 + 3
        let b = FpPoly::new(p, vec![5, 1]); // x + 5
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn deg_of_product_adds() {
        let p = 7;
        let a = FpPoly::new(p, vec![1, 1, 1]);
        let b = FpPoly::new(p, vec![2, 3]);
        assert_eq!(a.mul(&b).degree(), Some(3));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        use rand::SeedableRng;
        let p = (1u64 << 31) - 1;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for (la, lb) in [(70, 70), (70, 33), (90, 40), (33, 100)] {
            let a = FpPoly::random(p, la, &mut rng);
            let b = FpPoly::random(p, lb, &mut rng);
            let mut naive = vec![0u64; la + lb - 1];
            for i in 0..la {
                for j in 0..lb {
                    naive[i + j] = fp::add(naive[i + j], fp::mul(a.coeff(i), b.coeff(j), p), p);
                }
            }
            assert_eq!(a.mul(&b), FpPoly::new(p, naive));
        }
    }
}
