//! The finite ring F_p[t]/(m(t)) and polynomials over it.
//!
//! Elements are `FpPoly` values of degree < deg(m), with the shared modulus
//! held once in `QuotientRing` instead of inside every element. The ring is
//! not a field in general: when m factors, nonzero elements can be zero
//! divisors, so inversion returns an `Option`.


use super::fp_poly::FpPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    pub p: u64,
    pub modulus: FpPoly,
}

impl QuotientRing {
    pub fn new(p: u64, modulus: FpPoly) -> Self {
        assert!(modulus.degree().is_some_and(|d| d >= 1));
        assert_eq!(modulus.p, p);
        QuotientRing { p, modulus }
    }

    pub fn deg(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p)
    }

    pub fn one(&self) -> FpPoly {
        FpPoly::one(self.p)
    }

    pub fn from_scalar(&self, c: u64) -> FpPoly {
        FpPoly::constant(self.p, c % self.p)
    }

    /// Class of t, the image of the field generator.
    pub fn gen(&self) -> FpPoly {
        FpPoly::x(self.p).rem(&self.modulus)
    }

    pub fn reduce(&self, a: &FpPoly) -> FpPoly {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.sub(b)
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b).rem(&self.modulus)
    }

    /// Inverse in the quotient ring: `Some` exactly when gcd(a, m) = 1.
    pub fn inv(&self, a: &FpPoly) -> Option<FpPoly> {
        let (g, s, _) = a.rem(&self.modulus).xgcd(&self.modulus);
        if !g.is_one() {
            return None;
        }
        Some(s.rem(&self.modulus))
    }

    pub fn is_invertible(&self, a: &FpPoly) -> bool {
        a.rem(&self.modulus).gcd(&self.modulus).is_one()
    }
}

/// Dense polynomial (in x) with coefficients in a quotient ring. All
/// operations take the ring as context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPoly {
    pub coeffs: Vec<FpPoly>,
}

impl RPoly {
    pub fn new(ring: &QuotientRing, coeffs: Vec<FpPoly>) -> Self {
        let mut r = RPoly {
            coeffs: coeffs.into_iter().map(|c| ring.reduce(&c)).collect(),
        };
        r.trim();
        r
    }

    pub fn zero() -> Self {
        RPoly { coeffs: vec![] }
    }

    pub fn one(ring: &QuotientRing) -> Self {
        RPoly {
            coeffs: vec![ring.one()],
        }
    }

    /// Promote a scalar-coefficient polynomial in x (its coefficients are
    /// embedded constants of the ring).
    pub fn from_fp_poly(ring: &QuotientRing, a: &FpPoly) -> Self {
        RPoly::new(
            ring,
            a.coeffs
                .iter()
                .map(|&c| FpPoly::constant(ring.p, c))
                .collect(),
        )
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

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &FpPoly {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, ring: &QuotientRing, i: usize) -> FpPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, ring: &QuotientRing, other: &RPoly) -> RPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RPoly::new(
            ring,
            (0..n)
                .map(|i| ring.add(&self.coeff(ring, i), &other.coeff(ring, i)))
                .collect(),
        )
    }

    pub fn sub(&self, ring: &QuotientRing, other: &RPoly) -> RPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RPoly::new(
            ring,
            (0..n)
                .map(|i| ring.sub(&self.coeff(ring, i), &other.coeff(ring, i)))
                .collect(),
        )
    }

    pub fn mul(&self, ring: &QuotientRing, other: &RPoly) -> RPoly {
        if self.is_zero() || other.is_zero() {
            return RPoly::zero();
        }
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = ring.mul(a, b);
                coeffs[i + j] = ring.add(&coeffs[i + j], &t);
            }
        }
        RPoly::new(ring, coeffs)
    }

    pub fn scale(&self, ring: &QuotientRing, c: &FpPoly) -> RPoly {
        RPoly::new(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    /// Division with remainder by a divisor whose leading coefficient is
    /// invertible; `None` when it is a zero divisor.
    pub fn divrem(&self, ring: &QuotientRing, div: &RPoly) -> Option<(RPoly, RPoly)> {
        assert!(!div.is_zero());
        let dd = div.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return Some((RPoly::zero(), self.clone()));
        }
        let lci = ring.inv(&div.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ring.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = ring.mul(&rem[i], &lci);
            quot[i - dd] = q.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = ring.mul(&q, dc);
                rem[i - dd + j] = ring.sub(&rem[i - dd + j], &t);
            }
        }
        rem.truncate(dd);
        let mut r = RPoly { coeffs: rem };
        r.trim();
        let mut q = RPoly { coeffs: quot };
        q.trim();
        Some((q, r))
    }

    pub fn rem_monic(&self, ring: &QuotientRing, div: &RPoly) -> RPoly {
        debug_assert!(div.is_monic());
        self.divrem(ring, div).expect("monic divisor").1
    }

    pub fn make_monic(&self, ring: &QuotientRing) -> Option<RPoly> {
        if self.is_zero() || self.is_monic() {
            return Some(self.clone());
        }
        let lci = ring.inv(self.coeffs.last().unwrap())?;
        Some(self.scale(ring, &lci))
    }

    /// Monic Euclidean gcd; `None` whenever a leading coefficient fails to
    /// invert (the caller treats the prime as unusable).
    pub fn gcd(&self, ring: &QuotientRing, other: &RPoly) -> Option<RPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let bm = b.make_monic(ring)?;
            let r = a.rem_monic(ring, &bm);
            a = bm;
            b = r;
        }
        a.make_monic(ring)
    }

    /// Evaluate at a scalar point c in F_p.
    pub fn eval_scalar(&self, ring: &QuotientRing, c: u64) -> FpPoly {
        let mut acc = ring.zero();
        let cc = ring.from_scalar(c);
        for co in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, &cc), co);
        }
        acc
    }

    pub fn derivative(&self, ring: &QuotientRing) -> RPoly {
        if self.coeffs.len() <= 1 {
            return RPoly::zero();
        }
        RPoly::new(
            ring,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale((i as u64) % ring.p))
                .collect(),
        )
    }

    /// Deterministic ordering key: x-degree first, then coefficient digits
    /// from the constant term up, each coefficient read as its t-digit
    /// sequence padded to the ring degree.
    pub fn order_key(&self, ring: &QuotientRing) -> Vec<u64> {
        let n = ring.deg();
        let mut key = vec![self.coeffs.len() as u64];
        for c in &self.coeffs {
            for a in 0..n {
                key.push(c.coeff(a));
            }
        }
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_one_is_one() {
        let ring = QuotientRing::new(5, FpPoly::new(5, vec![1, 0, 1])); // t^2 + 1
        assert_eq!(ring.inv(&ring.one()), Some(ring.one()));
    }

    #[test]
    fn zero_divisor_has_no_inverse() {
        // t in F_2[t]/(t^2)
        let ring = QuotientRing::new(2, FpPoly::new(2, vec![0, 0, 1]));
        assert_eq!(ring.inv(&FpPoly::x(2)), None);
    }

    #[test]
    fn inverse_of_t_matches_exhaustive_scan() {
        // F_5[t]/(t^2+1): scan all 25 elements for t*w = 1.
        let ring = QuotientRing::new(5, FpPoly::new(5, vec![1, 0, 1]));
        let t = FpPoly::x(5);
        let mut found = None;
        for a in 0..5u64 {
            for b in 0..5u64 {
                let w = FpPoly::new(5, vec![a, b]);
                if ring.mul(&t, &w).is_one() {
                    found = Some(w);
                }
            }
        }
        let expected = FpPoly::new(5, vec![0, 4]); // 4t
        assert_eq!(found, Some(expected.clone()));
        assert_eq!(ring.inv(&t), Some(expected));
    }

    #[test]
    fn inverse_roundtrip_exhaustive_small() {
        // Every element of F_3[t]/(t^3 + 2t + 1) either inverts or shares a
        // factor with the modulus.
        let ring = QuotientRing::new(3, FpPoly::new(3, vec![1, 2, 0, 1]));
        for a in 0..3u64 {
            for b in 0..3u64 {
                for c in 0..3u64 {
                    let e = FpPoly::new(3, vec![a, b, c]);
                    match ring.inv(&e) {
                        Some(w) => assert!(ring.mul(&e, &w).is_one()),
                        None => assert!(!e.gcd(&ring.modulus).is_one() || e.is_zero()),
                    }
                }
            }
        }
    }

    #[test]
    fn rpoly_divrem_roundtrip() {
        let ring = QuotientRing::new(7, FpPoly::new(7, vec![3, 1, 0, 1]));
        let a = RPoly::new(
            &ring,
            vec![
                FpPoly::new(7, vec![1, 2]),
                FpPoly::new(7, vec![0, 1, 5]),
                FpPoly::new(7, vec![4]),
                FpPoly::one(7),
            ],
        );
        let b = RPoly::new(&ring, vec![FpPoly::new(7, vec![2, 3]), FpPoly::one(7)]);
        let (q, r) = a.divrem(&ring, &b).unwrap();
        let back = q.mul(&ring, &b).add(&ring, &r);
        assert_eq!(back, a);
    }
}
