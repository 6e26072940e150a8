//! The number field K = Q(alpha): element arithmetic in the power basis,
//! polynomials over K, reduction modulo good primes, and good-prime search.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::fp_poly::FpPoly;
use crate::arith::q_poly::QPoly;
use crate::arith::quotient::{QuotientRing, RPoly};
use crate::arith::z_poly::{bigint_mod_u64, ZPoly};
use crate::error::{Error, Result};
use crate::factor::integers::is_irreducible;

/// K = Q[x]/(f) for monic irreducible integer f. Construction normalizes a
/// general integer polynomial to a monic one (root scaled by the leading
/// coefficient) and verifies irreducibility.
#[derive(Debug)]
pub struct NumberField {
    min_poly_z: ZPoly,
    min_poly_q: QPoly,
    n: usize,
    deriv_q: QPoly,
    inv_deriv_rep: QPoly,
    /// beta = alpha_scale * alpha_original; 1 when the input was monic.
    alpha_scale: BigInt,
    input_poly: ZPoly,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly_z == other.min_poly_z
    }
}
impl Eq for NumberField {}

impl NumberField {
    pub fn new(input: &ZPoly) -> Result<Arc<NumberField>> {
        let d = input.degree().ok_or(Error::NotIrreducible)?;
        if d < 1 {
            return Err(Error::NotIrreducible);
        }
        let prim = input.primitive();
        if !is_irreducible(&prim) {
            return Err(Error::NotIrreducible);
        }
        let lc = prim.lc();
        let monic = if lc.is_one() {
            prim.clone()
        } else {
            let mut coeffs: Vec<BigInt> = prim
                .coeffs
                .iter()
                .enumerate()
                .take(d)
                .map(|(i, c)| c * lc.pow((d - 1 - i) as u32))
                .collect();
            coeffs.push(BigInt::one());
            ZPoly::new(coeffs)
        };
        let min_poly_q = QPoly::from_zpoly(&monic);
        let deriv_q = min_poly_q.derivative();
        // f separable, so f'(alpha) is invertible; cache its inverse.
        let inv_deriv_rep = deriv_q.modinv(&min_poly_q)?;
        Ok(Arc::new(NumberField {
            min_poly_z: monic,
            min_poly_q,
            n: d,
            deriv_q,
            inv_deriv_rep,
            alpha_scale: lc,
            input_poly: prim,
        }))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn min_poly(&self) -> &ZPoly {
        &self.min_poly_z
    }

    pub fn min_poly_q(&self) -> &QPoly {
        &self.min_poly_q
    }

    pub fn input_poly(&self) -> &ZPoly {
        &self.input_poly
    }

    pub fn alpha_scale(&self) -> &BigInt {
        &self.alpha_scale
    }

    /// Squared 2-norm of the monic defining polynomial.
    pub fn norm2_sq(&self) -> BigInt {
        self.min_poly_z.norm2_sq()
    }

    pub fn alpha(self: &Arc<Self>) -> NFElement {
        self.elem_from_qpoly(QPoly::x())
    }

    pub fn zero_elem(self: &Arc<Self>) -> NFElement {
        NFElement {
            field: Arc::clone(self),
            rep: QPoly::zero(),
        }
    }

    pub fn one_elem(self: &Arc<Self>) -> NFElement {
        self.elem_from_rational(BigRational::one())
    }

    pub fn elem_from_rational(self: &Arc<Self>, c: BigRational) -> NFElement {
        NFElement {
            field: Arc::clone(self),
            rep: QPoly::constant(c),
        }
    }

    pub fn elem_from_qpoly(self: &Arc<Self>, rep: QPoly) -> NFElement {
        NFElement {
            field: Arc::clone(self),
            rep: rep.rem(&self.min_poly_q),
        }
    }

    /// f'(alpha) as a field element.
    pub fn deriv_at_alpha(self: &Arc<Self>) -> NFElement {
        self.elem_from_qpoly(self.deriv_q.clone())
    }

    /// 1 / f'(alpha) as a field element.
    pub fn inv_deriv_at_alpha(self: &Arc<Self>) -> NFElement {
        NFElement {
            field: Arc::clone(self),
            rep: self.inv_deriv_rep.clone(),
        }
    }

    /// f viewed as a polynomial over K.
    pub fn min_poly_as_kpoly(self: &Arc<Self>) -> KPoly {
        KPoly::from_scalar_poly(self, &self.min_poly_q)
    }

    /// x - alpha in K[x].
    pub fn x_minus_alpha(self: &Arc<Self>) -> KPoly {
        KPoly::new(
            Arc::clone(self),
            vec![QPoly::x().neg(), QPoly::one()],
        )
    }
}

/// Element of K stored as its representative polynomial in alpha of degree
/// < n.
#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    rep: QPoly,
}

impl std::fmt::Debug for NFElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NFElement({:?})", self.rep)
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}
impl Eq for NFElement {}

impl NFElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &QPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_monic() && self.rep.degree() == Some(0)
    }

    pub fn add(&self, other: &NFElement) -> NFElement {
        debug_assert!(Arc::ptr_eq(&self.field, &other.field));
        NFElement {
            field: Arc::clone(&self.field),
            rep: self.rep.add(&other.rep),
        }
    }

    pub fn sub(&self, other: &NFElement) -> NFElement {
        debug_assert!(Arc::ptr_eq(&self.field, &other.field));
        NFElement {
            field: Arc::clone(&self.field),
            rep: self.rep.sub(&other.rep),
        }
    }

    pub fn neg(&self) -> NFElement {
        NFElement {
            field: Arc::clone(&self.field),
            rep: self.rep.neg(),
        }
    }

    pub fn mul(&self, other: &NFElement) -> NFElement {
        debug_assert!(Arc::ptr_eq(&self.field, &other.field));
        NFElement {
            field: Arc::clone(&self.field),
            rep: self.rep.mul(&other.rep).rem(&self.field.min_poly_q),
        }
    }

    pub fn scale(&self, c: &BigRational) -> NFElement {
        NFElement {
            field: Arc::clone(&self.field),
            rep: self.rep.scale(c),
        }
    }

    pub fn inv(&self) -> Result<NFElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("field inverse"));
        }
        Ok(NFElement {
            field: Arc::clone(&self.field),
            rep: self.rep.modinv(&self.field.min_poly_q)?,
        })
    }

    pub fn pow(&self, mut e: u32) -> NFElement {
        let mut acc = self.field.one_elem();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image in F_p[t]/(fbar); errors when a denominator vanishes mod p.
    pub fn reduce_mod(&self, gp: &GoodPrime) -> Result<FpPoly> {
        reduce_qpoly(&self.rep, gp)
    }
}

pub(crate) fn reduce_qpoly(rep: &QPoly, gp: &GoodPrime) -> Result<FpPoly> {
    let p = gp.p;
    let mut coeffs = Vec::with_capacity(rep.coeffs.len());
    for c in &rep.coeffs {
        let den = bigint_mod_u64(c.denom(), p);
        let den_inv = crate::arith::fp::inv(den, p).ok_or(Error::BadPrime(p))?;
        let num = bigint_mod_u64(c.numer(), p);
        coeffs.push(crate::arith::fp::mul(num, den_inv, p));
    }
    Ok(FpPoly::new(p, coeffs))
}

/// Dense polynomial over K. Coefficients are stored as reduced representative
/// polynomials; the parent field is held once.
#[derive(Clone)]
pub struct KPoly {
    field: Arc<NumberField>,
    coeffs: Vec<QPoly>,
}

impl std::fmt::Debug for KPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KPoly({:?})", self.coeffs)
    }
}

impl PartialEq for KPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for KPoly {}

impl KPoly {
    pub fn new(field: Arc<NumberField>, coeffs: Vec<QPoly>) -> KPoly {
        let min = field.min_poly_q.clone();
        let mut r = KPoly {
            field,
            coeffs: coeffs.into_iter().map(|c| c.rem(&min)).collect(),
        };
        r.trim();
        r
    }

    pub fn zero(field: &Arc<NumberField>) -> KPoly {
        KPoly {
            field: Arc::clone(field),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> KPoly {
        KPoly {
            field: Arc::clone(field),
            coeffs: vec![QPoly::one()],
        }
    }

    /// Promote a polynomial with rational coefficients to K[x].
    pub fn from_scalar_poly(field: &Arc<NumberField>, p: &QPoly) -> KPoly {
        KPoly {
            field: Arc::clone(field),
            coeffs: p.coeffs.iter().map(|c| QPoly::constant(c.clone())).collect(),
        }
    }

    pub fn from_elems(coeffs: Vec<NFElement>) -> KPoly {
        assert!(!coeffs.is_empty());
        let field = Arc::clone(coeffs[0].field());
        KPoly::new(field, coeffs.into_iter().map(|e| e.rep).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
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

    pub fn coeff(&self, i: usize) -> NFElement {
        NFElement {
            field: Arc::clone(&self.field),
            rep: self.coeffs.get(i).cloned().unwrap_or_else(QPoly::zero),
        }
    }

    pub fn coeff_rep(&self, i: usize) -> QPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_monic() && c.degree() == Some(0))
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff_rep(i).add(&other.coeff_rep(i)))
            .collect();
        let mut r = KPoly {
            field: Arc::clone(&self.field),
            coeffs,
        };
        r.trim();
        r
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff_rep(i).sub(&other.coeff_rep(i)))
            .collect();
        let mut r = KPoly {
            field: Arc::clone(&self.field),
            coeffs,
        };
        r.trim();
        r
    }

    pub fn neg(&self) -> KPoly {
        KPoly {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(&self.field);
        }
        let min = &self.field.min_poly_q;
        let mut coeffs = vec![QPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        let coeffs = coeffs.into_iter().map(|c| c.rem(min)).collect();
        let mut r = KPoly {
            field: Arc::clone(&self.field),
            coeffs,
        };
        r.trim();
        r
    }

    pub fn scale(&self, c: &NFElement) -> KPoly {
        let min = &self.field.min_poly_q;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(&c.rep).rem(min))
            .collect();
        let mut r = KPoly {
            field: Arc::clone(&self.field),
            coeffs,
        };
        r.trim();
        r
    }

    /// Division with remainder by a monic divisor; errors otherwise. Callers
    /// only ever divide by monic factors of f.
    pub fn divrem_monic(&self, div: &KPoly) -> Result<(KPoly, KPoly)> {
        if !div.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let dd = div.degree().unwrap();
        if self.degree().is_none_or(|d| d < dd) {
            return Ok((KPoly::zero(&self.field), self.clone()));
        }
        let min = &self.field.min_poly_q;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![QPoly::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].clone();
            quot[i - dd] = q.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = q.mul(dc).rem(min);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
        }
        rem.truncate(dd);
        let mut r = KPoly {
            field: Arc::clone(&self.field),
            coeffs: rem,
        };
        r.trim();
        let mut qq = KPoly {
            field: Arc::clone(&self.field),
            coeffs: quot,
        };
        qq.trim();
        Ok((qq, r))
    }

    pub fn rem_monic(&self, div: &KPoly) -> Result<KPoly> {
        Ok(self.divrem_monic(div)?.1)
    }

    /// Divide by the leading coefficient.
    pub fn make_monic(&self) -> Result<KPoly> {
        if self.is_zero() || self.is_monic() {
            return Ok(self.clone());
        }
        let lc = self.coeff(self.degree().unwrap());
        let inv = lc.inv()?;
        Ok(self.scale(&inv))
    }

    pub fn derivative(&self) -> KPoly {
        if self.coeffs.len() <= 1 {
            return KPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
            .collect();
        KPoly {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero_elem();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&NFElement {
                field: Arc::clone(&self.field),
                rep: c.clone(),
            });
        }
        acc
    }

    /// Composition self(g(x)) over K by Horner's rule.
    pub fn compose(&self, g: &KPoly) -> KPoly {
        let mut acc = KPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&KPoly {
                field: Arc::clone(&self.field),
                coeffs: vec![c.clone()],
            });
        }
        acc
    }

    /// Image in (F_p[t]/(fbar))[x]; errors when any denominator vanishes.
    pub fn reduce_mod(&self, gp: &GoodPrime) -> Result<RPoly> {
        let ring = gp.ring();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(reduce_qpoly(c, gp)?);
        }
        Ok(RPoly::new(&ring, coeffs))
    }

    /// LCM of the denominators of all coefficient representatives.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = num_integer::Integer::lcm(&l, &c.denominator_lcm());
        }
        l
    }
}

/// A rational prime p with separable, degree-preserving image fbar of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPrime {
    pub p: u64,
    pub fbar: FpPoly,
}

impl GoodPrime {
    pub fn ring(&self) -> QuotientRing {
        QuotientRing::new(self.p, self.fbar.clone())
    }
}

/// Smallest good prime strictly greater than `after`: f mod p keeps its
/// degree and stays separable (checked by gcd(fbar, fbar') = 1).
pub fn next_good_prime(field: &NumberField, after: u64) -> GoodPrime {
    let f = field.min_poly();
    let mut p = after;
    loop {
        p = crate::arith::fp::next_prime(p);
        let fbar = f.reduce_mod(p);
        if fbar.degree() != Some(field.degree()) {
            continue;
        }
        if !fbar.gcd(&fbar.derivative()).is_one() {
            continue;
        }
        return GoodPrime { p, fbar };
    }
}

/// Default lower bound for prime searches: keeps the residue field at least
/// 2n elements so random evaluation points exist in abundance.
pub fn prime_search_floor(n: usize) -> u64 {
    (2 * n as u64).max(20)
}
