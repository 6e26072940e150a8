//! Oracle equivalence for the modular gcd: the direct monic Euclidean
//! remainder sequence over Q(alpha) must agree with the modular
//! reconstruction on random monic divisors of f.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use subfields_core::arith::z_poly::ZPoly;
use subfields_core::factor::trager::subfield_factorization;
use subfields_core::modgcd::modular_gcd;
use subfields_core::numfield::{KPoly, NumberField};

/// Direct Euclidean gcd over K, the independent route.
fn euclid_gcd_k(a: &KPoly, b: &KPoly) -> KPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let bm = b.make_monic().unwrap();
        let r = a.rem_monic(&bm).unwrap();
        a = bm;
        b = r;
    }
    a.make_monic().unwrap()
}

fn random_divisor(factors: &[KPoly], rng: &mut ChaCha8Rng, field: &Arc<NumberField>) -> KPoly {
    loop {
        let mut acc = KPoly::one(field);
        let mut any = false;
        for f in factors {
            if rng.gen_bool(0.5) {
                acc = acc.mul(f);
                any = true;
            }
        }
        if any {
            return acc;
        }
    }
}

#[test]
fn modular_gcd_agrees_with_euclid_on_random_divisors() {
    let fields = [
        vec![-2i64, 0, 0, 0, 0, 0, 1], // x^6 - 2
        vec![-2, 0, 0, 1],             // x^3 - 2
        vec![1, 0, 0, 0, 1],           // x^4 + 1
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(12345);
    for coeffs in fields {
        let k = NumberField::new(&ZPoly::new(
            coeffs.iter().map(|&c| num_bigint::BigInt::from(c)).collect(),
        ))
        .unwrap();
        let sf = subfield_factorization(&k).unwrap();
        for _ in 0..20 {
            let a = random_divisor(sf.factors(), &mut rng, &k);
            let b = random_divisor(sf.factors(), &mut rng, &k);
            let fast = modular_gcd(&a, &b, None).unwrap();
            let slow = euclid_gcd_k(&a, &b);
            assert_eq!(fast, slow, "gcd mismatch for field {:?}", k.min_poly());
            // the gcd divides both inputs
            assert!(a.rem_monic(&fast).unwrap().is_zero());
            assert!(b.rem_monic(&fast).unwrap().is_zero());
        }
    }
}
