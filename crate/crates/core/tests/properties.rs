//! Property tests for the arithmetic substrate and the partition lattice.

use num_bigint::BigInt;
use num_integer::Integer;

use proptest::prelude::*;

use subfields_core::arith::crt::{crt_combine, rational_reconstruct};
use subfields_core::arith::fp_poly::FpPoly;
use subfields_core::arith::q_poly::QPoly;
use subfields_core::partition::PartitionVec;

fn fp_poly(p: u64, max_len: usize) -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..p, 0..max_len).prop_map(move |c| FpPoly::new(p, c))
}

fn q_poly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-40i64..40, 1i64..8), 0..max_len).prop_map(|cs| {
        QPoly::new(
            cs.into_iter()
                .map(|(n, d)| num_rational::BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    })
}

/// Random partition of {0..r-1} by random group labels.
fn partition(r: usize) -> impl Strategy<Value = PartitionVec> {
    prop::collection::vec(0..r, r).prop_map(move |labels| {
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, g) in labels.into_iter().enumerate() {
            groups.entry(g).or_default().push(i);
        }
        let parts: Vec<Vec<usize>> = groups.into_values().collect();
        PartitionVec::from_parts_0based(r, &parts)
    })
}

/// Join oracle: repeatedly merge the parts of both partitions while any two
/// merged sets overlap (connected components of the part-overlap graph).
fn join_oracle(a: &PartitionVec, b: &PartitionVec) -> PartitionVec {
    let mut sets: Vec<std::collections::BTreeSet<usize>> = a
        .parts_0based()
        .into_iter()
        .chain(b.parts_0based())
        .map(|p| p.into_iter().collect())
        .collect();
    loop {
        let mut merged = false;
        'outer: for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if !sets[i].is_disjoint(&sets[j]) {
                    let extra = sets.remove(j);
                    sets[i].extend(extra);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    let parts: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    PartitionVec::from_parts_0based(a.len(), &parts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn fp_poly_distributive(a in fp_poly(101, 8), b in fp_poly(101, 8), c in fp_poly(101, 8)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn fp_poly_degree_adds(a in fp_poly(101, 8), b in fp_poly(101, 8)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            a.mul(&b).degree(),
            Some(a.degree().unwrap() + b.degree().unwrap())
        );
    }

    #[test]
    fn q_poly_distributive(a in q_poly(6), b in q_poly(6), c in q_poly(6)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn q_poly_degree_adds(a in q_poly(6), b in q_poly(6)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            a.mul(&b).degree(),
            Some(a.degree().unwrap() + b.degree().unwrap())
        );
    }

    #[test]
    fn crt_roundtrip(r1 in 0u64..3, r2 in 0u64..5, r3 in 0u64..7, r4 in 0u64..11) {
        let input = [(r1, 3u64), (r2, 5), (r3, 7), (r4, 11)];
        let (x, m) = crt_combine(&input).unwrap();
        prop_assert_eq!(m, BigInt::from(3u64 * 5 * 7 * 11));
        for (r, p) in input {
            prop_assert_eq!(x.mod_floor(&BigInt::from(p)), BigInt::from(r));
        }
    }

    #[test]
    fn rational_reconstruction_roundtrip(a in -50i64..50, b in 1i64..50) {
        prop_assume!(num_integer::gcd(a, b) == 1 || a == 0);
        // P = 10007 > 2 * 50^2
        let p = BigInt::from(10007);
        let bound = BigInt::from(50);
        let binv = BigInt::from(b).modinv(&p).unwrap();
        let residue = (BigInt::from(a) * binv).mod_floor(&p);
        let got = rational_reconstruct(&residue, &p, &bound);
        let expected = num_rational::BigRational::new(BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(got, Some(expected));
    }

    #[test]
    fn join_idempotent_commutative(a in partition(12), b in partition(12)) {
        let ab = a.join(&b).unwrap();
        prop_assert_eq!(&ab, &b.join(&a).unwrap());
        prop_assert_eq!(&a.join(&a).unwrap(), &a);
        prop_assert!(a.refines(&ab).unwrap());
        prop_assert!(b.refines(&ab).unwrap());
    }

    #[test]
    fn join_associative(a in partition(10), b in partition(10), c in partition(10)) {
        let left = a.join(&b).unwrap().join(&c).unwrap();
        let right = a.join(&b.join(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn join_identity_and_absorbing(a in partition(9)) {
        prop_assert_eq!(&a.join(&PartitionVec::discrete(9)).unwrap(), &a);
        prop_assert!(a.join(&PartitionVec::trivial(9)).unwrap().is_trivial());
    }

    #[test]
    fn join_matches_component_oracle(a in partition(10), b in partition(10)) {
        prop_assert_eq!(a.join(&b).unwrap(), join_oracle(&a, &b));
    }

    #[test]
    fn normal_form_invariants(a in partition(16), b in partition(16)) {
        for p in [&a, &b, &a.join(&b).unwrap()] {
            prop_assert!(p.is_normal_form());
            let v = p.vec_1based();
            prop_assert_eq!(v[0], 1);
            for (i, &vi) in v.iter().enumerate() {
                prop_assert!(vi <= i + 1);
                prop_assert_eq!(v[vi - 1], vi);
            }
        }
    }

    #[test]
    fn fp_poly_mul_zero_absorbs(a in fp_poly(101, 8)) {
        prop_assert!(a.mul(&FpPoly::zero(101)).is_zero());
    }
}

#[test]
fn q_poly_one_is_identity() {
    let a = QPoly::from_i64(&[3, -2, 5]);
    assert_eq!(a.mul(&QPoly::one()), a);
    assert!(a.mul(&QPoly::zero()).is_zero());
}
