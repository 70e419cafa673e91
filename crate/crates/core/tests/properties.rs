use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use semiclifford::dense::{extract_rep, TOL};
use semiclifford::expansion::{expand, rep_to_dense};
use semiclifford::gf2::is_symplectic;
use semiclifford::normal_form::{commuting_set_normal_form, involution_normal_form, is_block_upper, is_nice_form};
use semiclifford::random::random_clifford_circuit;
use semiclifford::{BitMatrix, BitVector, CliffordRep, PhasedPauli};

fn clifford(seed: u64, n: usize) -> CliffordRep {
    random_clifford_circuit(&mut StdRng::seed_from_u64(seed), n, 15).0
}

fn pauli(n: usize, bits: u64, k: u8) -> PhasedPauli {
    PhasedPauli::new(k & 1 == 1, k & 2 == 2, BitVector::from_u64(2 * n, bits)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_product_is_associative(n in 1usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), k in 0u8..4) {
        let mask = (1u64 << (2 * n)) - 1;
        let (p, q, r) = (pauli(n, a & mask, k), pauli(n, b & mask, 0), pauli(n, c & mask, 3 - k));
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
    }

    #[test]
    fn composition_is_associative(n in 1usize..4, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (clifford(s1, n), clifford(s2, n), clifford(s3, n));
        let left = CliffordRep::compose(&CliffordRep::compose(&a, &b).unwrap(), &c).unwrap();
        let right = CliffordRep::compose(&a, &CliffordRep::compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(n in 1usize..5, seed in any::<u64>()) {
        let a = clifford(seed, n);
        prop_assert_eq!(CliffordRep::compose(&a, &a.inverse()).unwrap(), CliffordRep::identity(n));
        prop_assert_eq!(CliffordRep::compose(&a.inverse(), &a).unwrap(), CliffordRep::identity(n));
    }

    #[test]
    fn conjugation_is_a_homomorphism(n in 1usize..4, seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let rep = clifford(seed, n);
        let mask = (1u64 << (2 * n)) - 1;
        let (p, q) = (pauli(n, a & mask, 1), pauli(n, b & mask, 2));
        let lhs = rep.conjugate(&p.mul(&q).unwrap()).unwrap();
        let rhs = rep.conjugate(&p).unwrap().mul(&rep.conjugate(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hex_round_trip(n in 1usize..6, seed in any::<u64>()) {
        let rep = clifford(seed, n);
        let (c, h) = rep.to_hex();
        prop_assert_eq!(CliffordRep::from_hex(n, &c, &h).unwrap(), rep);
    }

    #[test]
    fn expansion_round_trips(n in 1usize..4, seed in any::<u64>()) {
        let rep = clifford(seed, n);
        let u = rep_to_dense(&rep).unwrap();
        prop_assert!(u.is_unitary(TOL));
        prop_assert_eq!(extract_rep(&u), Some(rep.clone()));
        let exp = expand(&rep).unwrap();
        prop_assert_eq!(exp.support_size(), 1usize << (2 * n - exp.s));
    }

    #[test]
    fn scrambled_involutions_normalize(n in 1usize..6, seed in any::<u64>(), mask in any::<u64>()) {
        // (I E; 0 I) with E symmetric, conjugated by a random symplectic matrix
        let mut e = BitMatrix::zeros(n, n);
        let mut bit = 0;
        for r in 0..n {
            for c in r..n {
                let v = (mask >> (bit % 64)) & 1 == 1;
                e.set(r, c, v);
                e.set(c, r, v);
                bit += 1;
            }
        }
        let id = BitMatrix::identity(n);
        let nice = BitMatrix::from_blocks(&id, &e, &BitMatrix::zeros(n, n), &id).unwrap();
        let s = clifford(seed, n);
        let c = &(s.inverse().c() * &nice) * s.c();
        let res = involution_normal_form(&c).unwrap();
        prop_assert!(is_symplectic(&res.m).unwrap());
        prop_assert!(is_nice_form(&res.normalized));
    }

    #[test]
    fn transvection_families_share_a_normal_form(n in 1usize..5, seed in any::<u64>(), picks in prop::collection::vec(any::<u64>(), 1..6)) {
        // matrices (I E; 0 I) commute with each other, and so do their
        // conjugates by one symplectic matrix
        let s = clifford(seed, n);
        let family: Vec<BitMatrix> = picks
            .iter()
            .map(|p| {
                let mut e = BitMatrix::zeros(n, n);
                e.set((*p as usize) % n, (*p as usize) % n, true);
                let id = BitMatrix::identity(n);
                let t = BitMatrix::from_blocks(&id, &e, &BitMatrix::zeros(n, n), &id).unwrap();
                &(s.c() * &t) * s.inverse().c()
            })
            .collect();
        let res = commuting_set_normal_form(&family).unwrap();
        prop_assert!(is_symplectic(&res.m).unwrap());
        for c in &res.normalized {
            prop_assert!(is_block_upper(c));
        }
    }
}
