//! Randomized invariants across the field, ring, coset, code, duality,
//! existence and oracle layers.

mod common;

use std::collections::HashSet;

use constacyclic::arith;
use constacyclic::codes::{
    build_code, code_from_generator, code_from_generator_in, f_phi, DEFAULT_ENUM_CAP,
};
use constacyclic::cosets::{q_cosets, s_orbits};
use constacyclic::duality::{
    galois_dual, is_galois_selfdual, is_iso_galois_selfdual, phi_iso_witness, phi_selfdual,
    IsometrySpec,
};
use constacyclic::existence::{
    euclidean_selfdual_exists, galois_selfdual_exists, hermitian_selfdual_exists,
    iso_selfdual_exists,
};
use constacyclic::gf::make_field;
use constacyclic::oracle::{brute_dual, brute_equal_codes, naive_cosets};
use constacyclic::polyring::{ext_gcd, quotient_mul, Poly, QuotientRing};
use proptest::prelude::*;

const CASES: u32 = 256;

fn feasible(pr: &constacyclic::cosets::CodeParams) -> bool {
    (pr.q() as f64).powi(pr.n() as i32) <= 65536.0
}

fn field_and_pair() -> impl Strategy<Value = ((u64, u32), u64, u64, u64)> {
    let fields = prop::sample::select(vec![
        (2u64, 10u32),
        (3, 5),
        (5, 4),
        (7, 3),
        (2, 17),
        (3, 11),
        (65521, 1),
    ]);
    (fields, any::<u64>(), any::<u64>(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms_on_random_elements(((p, m), a, b, c) in field_and_pair()) {
        let f = make_field(p, m).unwrap();
        let (a, b, c) = (a % f.size(), b % f.size(), c % f.size());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            let k = f.log(a).unwrap();
            prop_assert_eq!(f.gen_pow(k as i64), a);
        }
        prop_assert_eq!(f.frobenius(a, m as i64), a);
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
    }

    #[test]
    fn bezout_identity(
        (p, m) in prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 2), (5, 1), (7, 1)]),
        a in prop::collection::vec(any::<u64>(), 0..8),
        b in prop::collection::vec(any::<u64>(), 0..8),
    ) {
        let f = make_field(p, m).unwrap();
        let a = Poly::new(&f, a.iter().map(|x| x % f.size()).collect());
        let b = Poly::new(&f, b.iter().map(|x| x % f.size()).collect());
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, u, v) = ext_gcd(&a, &b).unwrap();
        prop_assert_eq!(u.mul(&a).unwrap().add(&v.mul(&b).unwrap()).unwrap(), g.clone());
        if !g.is_zero() {
            prop_assert!(g.is_monic());
            prop_assert!(a.divisible_by(&g).unwrap() && b.divisible_by(&g).unwrap());
        }
        if !b.is_zero() {
            let (qt, rm) = a.divmod(&b).unwrap();
            prop_assert_eq!(qt.mul(&b).unwrap().add(&rm).unwrap(), a);
            prop_assert!(rm.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }

    #[test]
    fn quotient_ring_axioms(
        i in 0..common::instances().len(),
        raw in prop::collection::vec(any::<u64>(), 24),
    ) {
        let pr = &common::instances()[i];
        let f = pr.base_field();
        let ring = QuotientRing::new(f, pr.n(), pr.lambda_raw());
        let w = |k: usize| ring.from_word(&raw[k * 8..k * 8 + pr.n()].iter().map(|x| x % f.size()).collect::<Vec<_>>()).unwrap();
        let (a, b, c) = (w(0), w(1), w(2));
        prop_assert_eq!(quotient_mul(&a, &b).unwrap(), quotient_mul(&b, &a).unwrap());
        prop_assert_eq!(
            quotient_mul(&quotient_mul(&a, &b).unwrap(), &c).unwrap(),
            quotient_mul(&a, &quotient_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            quotient_mul(&a, &b.add(&c).unwrap()).unwrap(),
            quotient_mul(&a, &b).unwrap().add(&quotient_mul(&a, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn cosets_partition_their_class(i in 0..common::instances().len(), t in any::<usize>()) {
        let pr = &common::instances()[i];
        let sp = pr.space();
        let units = common::units(pr);
        let s = units[t % units.len()] as i64;
        let cosets = q_cosets(sp, s).unwrap();
        let mut seen = HashSet::new();
        for c in &cosets {
            prop_assert_eq!(c.rep, *c.members.iter().min().unwrap());
            for &k in &c.members {
                prop_assert!(seen.insert(k));
                prop_assert!(c.members.contains(&(k * sp.q % sp.modulus)));
            }
        }
        let class = (s as u64) % pr.r();
        let expected: HashSet<u64> = (0..sp.modulus).filter(|k| k % pr.r() == class).collect();
        prop_assert_eq!(seen, expected);
        let total: usize = cosets.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total as u64, pr.n_prime());
        let mut naive: Vec<Vec<u64>> = naive_cosets(pr, s).unwrap();
        naive.sort();
        let mut ours: Vec<Vec<u64>> = cosets.iter().map(|c| c.members.clone()).collect();
        ours.sort();
        prop_assert_eq!(naive, ours);
    }

    #[test]
    fn orbits_close_up(i in 0..common::instances().len(), t in any::<usize>()) {
        let pr = &common::instances()[i];
        let sp = pr.space();
        let cosets = q_cosets(sp, 1).unwrap();
        let classwise: Vec<u64> = common::units(pr).into_iter().filter(|u| u % pr.r() == 1 % pr.r()).collect();
        let s = classwise[t % classwise.len()];
        let orbits = s_orbits(sp, s as i64, &cosets).unwrap();
        prop_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), cosets.len());
        for orbit in &orbits {
            let start = orbit[0].rep;
            let mut k = start;
            for _ in 0..orbit.len() {
                k = k * s % sp.modulus;
            }
            let home = cosets.iter().find(|c| c.members.contains(&k)).unwrap();
            prop_assert_eq!(home.rep, start);
        }
    }

    #[test]
    fn theta_invariants(i in 0..common::instances().len()) {
        let pr = &common::instances()[i];
        let big = pr.big_field();
        let t = pr.theta().value();
        prop_assert_eq!(big.order(t).unwrap(), pr.modulus());
        prop_assert_eq!(big.pow(t, pr.n() as u64), pr.embedding().embed_raw(pr.lambda_raw()));
    }

    #[test]
    fn membership_paths_and_generator_round_trip(
        (pr, phi) in common::instance_and_phi(),
        raw in prop::collection::vec(any::<u64>(), 8),
        m in any::<u64>(),
    ) {
        let code = build_code(&pr, &phi).unwrap();
        let f = pr.base_field();
        let ring = code.ring();
        let word = ring.from_word(&raw[..pr.n()].iter().map(|x| x % f.size()).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(code.contains_by_division(&word).unwrap(), code.contains_by_annihilation(&word).unwrap());
        let member = quotient_mul(&word, &ring.elem(code.generator()).unwrap()).unwrap();
        prop_assert!(code.contains(&member).unwrap());
        let back = code_from_generator(&pr, code.generator()).unwrap();
        prop_assert_eq!(back.phi(), &phi);
        let c = 2 + m % f.size().saturating_sub(1).max(1);
        if c < f.size() {
            prop_assert!(code_from_generator(&pr, &code.generator().scale(c)).is_err());
        }
        let generator = f_phi(&pr, &phi.complement()).unwrap();
        prop_assert_eq!(&generator, code.generator());
        let again = code_from_generator_in(&pr, 1, &generator).unwrap();
        prop_assert_eq!(again.phi(), &phi);
    }

    #[test]
    fn codeword_sets_are_constacyclic_subspaces((pr, phi) in common::instance_and_phi(), a in any::<u64>()) {
        prop_assume!(feasible(&pr));
        let code = build_code(&pr, &phi).unwrap();
        let f = pr.base_field();
        let words: HashSet<Vec<u64>> = code.enumerate_codewords(DEFAULT_ENUM_CAP).unwrap().into_iter().collect();
        prop_assert_eq!(words.len() as u128, code.size());
        let a = a % f.size();
        let n = pr.n();
        for w in words.iter().take(64) {
            let scaled: Vec<u64> = w.iter().map(|&x| f.mul(a, x)).collect();
            prop_assert!(words.contains(&scaled));
            let mut shifted = vec![f.mul(pr.lambda_raw(), w[n - 1])];
            shifted.extend_from_slice(&w[..n - 1]);
            prop_assert!(words.contains(&shifted));
            let first = words.iter().next().unwrap();
            let sum: Vec<u64> = w.iter().zip(first).map(|(&x, &y)| f.add(x, y)).collect();
            prop_assert!(words.contains(&sum));
        }
    }

    #[test]
    fn closed_form_dual_matches_oracle((pr, phi) in common::instance_and_phi(), h in 0u32..8) {
        prop_assume!(feasible(&pr));
        let h = h % pr.e();
        let code = build_code(&pr, &phi).unwrap();
        let brute = brute_dual(&code, h, DEFAULT_ENUM_CAP).unwrap();
        prop_assert!(brute_equal_codes(&brute, &galois_dual(&code, h).unwrap(), DEFAULT_ENUM_CAP).unwrap());
        let words: HashSet<Vec<u64>> = code.enumerate_codewords(DEFAULT_ENUM_CAP).unwrap().into_iter().collect();
        prop_assert_eq!(is_galois_selfdual(&code, h), brute == words);
        prop_assert_eq!(is_galois_selfdual(&code, h), phi_selfdual(&phi, h).is_ok());
    }

    #[test]
    fn iso_witness_maps_code_to_its_dual((pr, phi) in common::instance_and_phi(), h in 0u32..8) {
        let h = h % pr.e();
        let code = build_code(&pr, &phi).unwrap();
        prop_assert_eq!(is_iso_galois_selfdual(&code, h), phi_iso_witness(&phi));
        if let Some(t) = is_iso_galois_selfdual(&code, h) {
            // M_t sends C_φ to C_φ̄; the dual is a further -p^{e-h} away.
            let s = -(pr.p().pow(pr.e() - h) as i64) * t as i64;
            let image = IsometrySpec::new(&pr, s).unwrap().on_code(&code).unwrap();
            prop_assert!(image == galois_dual(&code, h).unwrap());
        }
    }

    #[test]
    fn existence_verdicts_are_consistent(i in 0..common::instances().len()) {
        let pr = &common::instances()[i];
        let e = pr.e();
        let iso = iso_selfdual_exists(pr, 0);
        for h in 0..=e {
            let sd = galois_selfdual_exists(pr, h);
            if let Some(w) = &sd.witness_phi {
                prop_assert!(phi_selfdual(w, h).is_ok());
            }
            prop_assert_eq!(sd.exists, sd.witness_phi.is_some());
            let iso_h = iso_selfdual_exists(pr, h);
            prop_assert_eq!(iso_h.exists, iso.exists);
            if let Some(w) = &iso_h.witness_phi {
                prop_assert!(phi_iso_witness(w).is_some());
            }
        }
        prop_assert_eq!(euclidean_selfdual_exists(pr).exists, galois_selfdual_exists(pr, 0).exists);
        if e.is_multiple_of(2) {
            prop_assert_eq!(hermitian_selfdual_exists(pr).exists, galois_selfdual_exists(pr, e / 2).exists);
        }
    }

    #[test]
    fn brute_dual_is_involutive((pr, phi) in common::instance_and_phi(), h in 0u32..8) {
        prop_assume!(feasible(&pr));
        let h = h % pr.e();
        let code = build_code(&pr, &phi).unwrap();
        let dual = galois_dual(&code, h).unwrap();
        let back = brute_dual(&dual, pr.e() - h, DEFAULT_ENUM_CAP).unwrap();
        prop_assert!(brute_equal_codes(&back, &code, DEFAULT_ENUM_CAP).unwrap());
    }

    #[test]
    fn units_act_bijectively_on_words(i in 0..common::instances().len(), t in any::<usize>()) {
        let pr = &common::instances()[i];
        prop_assume!(feasible(pr) && pr.q().pow(pr.n() as u32) <= 512);
        let units = common::units(pr);
        let m = IsometrySpec::new(pr, units[t % units.len()] as i64).unwrap();
        let f = pr.base_field();
        let ring = QuotientRing::new(f, pr.n(), pr.lambda_raw());
        let total = pr.q().pow(pr.n() as u32);
        let mut images = HashSet::new();
        for x in 0..total {
            let word: Vec<u64> = (0..pr.n()).map(|j| x / pr.q().pow(j as u32) % pr.q()).collect();
            images.insert(m.apply(&ring.from_word(&word).unwrap()).unwrap().to_word());
        }
        prop_assert_eq!(images.len() as u64, total);
        prop_assert_eq!(arith::gcd(m.multiplier(), pr.modulus()), 1);
    }
}
