use atl_core::algebra::{check_t_mult_rule, f_along_linear_extension};
use atl_core::expr::parse_element;
use atl_core::homs::{apply_e, apply_f, apply_psi};
use atl_core::random::{rng, HeapSampler, Rng64};
use atl_core::{Basis, Element, Heap, RingElem, System};
use proptest::prelude::*;
use rand::Rng;

fn sample(system: System, seed: u64, max_len: usize, terms: usize) -> (Element, Element, Element) {
    let s = HeapSampler::new(system, max_len).unwrap();
    let mut r = rng(seed);
    (s.element(&mut r, terms), s.element(&mut r, terms), s.element(&mut r, terms))
}

fn systems() -> impl Strategy<Value = System> {
    prop_oneof![Just(System::finite(3)), Just(System::affine(1)), Just(System::affine(2)), Just(System::affine(3))]
}

fn basis() -> impl Strategy<Value = Basis> {
    prop_oneof![Just(Basis::G), Just(Basis::T), Just(Basis::F)]
}

/// A random linear extension of the heap: adjacent commuting letters swapped at random.
fn shuffle_commuting(system: &System, word: &[u8], r: &mut Rng64) -> Vec<u8> {
    let mut w = word.to_vec();
    for _ in 0..4 * w.len() {
        if w.len() < 2 {
            break;
        }
        let i = r.gen_range(0..w.len() - 1);
        if system.commute(w[i], w[i + 1]) {
            w.swap(i, i + 1);
        }
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn multiplication_is_associative(sys in systems(), seed in any::<u64>()) {
        let (x, y, z) = sample(sys, seed, 4, 3);
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn multiplication_distributes(sys in systems(), seed in any::<u64>()) {
        let (x, y, z) = sample(sys, seed, 4, 3);
        let lhs = x.mul(&y.plus(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, x.mul(&y).unwrap().plus(&x.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn psi_is_an_automorphism_of_order_n_plus_1(rank in 1usize..=3, seed in any::<u64>(), d in -3i64..=3) {
        let sys = System::affine(rank);
        let (x, y, _) = sample(sys, seed, 4, 2);
        let psi = |e: &Element| apply_psi(e, d).unwrap();
        prop_assert_eq!(psi(&x.mul(&y).unwrap()), psi(&x).mul(&psi(&y)).unwrap());
        prop_assert_eq!(apply_psi(&x, rank as i64 + 1).unwrap(), x);
    }

    #[test]
    fn f_and_e_are_homomorphisms(n in 2usize..=3, seed in any::<u64>()) {
        let (x, y, _) = sample(System::affine(n - 1), seed, 4, 2);
        prop_assert_eq!(apply_f(n, &x.mul(&y).unwrap()).unwrap(), apply_f(n, &x).unwrap().mul(&apply_f(n, &y).unwrap()).unwrap());
        let (x, y, _) = sample(System::affine(n), seed, 4, 2);
        prop_assert_eq!(apply_e(n, &x.mul(&y).unwrap()).unwrap(), apply_e(n, &x).unwrap().mul(&apply_e(n, &y).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trip(sys in systems(), b in basis(), seed in any::<u64>()) {
        let x = sample(sys, seed, 5, 4).0.to_basis(b).unwrap();
        let v: serde_json::Value = serde_json::from_str(&x.to_json_value().to_string()).unwrap();
        prop_assert_eq!(Element::from_json_value(&v).unwrap(), x);
    }

    #[test]
    fn text_round_trip(sys in systems(), b in basis(), seed in any::<u64>()) {
        let x = sample(sys, seed, 5, 4).0.to_basis(b).unwrap();
        prop_assert_eq!(parse_element(&x.to_text(), sys).unwrap().to_basis(b).unwrap(), x);
    }

    #[test]
    fn basis_changes_round_trip(sys in systems(), b in basis(), seed in any::<u64>()) {
        let x = sample(sys, seed, 5, 4).0;
        prop_assert_eq!(x.to_basis(b).unwrap().to_basis(Basis::G).unwrap(), x);
    }

    #[test]
    fn f_is_independent_of_linear_extension(sys in systems(), seed in any::<u64>()) {
        let s = HeapSampler::new(sys, 7).unwrap();
        let mut r = rng(seed);
        let h = s.heap(&mut r);
        let w = shuffle_commuting(&sys, h.word(), &mut r);
        prop_assert_eq!(Heap::from_word(&sys, &w).unwrap(), h.clone());
        let canonical = Element::basis_element(sys, Basis::F, h).to_basis(Basis::G).unwrap();
        prop_assert_eq!(f_along_linear_extension(sys, &w).unwrap(), canonical);
    }

    #[test]
    fn t_multiplication_rule(sys in systems(), seed in any::<u64>()) {
        let s = HeapSampler::new(sys, 6).unwrap();
        let mut r = rng(seed);
        let h = s.heap(&mut r);
        let descents: Vec<u8> = h.left_descents(&sys).into_iter().collect();
        prop_assume!(!descents.is_empty());
        let l = descents[r.gen_range(0..descents.len())];
        let (engine, rule) = check_t_mult_rule(sys, l, &h).unwrap();
        prop_assert_eq!(engine, rule);
    }

    #[test]
    fn field_axioms(a in -4i64..=4, b in 1i64..=4, k in -3i32..=3) {
        let x = RingElem::from_int(a).add(&RingElem::v_pow(k));
        let y = RingElem::q().add(&RingElem::from_int(b));
        prop_assert_eq!(x.div(&y).unwrap().mul(&y), x.clone());
        prop_assert_eq!(x.add(&y).mul(&y), x.mul(&y).add(&y.mul(&y)));
        prop_assert!(RingElem::z().mul(&RingElem::z()).mul(&RingElem::delta()).is_one());
    }
}
