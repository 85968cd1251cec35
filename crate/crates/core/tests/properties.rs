use std::f64::consts::PI;

use num_integer::Integer;
use proptest::prelude::*;

use coincidence::counting::f;
use coincidence::splitting::{classify_prime, SymmetryOrder};
use coincidence::windows::{acceptance_ngon, exact_overlap_ngon, polygon_overlap_area, psi_hat};
use coincidence::words::{compose, sigma, RotationWord, WordJson};

const ORDERS: [u64; 6] = [3, 4, 5, 7, 8, 12];

fn order_strategy() -> impl Strategy<Value = SymmetryOrder> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|n| SymmetryOrder::normalize(n).unwrap())
}

/// Words over the pairs of the first few splitting primes of `n = 5`.
fn word_strategy() -> impl Strategy<Value = RotationWord> {
    let o = SymmetryOrder::normalize(5).unwrap();
    let labels = vec![(11u64, 0usize), (11, 1), (31, 0), (31, 1), (41, 0)];
    (
        0i64..10,
        prop::collection::vec((prop::sample::select(labels), -3i64..=3), 0..4),
        any::<bool>(),
    )
        .prop_map(move |(u, exps, c)| RotationWord::new(&o, u, exps, c))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn f_is_multiplicative(o in order_strategy(), a in 1u64..20_000, b in 1u64..20_000) {
        prop_assume!(a.gcd(&b) == 1);
        prop_assert_eq!(f(&o, a * b).unwrap(), f(&o, a).unwrap() * f(&o, b).unwrap());
    }

    #[test]
    fn splitting_means_equal_degrees(
        o in order_strategy(),
        p in prop::sample::select(coincidence::arith::primes_up_to(5000)),
    ) {
        let s = classify_prime(&o, p).unwrap();
        prop_assert!(s.deg_k == s.deg_l || s.deg_k == 2 * s.deg_l);
        if !s.ramified {
            prop_assert_eq!(s.splitting, s.deg_k == s.deg_l);
        }
    }

    #[test]
    fn compose_is_associative(a in word_strategy(), b in word_strategy(), c in word_strategy()) {
        let l = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let r = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn sigma_is_submultiplicative(a in word_strategy(), b in word_strategy()) {
        let ab = compose(&a, &b).unwrap();
        prop_assert!(sigma(&ab).unwrap() <= sigma(&a).unwrap() * sigma(&b).unwrap());
        prop_assert_eq!(sigma(&a.inverse()).unwrap(), sigma(&a).unwrap());
    }

    #[test]
    fn word_json_roundtrip(a in word_strategy()) {
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back: WordJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(RotationWord::from_json(&back).unwrap(), a);
    }

    #[test]
    fn acceptance_is_periodic_and_bounded(n_gon in 3u64..16, psi in 0.0f64..(2.0 * PI)) {
        let alpha = 2.0 * PI / n_gon as f64;
        let a = acceptance_ngon(n_gon, psi).unwrap();
        let b = acceptance_ngon(n_gon, psi + alpha).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert!(a <= 1.0);
        let h = psi_hat(n_gon, psi);
        prop_assert!((0.0..alpha).contains(&h));
    }

    #[test]
    fn clipping_agrees_with_exact_overlap(n_gon in 3u64..16, psi in 0.0f64..(2.0 * PI)) {
        let clip = polygon_overlap_area(n_gon, psi).unwrap();
        let exact = exact_overlap_ngon(n_gon, psi).unwrap();
        prop_assert!((clip - exact).abs() < 1e-9);
    }
}
