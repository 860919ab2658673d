//! Order laws, certificates and agreement with the independent oracles.

use proptest::prelude::*;
use rand::Rng;
use varorder::order::{decide_order_default, default_order_tol};
use varorder::random;
use varorder::{
    canonical_representative, class_equal, extract_function, mcshane_extend, variance, witness_search, Error,
    HermitianObservable, OracleConfig,
};

fn pair(seed: u64, n: usize, slope: f64) -> (HermitianObservable, HermitianObservable) {
    let mut rng = random::seeded(seed);
    let b = random::hermitian(n, &mut rng);
    let d = b.spectral().unwrap();
    let f = random::lipschitz_table(&d.eigenvalues(), slope, &mut rng);
    (d.apply_function(&f).unwrap(), b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflexive(seed in any::<u64>(), n in 1usize..=8) {
        let a = random::hermitian(n, &mut random::seeded(seed));
        prop_assert!(decide_order_default(&a, &a).unwrap().holds());
    }

    #[test]
    fn transitive_along_composed_functions(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = random::seeded(seed);
        let c = random::hermitian(n, &mut rng);
        let dc = c.spectral().unwrap();
        let g = random::lipschitz_table(&dc.eigenvalues(), 1.0, &mut rng);
        let b = dc.apply_function(&g).unwrap();
        let db = b.spectral().unwrap();
        let f = random::lipschitz_table(&db.eigenvalues(), 1.0, &mut rng);
        let a = db.apply_function(&f).unwrap();
        prop_assert!(decide_order_default(&a, &b).unwrap().holds());
        prop_assert!(decide_order_default(&b, &c).unwrap().holds());
        prop_assert!(decide_order_default(&a, &c).unwrap().holds());
    }

    #[test]
    fn certificate_reproduces_a(seed in any::<u64>(), n in 1usize..=8) {
        let (a, b) = pair(seed, n, 1.0);
        let f = extract_function(&a, &b, default_order_tol(&a, &b)).unwrap();
        prop_assert!(f.lipschitz_constant() <= 1.0 + 1e-8);
        let rebuilt = b.spectral().unwrap().apply_function(&f).unwrap();
        prop_assert!(rebuilt.distance(&a).unwrap() <= 1e-7 * a.frobenius_norm().max(1.0));
    }

    #[test]
    fn failures_agree_with_gradient_oracle(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = random::seeded(seed);
        let a = random::hermitian(n, &mut rng);
        let b = random::hermitian(n, &mut rng);
        let verdict = decide_order_default(&a, &b).unwrap();
        prop_assert!(!verdict.holds());
        let w = verdict.witness().unwrap();
        let gap = variance(&a, w).unwrap() - variance(&b, w).unwrap();
        prop_assert!((gap - verdict.margin()).abs() <= 1e-10);
        let cfg = OracleConfig { restarts: 8, seed, ..OracleConfig::default() };
        let found = witness_search(&a, &b, &cfg).unwrap();
        prop_assert!(found.value > 0.0);
        prop_assert!(found.value + 1e-9 >= verdict.margin());
    }

    #[test]
    fn steeper_function_witnesses_are_genuine(seed in any::<u64>(), n in 2usize..=8) {
        let (a, b) = pair(seed, n, 2.0);
        let verdict = decide_order_default(&a, &b).unwrap();
        match verdict.certificate() {
            Some(f) => prop_assert!(f.lipschitz_constant() <= 1.0 + 1e-8),
            None => {
                let w = verdict.witness().unwrap();
                prop_assert!(variance(&a, w).unwrap() - variance(&b, w).unwrap() > 1e-9);
            }
        }
    }

    #[test]
    fn mutual_order_is_class_equality(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::seeded(seed);
        let a = random::hermitian(n, &mut rng);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let b = a.scale(sign).shift(rng.random_range(-5.0..5.0));
        prop_assert!(class_equal(&a, &b, 1e-9).unwrap());
        prop_assert!(decide_order_default(&a, &b).unwrap().holds());
        prop_assert!(decide_order_default(&b, &a).unwrap().holds());
        let c = random::hermitian(n, &mut rng);
        let both = decide_order_default(&a, &c).unwrap().holds() && decide_order_default(&c, &a).unwrap().holds();
        prop_assert_eq!(both, class_equal(&a, &c, 1e-9).unwrap());
    }

    #[test]
    fn canonical_representative_is_a_class_invariant(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::seeded(seed);
        let a = random::hermitian(n, &mut rng);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let b = a.scale(sign).shift(rng.random_range(-5.0..5.0));
        let ca = canonical_representative(&a).unwrap();
        let cb = canonical_representative(&b).unwrap();
        prop_assert!(ca.distance(&cb).unwrap() <= 1e-8);
        prop_assert!(class_equal(&ca, &a, 1e-9).unwrap());
        prop_assert!(ca.spectral().unwrap().min_eigenvalue().abs() <= 1e-9);
        let again = canonical_representative(&ca).unwrap();
        prop_assert!(again.distance(&ca).unwrap() <= 1e-9);
    }

    #[test]
    fn mcshane_extension_is_lipschitz_and_interpolates(seed in any::<u64>(), m in 1usize..=8) {
        let mut rng = random::seeded(seed);
        let domain = random::spectrum(m, -3.0, 3.0, 0.05, &mut rng);
        let f = random::lipschitz_table(&domain, 1.0, &mut rng);
        let ext = mcshane_extend(&f, 1.0).unwrap();
        for &(x, y) in f.points() {
            prop_assert!((ext.evaluate(x) - y).abs() <= 1e-12);
        }
        let xs: Vec<f64> = (0..2000).map(|i| -5.0 + 10.0 * i as f64 / 1999.0).collect();
        for w in xs.windows(2) {
            prop_assert!((ext.evaluate(w[1]) - ext.evaluate(w[0])).abs() <= (w[1] - w[0]) * (1.0 + 1e-9));
        }
    }
}

#[test]
fn extract_function_reports_witness() {
    let a = HermitianObservable::diagonal(&[0.0, 2.0]);
    let b = HermitianObservable::diagonal(&[0.0, 1.0]);
    match extract_function(&a, &b, 1e-8) {
        Err(Error::OrderDoesNotHold { margin, .. }) => assert!((margin - 0.75).abs() < 1e-12),
        other => panic!("expected OrderDoesNotHold, got {other:?}"),
    }
}

#[test]
fn mismatched_dimensions_are_rejected() {
    let a = HermitianObservable::diagonal(&[0.0, 1.0]);
    let b = HermitianObservable::diagonal(&[0.0, 1.0, 2.0]);
    assert!(matches!(
        decide_order_default(&a, &b),
        Err(Error::DimensionMismatch { .. })
    ));
}
