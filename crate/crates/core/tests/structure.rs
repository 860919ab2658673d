//! Joint upper bounds, two-point lower sets, q-matrices and automorphisms.

use proptest::prelude::*;
use rand::Rng;
use varorder::order::decide_order_default;
use varorder::random;
use varorder::structure::{classify_two_point, lower_set_correspondents, two_spectrum_by_order, verify_map};
use varorder::{
    joint_upper_bound, q_matrix, reconstruct_metric, two_point_lower_set, two_spectrum_detector, verify_automorphism,
    AutomorphismSpec, Error, HermitianObservable,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn joint_upper_bound_bounds_commuting_pairs(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = random::seeded(seed);
        let c = random::hermitian(n, &mut rng);
        let d = c.spectral().unwrap();
        let a = d.map(|x| (2.0 * x).round());
        let b = d.map(|x| x.sin() * 3.0);
        let ub = joint_upper_bound(&a, &b, 1e-8).unwrap();
        prop_assert!(decide_order_default(&a, &ub.bound).unwrap().holds());
        prop_assert!(decide_order_default(&b, &ub.bound).unwrap().holds());
    }

    #[test]
    fn two_point_families_are_sharp(seed in any::<u64>(), m in 2usize..=5) {
        let mut rng = random::seeded(seed);
        let eigs = random::spectrum(m, -2.0, 2.0, 0.1, &mut rng);
        let a = random::with_spectrum(&eigs, &mut rng);
        let fams = two_point_lower_set(&a).unwrap();
        prop_assert_eq!(fams.len(), (1usize << (m - 1)) - 1);
        for (k, f) in fams.iter().enumerate() {
            let t = f.threshold * rng.random_range(0.1..0.95);
            let member = f.member(t);
            prop_assert!(decide_order_default(&member, &a).unwrap().holds());
            let (found, tt) = classify_two_point(&a, &member, &fams).unwrap().unwrap();
            prop_assert_eq!(found, k);
            prop_assert!((tt - t).abs() <= 1e-8);
            prop_assert!(!decide_order_default(&f.member(f.threshold * 1.05), &a).unwrap().holds());
        }
    }

    #[test]
    fn q_matrix_round_trip(seed in any::<u64>(), n in 4usize..=8) {
        let mut rng = random::seeded(seed);
        let s = random::spectrum(n, -4.0, 4.0, 0.05, &mut rng);
        let r = reconstruct_metric(&q_matrix(&s).unwrap()).unwrap();
        prop_assert!(r.max_count <= 3);
        for j in 0..n {
            for k in 0..n {
                prop_assert!((r.distances[j][k] - (s[j] - s[k]).abs()).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn two_spectrum_criteria_agree(seed in any::<u64>(), m in 1usize..=4) {
        let mut rng = random::seeded(seed);
        let eigs = random::spectrum(m, -2.0, 2.0, 0.2, &mut rng);
        let a = random::with_spectrum(&eigs, &mut rng);
        prop_assert_eq!(two_spectrum_detector(&a).unwrap(), m == 2);
        prop_assert_eq!(two_spectrum_by_order(&a, 10, seed).unwrap(), m == 2);
    }
}

#[test]
fn three_point_correspondents_share_the_lower_set() {
    let mut rng = random::seeded(4);
    for _ in 0..20 {
        let eigs = random::spectrum(3, 0.0, 4.0, 0.3, &mut rng);
        let a = HermitianObservable::diagonal(&eigs);
        let thresholds = |x: &HermitianObservable| {
            let mut t: Vec<f64> = two_point_lower_set(x).unwrap().iter().map(|f| f.threshold).collect();
            t.sort_by(f64::total_cmp);
            t
        };
        let base = thresholds(&a);
        let corr = lower_set_correspondents(&a).unwrap();
        assert!(corr.len() >= 2);
        for c in &corr {
            for (x, y) in thresholds(c).iter().zip(&base) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn automorphisms_pass_and_corruptions_fail() {
    let mut rng = random::seeded(11);
    for anti in [false, true] {
        let spec = AutomorphismSpec::new(1.7, random::unitary(3, anti, &mut rng)).unwrap();
        assert!(verify_automorphism(&spec, 40, 3, 1).unwrap().passed);
    }
    let k = random::hermitian(3, &mut rng);
    let report = verify_map(|x| x.add(&k), 40, 3, 2).unwrap();
    assert!(!report.passed);
}

#[test]
fn non_commuting_pairs_have_no_construction() {
    let x = HermitianObservable::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    let z = HermitianObservable::diagonal(&[1.0, -1.0]);
    assert!(matches!(
        joint_upper_bound(&x, &z, 1e-8),
        Err(Error::NotCommuting { .. })
    ));
}
