use std::f64::consts::{FRAC_PI_4, PI, TAU};

use eprb::inequalities::{check_lhv, check_model, eval_star, BuiltinModel, Inequality, Mode};
use eprb::lhv::MonteCarlo;
use eprb::quantum::{correlation_at, joint_distribution, p_prime, p_same};
use eprb::tube::{stripe_at, StripeModel};
use eprb::{angle_between, canonicalize, MeasurementSetting};
use proptest::prelude::*;

fn lattice_angles(n: usize) -> impl Strategy<Value = Vec<f64>> {
    // Multiples of π/8 with total at most π.
    prop::collection::vec(0u32..=8, n)
        .prop_filter("sum within π", |ks| ks.iter().sum::<u32>() <= 8)
        .prop_map(|ks| ks.into_iter().map(|k| k as f64 * PI / 8.0).collect())
}

proptest! {
    #[test]
    fn angle_between_is_a_metric(a in -20.0..20.0f64, b in -20.0..20.0f64, c in -20.0..20.0f64) {
        let s = |t: f64| MeasurementSetting::new(t).unwrap();
        let (a, b, c) = (s(a), s(b), s(c));
        let d = angle_between(a, b);
        prop_assert!((0.0..=PI).contains(&d));
        prop_assert!((d - angle_between(b, a)).abs() < 1e-12);
        prop_assert!(d <= angle_between(a, c) + angle_between(c, b) + 1e-9);
    }

    #[test]
    fn canonicalize_is_idempotent(t in -100.0..100.0f64) {
        let c = canonicalize(t).unwrap();
        prop_assert!((0.0..TAU).contains(&c));
        prop_assert_eq!(canonicalize(c).unwrap(), c);
    }

    #[test]
    fn singlet_closed_forms_agree(theta in 0.0..=PI) {
        let (p, q) = (p_same(theta).unwrap(), p_prime(theta).unwrap());
        prop_assert!((p + q - 1.0).abs() < 1e-15);
        prop_assert!((correlation_at(theta).unwrap() - (2.0 * q - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn joint_marginals_are_half(a in 0.0..TAU, b in 0.0..TAU) {
        let (a, b) = (MeasurementSetting::new(a).unwrap(), MeasurementSetting::new(b).unwrap());
        let j = joint_distribution(a, b);
        prop_assert!((j.p_pp + j.p_pm - 0.5).abs() < 1e-12);
        prop_assert!((j.p_pp + j.p_mp - 0.5).abs() < 1e-12);
        prop_assert!((j.correlation() + angle_between(a, b).cos()).abs() < 1e-12);
    }

    #[test]
    fn stripes_have_period_two(alpha in -10.0..10.0f64, shift in 0.0..1.0f64) {
        if let (Ok(x), Ok(y)) = (stripe_at(alpha, shift), stripe_at(alpha + 2.0, shift)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn quantum_star_slack_matches_factored_cubic(theta in 1e-6..=PI / 3.0) {
        // 3P'(θ) - P'(3θ) = (c - 1)(2c² + 2c - 1) with c = cos θ.
        let r = eval_star(p_prime, theta, theta, theta).unwrap();
        let c = theta.cos();
        prop_assert!((r.slack - (c - 1.0) * (2.0 * c * c + 2.0 * c - 1.0)).abs() < 1e-12);
        prop_assert!(r.is_violated());
        prop_assert!(r.slack >= 1.0 - 2f64.sqrt() - 1e-12);
    }

    #[test]
    fn quantum_star_is_symmetric(angles in lattice_angles(3), perm in 0usize..6) {
        const P: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let [i, j, k] = P[perm];
        let x = eval_star(p_prime, angles[0], angles[1], angles[2]).unwrap();
        let y = eval_star(p_prime, angles[i], angles[j], angles[k]).unwrap();
        prop_assert!((x.slack - y.slack).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn affine_stripe_models_never_violate(
        rate in 0.1..3.0f64,
        offset in 0.0..2.0f64,
        paired: bool,
        angles in lattice_angles(3),
    ) {
        let m = StripeModel::affine("affine", rate, offset).unwrap();
        let m = if paired { m.paired() } else { m };
        let mc = MonteCarlo::new(1, 0);
        let star = check_lhv(&m, Inequality::Star, &angles, Mode::Exact, &mc).unwrap();
        prop_assert!(!star.is_violated(), "{star:?}");
        let ds = check_lhv(&m, Inequality::DoubleStar, &angles[..2], Mode::Exact, &mc).unwrap();
        prop_assert!(!ds.is_violated(), "{ds:?}");
    }

    #[test]
    fn exact_and_sampled_modes_agree(
        model in prop::sample::select(vec![BuiltinModel::Qm, BuiltinModel::Tube4, BuiltinModel::RicherTube]),
        angles in prop::sample::select(vec![[1.0, 1.0, 1.0], [1.0, 2.0, 1.0], [0.0, 3.0, 1.0]]),
        seed: u64,
    ) {
        let angles = angles.map(|k| k * FRAC_PI_4);
        let mc = MonteCarlo::new(20_000, seed);
        let exact = check_model(model, Inequality::Star, &angles, Mode::Exact, &mc).unwrap();
        let sampled = check_model(model, Inequality::Star, &angles, Mode::MonteCarlo, &mc).unwrap();
        let sigma = sampled.stderr.unwrap();
        prop_assert!((exact.slack - sampled.slack).abs() <= 4.0 * sigma.max(1e-3), "{exact:?} vs {sampled:?}");
    }
}
