use std::f64::consts::PI;

use gf2bell::analysis::{
    cauchy_pdf, negligibility_check_with_density, reciprocal_poly, reciprocal_poly_normalization, simpson,
    RealFunction, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn cauchy_integrates_to_one() {
    // atan antiderivative gives the exact mass on [-T, T]
    let (mu, alpha, t) = (0.3, 0.7, 2000.0);
    let mass = simpson(|x| cauchy_pdf(x, mu, alpha).unwrap(), -t, t, 2_000_000);
    let exact = (((t - mu) / alpha).atan() - ((-t - mu) / alpha).atan()) / PI;
    assert!((mass - exact).abs() < 1e-9);
    assert!((mass - 1.0).abs() < 1e-3);
}

#[test]
fn reciprocal_poly_is_a_scaled_cauchy() {
    let (mu, alpha) = (-0.5, 3f64.sqrt() / 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x: f64 = rng.random_range(-50.0..50.0);
        let scaled = cauchy_pdf(x, mu, alpha).unwrap() * PI * alpha * (4.0 / 3.0);
        assert!((reciprocal_poly(x) - scaled).abs() < 1e-14 * reciprocal_poly(x).max(1.0));
    }
}

#[test]
fn normalization_converges_monotonically() {
    let errors: Vec<f64> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&t| (reciprocal_poly_normalization(t, 1_000_000).unwrap().normalized - 1.0).abs())
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn verdicts_are_refinement_stable() {
    let cases = [
        (RealFunction::new("n^-n", |n| n.powf(-n)), 5, Verdict::NegligibleOnRange),
        (RealFunction::new("1/n", |n| 1.0 / n), 1, Verdict::NotNegligibleOnRange),
    ];
    for (f, k, want) in cases {
        for density in 1..=8 {
            let r = negligibility_check_with_density(&f, k, 256, density).unwrap();
            assert_eq!(r.verdict, want, "{} at density {density}", f.description());
        }
    }
}
