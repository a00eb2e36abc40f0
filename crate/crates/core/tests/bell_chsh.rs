use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use gf2bell::chsh::{
    lhv_max_over, max_abs_chsh_on_grid, quantum_chsh, quantum_correlator, tsirelson_bound, LocalStrategy,
    MeasurementSettings,
};
use gf2bell::qsim::{measure_distribution, reduced_density, BellState, StateVector};
use num_complex::Complex64;
use proptest::prelude::*;

/// Closed-form correlators for the Bell states with `A(t) = cos t Z + sin t X`.
fn closed_form(b: BellState, ta: f64, tb: f64) -> f64 {
    match b {
        BellState::PhiPlus => (ta - tb).cos(),
        BellState::PhiMinus => (ta + tb).cos(),
        BellState::PsiPlus => -(ta + tb).cos(),
        BellState::PsiMinus => -(ta - tb).cos(),
    }
}

fn optimal(b: BellState) -> MeasurementSettings {
    let (b0, b1) = match b {
        BellState::PhiPlus => (FRAC_PI_4, -FRAC_PI_4),
        BellState::PhiMinus => (-FRAC_PI_4, FRAC_PI_4),
        BellState::PsiPlus => (-FRAC_PI_4 + PI, FRAC_PI_4 + PI),
        BellState::PsiMinus => (FRAC_PI_4 + PI, -FRAC_PI_4 + PI),
    };
    MeasurementSettings::new(0.0, FRAC_PI_2, b0, b1).unwrap()
}

fn state() -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4)
        .prop_filter("nonzero", |v| v.iter().map(|(r, i)| r * r + i * i).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let norm = v.iter().map(|(r, i)| r * r + i * i).sum::<f64>().sqrt();
            StateVector::from_amplitudes(v.iter().map(|&(r, i)| Complex64::new(r / norm, i / norm)).collect())
                .unwrap()
        })
}

#[test]
fn each_bell_state_reaches_tsirelson() {
    for b in BellState::ALL {
        let s = quantum_chsh(&b.ideal(), &optimal(b)).unwrap();
        assert!((s - 2.0 * 2f64.sqrt()).abs() < 1e-9, "{}: {s}", b.name());
    }
}

#[test]
fn grid_scan_never_exceeds_tsirelson() {
    for b in BellState::ALL {
        let m = max_abs_chsh_on_grid(&b.ideal(), 16).unwrap();
        assert!(m <= tsirelson_bound() + 1e-12 && m > 2.8, "{}: {m}", b.name());
    }
}

#[test]
fn product_states_respect_the_classical_bound() {
    let plus = StateVector::basis(1, 0).unwrap().hadamard(0).unwrap();
    let zero = StateVector::basis(1, 0).unwrap();
    for s in [zero.tensor(&zero).unwrap(), plus.tensor(&zero).unwrap(), plus.tensor(&plus).unwrap()] {
        assert!(max_abs_chsh_on_grid(&s, 12).unwrap() <= 2.0 + 1e-12);
    }
}

#[test]
fn lhv_bound_is_attained_by_constant_strategies() {
    let constant: Vec<_> = LocalStrategy::all().filter(|s| s.alice.is_constant() && s.bob.is_constant()).collect();
    assert_eq!(constant.len(), 4);
    assert_eq!(lhv_max_over(constant), 2.0);
}

proptest! {
    #[test]
    fn correlator_matches_closed_form(ta in -PI..PI, tb in -PI..PI, k in 0usize..4) {
        let b = BellState::ALL[k];
        let e = quantum_correlator(&b.ideal(), ta, tb).unwrap();
        prop_assert!((e - closed_form(b, ta, tb)).abs() < 1e-12);
    }

    #[test]
    fn gates_are_involutions(s in state(), q in 0usize..2) {
        let back = s.hadamard(q).unwrap().hadamard(q).unwrap();
        prop_assert!(back.max_amplitude_error(&s).unwrap() < 1e-12);
        let back = s.cnot(0, 1).unwrap().cnot(0, 1).unwrap();
        prop_assert!(back.max_amplitude_error(&s).unwrap() < 1e-15);
    }

    #[test]
    fn marginals_agree_with_reduced_density(s in state()) {
        for q in 0..2 {
            let m = measure_distribution(&s, &[q]).unwrap();
            let rho = reduced_density(&s, &[q]).unwrap();
            prop_assert!((m.probabilities[0] - rho.get(0, 0).re).abs() < 1e-12);
            prop_assert!((m.probabilities[1] - rho.get(1, 1).re).abs() < 1e-12);
            prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn any_two_qubit_state_obeys_tsirelson(s in state(), a in -PI..PI, a2 in -PI..PI, b in -PI..PI, b2 in -PI..PI) {
        let m = MeasurementSettings::new(a, a2, b, b2).unwrap();
        prop_assert!(quantum_chsh(&s, &m).unwrap().abs() <= tsirelson_bound() + 1e-9);
    }
}
