use approx::assert_abs_diff_eq;
use gme_core::statevector::{
    apply_product_unitary_dagger, fidelity_exact, haar_random_state, probabilities, sample_shots, unitary_from_params,
    ProductParams, PureState,
};
use gme_core::{Complex64, RngStream};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Builds the product state amplitude by amplitude, independently of the
// contraction used by `fidelity_exact`.
fn product_state_naive(params: &ProductParams) -> Vec<Complex64> {
    let n = params.n();
    (0..1usize << n)
        .map(|x| (0..n).map(|j| params.local_state(j)[(x >> j) & 1]).product())
        .collect()
}

fn component() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ansatz_unitaries_are_unitary(a in component(), b in component(), x in component(), y in component()) {
        prop_assume!(a * a + b * b + x * x + y * y > 1e-6);
        let u = unitary_from_params(c(a, b), c(x, y)).unwrap();
        prop_assert!(u.dagger().mul(&u).max_deviation_from_identity() < 1e-12);
        prop_assert!(u.mul(&u.dagger()).max_deviation_from_identity() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn norm_is_preserved(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 0);
        let psi = haar_random_state(n, &mut rng).unwrap();
        let params = ProductParams::random(n, &mut rng);
        let out = apply_product_unitary_dagger(&psi, &params).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fidelity_matches_rotated_zero_probability(n in 2usize..=6, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 1);
        let psi = haar_random_state(n, &mut rng).unwrap();
        let params = ProductParams::random(n, &mut rng);
        let via_rotation = probabilities(&apply_product_unitary_dagger(&psi, &params).unwrap())[0];
        let direct = fidelity_exact(&psi, &params).unwrap();
        prop_assert!((via_rotation - direct).abs() < 1e-10);

        let phi = product_state_naive(&params);
        let overlap: Complex64 = psi.amplitudes().iter().zip(&phi).map(|(a, b)| a.conj() * b).sum();
        prop_assert!((overlap.norm_sqr() - direct).abs() < 1e-10);
    }

    #[test]
    fn fidelity_ignores_per_qubit_phase(n in 2usize..=6, seed in any::<u64>(), angle in 0.0..6.3f64, q in 0usize..6) {
        let mut rng = RngStream::new(seed, 2);
        let psi = haar_random_state(n, &mut rng).unwrap();
        let params = ProductParams::random(n, &mut rng);
        let q = q % n;
        let phase = Complex64::from_polar(1.0, angle);
        let mut rotated = params.clone();
        let [z0, z1] = params.qubit(q);
        rotated.set_qubit(q, [z0 * phase, z1 * phase]).unwrap();
        let f0 = fidelity_exact(&psi, &params).unwrap();
        let f1 = fidelity_exact(&psi, &rotated).unwrap();
        prop_assert!((f0 - f1).abs() < 1e-12);
    }

    #[test]
    fn fidelity_ignores_parameter_scale(n in 2usize..=5, seed in any::<u64>(), scale in 0.01..100.0f64) {
        let mut rng = RngStream::new(seed, 3);
        let psi = haar_random_state(n, &mut rng).unwrap();
        let params = ProductParams::random(n, &mut rng);
        let scaled = ProductParams::from_flat(&params.to_flat().iter().map(|z| z * scale).collect::<Vec<_>>()).unwrap();
        let f0 = fidelity_exact(&psi, &params).unwrap();
        prop_assert!((f0 - fidelity_exact(&psi, &scaled).unwrap()).abs() < 1e-12);
        prop_assert!((f0 - fidelity_exact(&psi, &params.normalized()).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn shot_counts_add_up(n in 1usize..=5, seed in any::<u64>(), shots in 1u64..5000) {
        let mut rng = RngStream::new(seed, 4);
        let psi = haar_random_state(n, &mut rng).unwrap();
        let record = sample_shots(&probabilities(&psi), shots, &mut rng).unwrap();
        prop_assert_eq!(record.total(), shots);
        prop_assert_eq!(record.counts().values().sum::<u64>(), shots);
        prop_assert!(record.counts().keys().all(|&k| k < 1 << n));
    }
}

#[test]
fn product_state_round_trip() {
    let mut rng = RngStream::new(8, 0);
    for n in 1..=6 {
        let params = ProductParams::random(n, &mut rng);
        let phi = PureState::product(&params);
        assert_abs_diff_eq!(fidelity_exact(&phi, &params).unwrap(), 1.0, epsilon = 1e-12);
        let rotated = apply_product_unitary_dagger(&phi, &params).unwrap();
        assert_abs_diff_eq!(rotated.amplitudes()[0].norm(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn sampled_frequencies_track_probabilities() {
    let mut rng = RngStream::new(21, 0);
    let psi = haar_random_state(3, &mut rng).unwrap();
    let probs = probabilities(&psi);
    let shots = 1_000_000u64;
    let record = sample_shots(&probs, shots, &mut rng).unwrap();
    for (x, &p) in probs.iter().enumerate() {
        let sigma = (p * (1.0 - p) / shots as f64).sqrt();
        assert!((record.frequency(x) - p).abs() <= 5.0 * sigma + 1e-12, "outcome {x}");
    }
}
