//! Property tests for the naive-summation transform: the definitional
//! identities must hold for arbitrary lengths, not just the ones with
//! fast kernels.

use hartley::{dht_to_dft, inverse_dht, naive_dht, Signal};
use proptest::prelude::*;

fn arbitrary_signal(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_len).prop_flat_map(|n| prop::collection::vec(-1.0..1.0f64, n))
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    // Applying the transform twice scales the input by its length.
    #[test]
    fn involution(values in arbitrary_signal(64)) {
        let n = values.len() as f64;
        let signal = Signal::new(values.clone()).unwrap();
        let twice = naive_dht(&Signal::from(naive_dht(&signal)));
        let scaled: Vec<f64> = values.iter().map(|v| n * v).collect();
        prop_assert!(max_abs_diff(twice.as_slice(), &scaled) <= 1e-10);
    }

    // Energy in the transform domain is N times the signal energy.
    #[test]
    fn parseval(values in arbitrary_signal(64)) {
        let n = values.len() as f64;
        let spectrum = naive_dht(&Signal::new(values.clone()).unwrap());
        let spectral: f64 = spectrum.iter().map(|v| v * v).sum();
        let temporal: f64 = values.iter().map(|v| v * v).sum();
        let err = (spectral - n * temporal).abs();
        prop_assert!(err <= 1e-12 * (n * temporal).max(1.0));
    }

    // The inverse transform undoes the forward transform.
    #[test]
    fn round_trip(values in arbitrary_signal(64)) {
        let signal = Signal::new(values.clone()).unwrap();
        let back = inverse_dht(&naive_dht(&signal));
        prop_assert!(max_abs_diff(back.as_slice(), &values) <= 1e-11);
    }

    // For even lengths, the transform matrix's right half repeats its left
    // half with alternating row signs.
    #[test]
    fn half_length_sign_structure(half in 1usize..=32) {
        let n = 2 * half;
        let h = hartley::hartley_matrix::<f64>(n);
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..half {
                prop_assert!((h.get(k, i + half) - sign * h.get(k, i)).abs() <= 1e-12);
            }
        }
    }

    // The spectrum bridge agrees with a direct Fourier summation.
    #[test]
    fn fourier_bridge(values in arbitrary_signal(32)) {
        let n = values.len();
        let f = dht_to_dft(&naive_dht(&Signal::new(values.clone()).unwrap()));
        for k in 0..n {
            let mut re = 0.0;
            let mut im = 0.0;
            for (i, v) in values.iter().enumerate() {
                let ang = -std::f64::consts::TAU * (k as f64) * (i as f64) / n as f64;
                re += v * ang.cos();
                im += v * ang.sin();
            }
            prop_assert!((f[k].re - re).abs() <= 1e-10);
            prop_assert!((f[k].im - im).abs() <= 1e-10);
        }
    }
}
