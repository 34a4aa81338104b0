//! Property tests pinning the fast kernels to the naive oracle across
//! the supported blocklengths.

use hartley::{fast_dht, naive_dht, Signal, SUPPORTED_LENGTHS};
use proptest::prelude::*;

fn supported_signal(amplitude: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::sample::select(SUPPORTED_LENGTHS.to_vec())
        .prop_flat_map(move |n| prop::collection::vec(-amplitude..amplitude, n))
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    // The master property: the fast path tracks the naive summation with
    // error scaled only by the input's size.
    #[test]
    fn fast_matches_oracle(values in supported_signal(100.0)) {
        let n = values.len() as f64;
        let signal = Signal::new(values.clone()).unwrap();
        let fast = fast_dht(&signal).unwrap();
        let exact = naive_dht(&signal);
        let bound = 1e-12 * (max_abs(&values) * n).max(1.0);
        prop_assert!(max_abs_diff(fast.as_slice(), exact.as_slice()) <= bound);
    }

    #[test]
    fn fast_involution(values in supported_signal(1.0)) {
        let n = values.len() as f64;
        let once = fast_dht(&Signal::new(values.clone()).unwrap()).unwrap();
        let twice = fast_dht(&Signal::from(once)).unwrap();
        let scaled: Vec<f64> = values.iter().map(|v| n * v).collect();
        prop_assert!(max_abs_diff(twice.as_slice(), &scaled) <= 1e-10);
    }

    #[test]
    fn fast_linearity(
        pair in prop::sample::select(SUPPORTED_LENGTHS.to_vec()).prop_flat_map(|n| (
            prop::collection::vec(-1.0..1.0f64, n),
            prop::collection::vec(-1.0..1.0f64, n),
        )),
        alpha in -2.0..2.0f64,
        beta in -2.0..2.0f64,
    ) {
        let (u, v) = pair;
        let mixed: Vec<f64> = u.iter().zip(&v).map(|(a, b)| alpha * a + beta * b).collect();
        let lhs = fast_dht(&Signal::new(mixed).unwrap()).unwrap();
        let fu = fast_dht(&Signal::new(u).unwrap()).unwrap();
        let fv = fast_dht(&Signal::new(v).unwrap()).unwrap();
        let rhs: Vec<f64> = fu
            .iter()
            .zip(fv.iter())
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        prop_assert!(max_abs_diff(lhs.as_slice(), &rhs) <= 1e-11);
    }

    #[test]
    fn fast_parseval(values in supported_signal(1.0)) {
        let n = values.len() as f64;
        let spectrum = fast_dht(&Signal::new(values.clone()).unwrap()).unwrap();
        let spectral: f64 = spectrum.iter().map(|v| v * v).sum();
        let temporal: f64 = values.iter().map(|v| v * v).sum();
        prop_assert!((spectral - n * temporal).abs() <= 1e-11 * (n * temporal).max(1.0));
    }
}
