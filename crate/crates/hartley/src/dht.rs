//! The transform definitions and the naive-summation oracle.
//!
//! Everything in this module is computed straight from the defining sums with
//! no algorithmic shortcuts. The fast kernels in [`crate::kernels`] are tested
//! against these routines, never the other way around.

use std::ops::Deref;

use num_complex::Complex;

use crate::dense::DenseMatrix;
use crate::error::HartleyError;
use crate::scalar::Real;
use crate::Result;

/// cas(x) = cos(x) + sin(x), the Hartley kernel function.
#[inline]
pub fn cas<T: Real>(x: T) -> T {
    x.cos() + x.sin()
}

/// cas'(x) = cos(x) - sin(x), the conjugate kernel.
///
/// It satisfies cas(x - y) = cos(y)*cas(x) - sin(y)*cas_prime(x), the
/// addition rule behind the half-length split of even-length transforms,
/// and cas_prime(x) = cas(-x).
#[inline]
pub fn cas_prime<T: Real>(x: T) -> T {
    x.cos() - x.sin()
}

/// Real time-domain vector. Entries are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T>(Vec<T>);

/// Real Hartley-domain vector. Entries are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T>(Vec<T>);

/// Complex Fourier-domain vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum<T>(Vec<Complex<T>>);

fn check_finite<T: Real>(values: &[T]) -> Result<()> {
    if values.is_empty() {
        return Err(HartleyError::Empty);
    }
    for (index, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(HartleyError::NonFinite { index });
        }
    }
    Ok(())
}

impl<T: Real> Signal<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T: Real> Spectrum<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T: Real> ComplexSpectrum<T> {
    pub fn new(values: Vec<Complex<T>>) -> Result<Self> {
        if values.is_empty() {
            return Err(HartleyError::Empty);
        }
        for (index, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(HartleyError::NonFinite { index });
            }
        }
        Ok(Self(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.0
    }
}

impl<T> Deref for Signal<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> Deref for Spectrum<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> Deref for ComplexSpectrum<T> {
    type Target = [Complex<T>];
    fn deref(&self) -> &[Complex<T>] {
        &self.0
    }
}

// A DHT maps finite data to finite data, so domain flips skip revalidation.
impl<T: Real> From<Spectrum<T>> for Signal<T> {
    fn from(s: Spectrum<T>) -> Self {
        Signal(s.0)
    }
}

impl<T: Real> From<Signal<T>> for Spectrum<T> {
    fn from(s: Signal<T>) -> Self {
        Spectrum(s.0)
    }
}

/// Hartley-kernel value cas(2*pi*k*i/N) with the index product reduced mod N
/// before the angle is formed, which keeps large-index entries accurate.
fn kernel_entry<T: Real>(n: usize, k: usize, i: usize) -> T {
    let m = (k * i) % n;
    cas(T::tau() * T::from_usize(m).unwrap() / T::from_usize(n).unwrap())
}

/// The N x N Hartley matrix, entry (k, i) = cas(2*pi*k*i/N).
///
/// The matrix is exactly symmetric (entry (k, i) and (i, k) are the same
/// floating-point value). Panics if `n == 0`.
pub fn hartley_matrix<T: Real>(n: usize) -> DenseMatrix<T> {
    assert!(n >= 1, "transform length must be at least 1");
    DenseMatrix::from_fn(n, n, |k, i| kernel_entry(n, k, i))
}

fn naive_apply<T: Real>(values: &[T]) -> Vec<T> {
    let n = values.len();
    (0..n)
        .map(|k| {
            let mut acc = T::zero();
            for (i, v) in values.iter().enumerate() {
                acc += *v * kernel_entry(n, k, i);
            }
            acc
        })
        .collect()
}

/// Forward DHT by direct summation, the oracle for every fast path.
pub fn naive_dht<T: Real>(signal: &Signal<T>) -> Spectrum<T> {
    Spectrum(naive_apply(&signal.0))
}

/// Inverse DHT: the forward transform scaled by 1/N. Applying the forward
/// transform twice returns N times the input.
pub fn inverse_dht<T: Real>(spectrum: &Spectrum<T>) -> Signal<T> {
    let n = T::from_usize(spectrum.len()).unwrap();
    Signal(naive_apply(&spectrum.0).into_iter().map(|x| x / n).collect())
}

/// Converts a Hartley spectrum to the DFT of the same real signal:
/// F[k] = ((H[k] + H[N-k]) - j*(H[k] - H[N-k])) / 2, indices mod N.
pub fn dht_to_dft<T: Real>(spectrum: &Spectrum<T>) -> ComplexSpectrum<T> {
    let n = spectrum.len();
    let half = T::from_f64_lit(0.5);
    let out = (0..n)
        .map(|k| {
            let h_k = spectrum.0[k];
            let h_rev = spectrum.0[(n - k) % n];
            Complex::new((h_k + h_rev) * half, -(h_k - h_rev) * half)
        })
        .collect();
    ComplexSpectrum(out)
}

/// Recovers the Hartley spectrum from the DFT of a real signal:
/// H[k] = Re F[k] - Im F[k].
///
/// Rejects spectra whose conjugate-symmetry defect |F[N-k] - conj(F[k])|
/// exceeds `1e-9` anywhere, since those do not belong to real data.
pub fn dft_to_dht<T: Real>(spectrum: &ComplexSpectrum<T>) -> Result<Spectrum<T>> {
    dft_to_dht_with_tol(spectrum, T::from_f64_lit(1e-9))
}

/// [`dft_to_dht`] with an explicit conjugate-symmetry tolerance.
pub fn dft_to_dht_with_tol<T: Real>(
    spectrum: &ComplexSpectrum<T>,
    tolerance: T,
) -> Result<Spectrum<T>> {
    let n = spectrum.len();
    let mut worst = T::zero();
    for k in 0..n {
        let f_k = spectrum.0[k];
        let f_rev = spectrum.0[(n - k) % n];
        let defect = ((f_rev.re - f_k.re).abs()).max((f_rev.im + f_k.im).abs());
        worst = worst.max(defect);
    }
    if worst > tolerance {
        return Err(HartleyError::NotConjugateSymmetric {
            deviation: worst.to_f64().unwrap_or(f64::NAN),
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Spectrum(spectrum.0.iter().map(|f| f.re - f.im).collect()))
}
