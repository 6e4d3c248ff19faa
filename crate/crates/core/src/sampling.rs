//! Random test instances with controlled spectra.
//!
//! Used by the self-test command and the property suites. Non-zero eigenvalues
//! are drawn from `[0.5, 2]` so rank decisions are never borderline.

use num_complex::Complex64;
use rand::Rng;

use crate::forms::{NonNegativeForm, SesquilinearForm};
use crate::linalg::{operator_norm, psd_sqrt, ComplexMatrix, Tolerance};
use crate::measures::{AtomicMeasureSpace, ComplexMeasure};

pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| complex(rng))
}

pub fn vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> crate::ComplexVector {
    crate::ComplexVector::from_fn(n, |_, _| complex(rng))
}

pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let a = matrix(n, rng);
    (&a + a.adjoint()).scale(0.5)
}

/// Haar-like unitary from the QR factor of a random matrix.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    if n == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    loop {
        let a = matrix(n, rng);
        if a.clone().determinant().norm() > 1e-3 {
            return a.qr().q();
        }
    }
}

/// A PSD matrix of prescribed rank together with an orthonormal basis of its kernel.
#[derive(Debug, Clone)]
pub struct PsdSample {
    pub matrix: ComplexMatrix,
    /// `n x (n - rank)` orthonormal columns spanning the kernel exactly (up to round-off).
    pub kernel: ComplexMatrix,
}

impl PsdSample {
    pub fn form(&self) -> NonNegativeForm {
        NonNegativeForm::new(self.matrix.clone(), &Tolerance::default())
            .expect("sampled matrices are PSD")
    }
}

pub fn psd_with_rank<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> PsdSample {
    assert!(rank <= n);
    let u = unitary(n, rng);
    let mut scaled = u.clone();
    for j in 0..n {
        let l = if j < rank {
            rng.random_range(0.5..2.0)
        } else {
            0.0
        };
        scaled.column_mut(j).scale_mut(l);
    }
    let matrix = (&scaled * u.adjoint() + (&scaled * u.adjoint()).adjoint()).scale(0.5);
    let kernel = u.columns(rank, n - rank).into_owned();
    PsdSample { matrix, kernel }
}

/// PSD matrix whose rank is drawn uniformly from `0..=n`.
pub fn psd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PsdSample {
    let rank = rng.random_range(0..=n);
    psd_with_rank(n, rank, rng)
}

/// A form `S^{1/2} K S^{1/2}` with `||K|| <= 1`, so that `sigma ∈ M(t)`.
pub fn dominated_by<R: Rng + ?Sized>(sigma: &NonNegativeForm, rng: &mut R) -> SesquilinearForm {
    let n = sigma.dim();
    let half = psd_sqrt(sigma.matrix(), &Tolerance::default()).expect("sigma is PSD");
    let k = matrix(n, rng);
    let norm = operator_norm(&k);
    let k = if norm > 0.0 {
        k.scale(rng.random_range(0.1..1.0) / norm)
    } else {
        k
    };
    SesquilinearForm::new(&half * k * &half).expect("finite square matrix")
}

/// Hermitian form dominated by `sigma`.
pub fn hermitian_dominated_by<R: Rng + ?Sized>(
    sigma: &NonNegativeForm,
    rng: &mut R,
) -> SesquilinearForm {
    dominated_by(sigma, rng).real_part()
}

/// Measure with atoms `a0..`; each value is zero with probability `zero_prob`.
pub fn complex_measure<R: Rng + ?Sized>(k: usize, zero_prob: f64, rng: &mut R) -> ComplexMeasure {
    let space = AtomicMeasureSpace::with_len(k).expect("k >= 1");
    let values = (0..k)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                Complex64::new(0.0, 0.0)
            } else {
                complex(rng) * 2.0
            }
        })
        .collect();
    ComplexMeasure::new(space, values).expect("finite values")
}

/// Non-negative measure with weights in `{0} ∪ [0.1, 2]`.
pub fn nonnegative_measure<R: Rng + ?Sized>(
    k: usize,
    zero_prob: f64,
    rng: &mut R,
) -> ComplexMeasure {
    let space = AtomicMeasureSpace::with_len(k).expect("k >= 1");
    let values: Vec<f64> = (0..k)
        .map(|_| {
            if rng.random_bool(zero_prob) {
                0.0
            } else {
                rng.random_range(0.1..2.0)
            }
        })
        .collect();
    ComplexMeasure::from_real(space, &values).expect("finite values")
}
