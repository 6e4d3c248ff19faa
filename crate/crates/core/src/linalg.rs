//! Dense complex Hermitian linear algebra with a single rank policy.
//!
//! Every rank decision in the crate goes through [`Tolerance::rank_rel`]: an
//! eigenvalue (or singular value) is treated as zero when it does not exceed
//! `rank_rel * largest`. Hermitian inputs are symmetrized before any spectral
//! call, so round-off asymmetry never leaks into eigenvectors.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Numerical slack used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative eigenvalue cutoff for rank decisions.
    pub rank_rel: f64,
    /// Negativity slack for semidefiniteness tests, scaled by `max(1, ||H||)`.
    pub psd_abs: f64,
    /// Comparison slack for Hermitian checks and matrix equality.
    pub cmp_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rank_rel: 1e-10,
            psd_abs: 1e-9,
            cmp_abs: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, psd_abs: f64, cmp_abs: f64) -> Result<Self> {
        let tol = Tolerance {
            rank_rel,
            psd_abs,
            cmp_abs,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rel", self.rank_rel),
            ("psd_abs", self.psd_abs),
            ("cmp_abs", self.cmp_abs),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} = {v} must lie strictly between 0 and 1"
                )));
            }
        }
        Ok(())
    }

    /// Negativity allowed for an eigenvalue of a matrix of spectral size `scale`.
    pub fn psd_slack(&self, scale: f64) -> f64 {
        self.psd_abs * scale.max(1.0)
    }

    fn hermitian_slack(&self, scale: f64) -> f64 {
        self.cmp_abs * scale.max(1.0)
    }
}

/// Checks that `a` is square with finite entries and returns its dimension.
pub fn check_square(a: &ComplexMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let z = a[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(a.nrows())
}

pub(crate) fn check_dim(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimMismatch {
            what: what.to_string(),
            expected,
            found,
        });
    }
    Ok(())
}

/// Largest entry modulus.
pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

/// `max |H - H*|` entrywise.
pub fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    max_abs(&(a - a.adjoint()))
}

/// `(H + H*) / 2`.
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// `(H - H*) / 2i`.
pub fn skew_part(a: &ComplexMatrix) -> ComplexMatrix {
    (a - a.adjoint()) * Complex64::new(0.0, -0.5)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| l)
    }

    /// `V f(diag(lambda)) V*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            let s = f(l);
            scaled.column_mut(j).scale_mut(s);
        }
        if n == 0 {
            return scaled;
        }
        scaled * self.vectors.adjoint()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

pub fn hermitian_eig(h: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEigen> {
    check_square(h)?;
    let deviation = hermitian_deviation(h);
    if deviation > tol.hermitian_slack(max_abs(h)) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(eig_symmetrized(h))
}

fn eig_symmetrized(h: &ComplexMatrix) -> HermitianEigen {
    let n = h.nrows();
    if n == 0 {
        return HermitianEigen {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        };
    }
    let eig = hermitian_part(h).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Spectral data of a PSD matrix under the crate's rank policy.
#[derive(Debug, Clone)]
pub struct PsdSpectrum {
    eig: HermitianEigen,
    cutoff: f64,
}

impl PsdSpectrum {
    /// `what` names the matrix in the `NotPsd` error.
    pub fn new(h: &ComplexMatrix, tol: &Tolerance, what: &str) -> Result<Self> {
        let eig = hermitian_eig(h, tol)?;
        let lambda_max = eig.max().max(0.0);
        if eig.min() < -tol.psd_slack(lambda_max) {
            return Err(Error::NotPsd {
                what: what.to_string(),
                min_eigenvalue: eig.min(),
            });
        }
        Ok(PsdSpectrum {
            cutoff: tol.rank_rel * lambda_max,
            eig,
        })
    }

    pub fn dim(&self) -> usize {
        self.eig.values.len()
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eig
    }

    pub fn lambda_max(&self) -> f64 {
        self.eig.max().max(0.0)
    }

    /// Eigenvalues at or below this value count as zero.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    fn is_positive(&self, l: f64) -> bool {
        l > self.cutoff && l > 0.0
    }

    pub fn rank(&self) -> usize {
        self.eig
            .values
            .iter()
            .filter(|&&l| self.is_positive(l))
            .count()
    }

    /// Smallest eigenvalue above the cutoff, if any.
    pub fn min_positive(&self) -> Option<f64> {
        self.eig
            .values
            .iter()
            .copied()
            .find(|&l| self.is_positive(l))
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.eig
            .apply(|l| if self.is_positive(l) { f(l) } else { 0.0 })
    }

    pub fn sqrt(&self) -> ComplexMatrix {
        self.map(f64::sqrt)
    }

    pub fn pinv_sqrt(&self) -> ComplexMatrix {
        self.map(|l| 1.0 / l.sqrt())
    }

    pub fn pinv(&self) -> ComplexMatrix {
        self.map(|l| 1.0 / l)
    }

    pub fn range_projector(&self) -> ComplexMatrix {
        self.map(|_| 1.0)
    }

    /// Orthonormal eigenvectors spanning the numerical kernel.
    pub fn kernel_basis(&self) -> ComplexMatrix {
        let cols: Vec<usize> = (0..self.dim())
            .filter(|&j| !self.is_positive(self.eig.values[j]))
            .collect();
        ComplexMatrix::from_fn(self.dim(), cols.len(), |i, j| {
            self.eig.vectors[(i, cols[j])]
        })
    }
}

/// Principal square root of a PSD matrix; eigenvalues under the rank cutoff map to zero.
pub fn psd_sqrt(h: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    Ok(PsdSpectrum::new(h, tol, "matrix")?.sqrt())
}

/// Moore-Penrose pseudo-inverse of the square root of a PSD matrix.
pub fn pinv_sqrt(h: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    Ok(PsdSpectrum::new(h, tol, "matrix")?.pinv_sqrt())
}

/// Orthonormal basis (as columns) of the numerical null space of a general square matrix.
///
/// Singular values at or below `rank_rel * sigma_max` are treated as zero; the
/// zero matrix has the whole space as kernel.
pub fn kernel_basis(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let sigma_max = svd.singular_values.max();
    if sigma_max == 0.0 {
        return Ok(ComplexMatrix::identity(n, n));
    }
    let cutoff = tol.rank_rel * sigma_max;
    let rows: Vec<usize> = (0..n)
        .filter(|&i| svd.singular_values[i] <= cutoff)
        .collect();
    Ok(ComplexMatrix::from_fn(n, rows.len(), |i, j| {
        v_t[(rows[j], i)].conj()
    }))
}

/// True iff `h` is square, Hermitian within `cmp_abs` and has no eigenvalue below `-psd_abs`.
pub fn is_psd(h: &ComplexMatrix, tol: &Tolerance) -> bool {
    PsdSpectrum::new(h, tol, "matrix").is_ok()
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().max()
}

/// Loewner comparison `a <= b`, i.e. `b - a` PSD within slack.
pub fn loewner_le(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerance) -> Result<bool> {
    let diff = b - a;
    let eig = hermitian_eig(&diff, tol)?;
    let scale = operator_norm(a).max(operator_norm(b));
    Ok(eig.min() >= -tol.psd_slack(scale))
}

/// Largest column norm of `a * basis`; zero for an empty basis.
pub(crate) fn max_column_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter().fold(0.0_f64, |acc, c| acc.max(c.norm()))
}
