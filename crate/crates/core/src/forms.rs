//! Sesquilinear forms on `C^n` and the set `M(t)` of non-negative forms dominating them.
//!
//! A form is stored as the matrix `A` with `t(phi, psi) = psi^* A phi`, so it is
//! linear in the first argument and conjugate-linear in the second.

use std::ops::{Add, Mul, Sub};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, check_dim, check_square, hermitian_deviation, hermitian_part, max_abs, max_column_norm,
    operator_norm, skew_part, ComplexMatrix, ComplexVector, PsdSpectrum, Tolerance,
};

/// Width of the bisection bracket when locating the sector constant.
pub const SECTOR_BISECTION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SesquilinearForm {
    matrix: ComplexMatrix,
}

impl SesquilinearForm {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        check_square(&matrix)?;
        Ok(SesquilinearForm { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        SesquilinearForm { matrix }
    }

    pub fn zero(n: usize) -> Self {
        SesquilinearForm {
            matrix: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn from_diagonal(values: &[Complex64]) -> Self {
        let d = DVector::from_column_slice(values);
        SesquilinearForm {
            matrix: ComplexMatrix::from_diagonal(&d),
        }
    }

    /// Real matrix given row by row.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(real_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `t(phi, psi) = psi^* A phi`.
    pub fn evaluate(&self, phi: &ComplexVector, psi: &ComplexVector) -> Result<Complex64> {
        check_dim("phi", self.dim(), phi.len())?;
        check_dim("psi", self.dim(), psi.len())?;
        Ok(psi.dotc(&(&self.matrix * phi)))
    }

    /// `t[phi] = t(phi, phi)`.
    pub fn quadratic(&self, phi: &ComplexVector) -> Result<Complex64> {
        self.evaluate(phi, phi)
    }

    pub fn adjoint(&self) -> Self {
        SesquilinearForm {
            matrix: self.matrix.adjoint(),
        }
    }

    /// `Re t = (t + t^*) / 2`.
    pub fn real_part(&self) -> Self {
        SesquilinearForm {
            matrix: hermitian_part(&self.matrix),
        }
    }

    /// `Im t = (t - t^*) / 2i`.
    pub fn imag_part(&self) -> Self {
        SesquilinearForm {
            matrix: skew_part(&self.matrix),
        }
    }

    pub fn is_hermitian(&self, tol: &Tolerance) -> bool {
        hermitian_deviation(&self.matrix) <= tol.cmp_abs * max_abs(&self.matrix).max(1.0)
    }

    pub fn is_zero(&self, slack: f64) -> bool {
        max_abs(&self.matrix) <= slack
    }

    /// Largest entrywise difference to another form of the same dimension.
    pub fn max_abs_diff(&self, other: &SesquilinearForm) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }
}

impl Add for &SesquilinearForm {
    type Output = SesquilinearForm;
    fn add(self, rhs: &SesquilinearForm) -> SesquilinearForm {
        SesquilinearForm {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &SesquilinearForm {
    type Output = SesquilinearForm;
    fn sub(self, rhs: &SesquilinearForm) -> SesquilinearForm {
        SesquilinearForm {
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul<Complex64> for &SesquilinearForm {
    type Output = SesquilinearForm;
    fn mul(self, rhs: Complex64) -> SesquilinearForm {
        SesquilinearForm {
            matrix: &self.matrix * rhs,
        }
    }
}

/// A sesquilinear form with `t[phi] >= 0` for every `phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegativeForm {
    matrix: ComplexMatrix,
}

impl NonNegativeForm {
    /// Validates the matrix as PSD and stores its Hermitian part.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        PsdSpectrum::new(&matrix, tol, "form")?;
        Ok(NonNegativeForm {
            matrix: hermitian_part(&matrix),
        })
    }

    /// Same as [`NonNegativeForm::new`] but names the form in the error.
    pub fn named(matrix: ComplexMatrix, tol: &Tolerance, what: &str) -> Result<Self> {
        PsdSpectrum::new(&matrix, tol, what)?;
        Ok(NonNegativeForm {
            matrix: hermitian_part(&matrix),
        })
    }

    pub(crate) fn from_psd_unchecked(matrix: ComplexMatrix) -> Self {
        NonNegativeForm {
            matrix: hermitian_part(&matrix),
        }
    }

    pub fn zero(n: usize) -> Self {
        NonNegativeForm {
            matrix: ComplexMatrix::zeros(n, n),
        }
    }

    /// Diagonal form with the given non-negative weights.
    pub fn from_weights(weights: &[f64], tol: &Tolerance) -> Result<Self> {
        let d = DVector::from_iterator(
            weights.len(),
            weights.iter().map(|&w| Complex64::new(w, 0.0)),
        );
        Self::new(ComplexMatrix::from_diagonal(&d), tol)
    }

    pub fn from_real_rows(rows: &[&[f64]], tol: &Tolerance) -> Result<Self> {
        Self::new(real_rows(rows)?, tol)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn as_form(&self) -> SesquilinearForm {
        SesquilinearForm {
            matrix: self.matrix.clone(),
        }
    }

    pub fn evaluate(&self, phi: &ComplexVector, psi: &ComplexVector) -> Result<Complex64> {
        check_dim("phi", self.dim(), phi.len())?;
        check_dim("psi", self.dim(), psi.len())?;
        Ok(psi.dotc(&(&self.matrix * phi)))
    }

    /// `t[phi]`, real and non-negative up to round-off.
    pub fn quadratic(&self, phi: &ComplexVector) -> Result<f64> {
        Ok(self.evaluate(phi, phi)?.re)
    }

    pub fn spectrum(&self, tol: &Tolerance) -> Result<PsdSpectrum> {
        PsdSpectrum::new(&self.matrix, tol, "form")
    }

    pub fn scaled(&self, factor: f64) -> Self {
        assert!(
            factor >= 0.0,
            "non-negative forms scale by non-negative factors"
        );
        NonNegativeForm {
            matrix: self.matrix.scale(factor),
        }
    }

    pub fn max_abs_diff(&self, other: &NonNegativeForm) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }
}

impl Add for &NonNegativeForm {
    type Output = NonNegativeForm;
    fn add(self, rhs: &NonNegativeForm) -> NonNegativeForm {
        NonNegativeForm {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

fn real_rows(rows: &[&[f64]]) -> Result<ComplexMatrix> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        Complex64::new(rows[i][j], 0.0)
    }))
}

/// Recovers `t(phi, psi)` from the quadratic form alone:
/// `(1/4) sum_k i^k q(phi + i^k psi)`.
pub fn polarization_reconstruct<Q>(q: Q, phi: &ComplexVector, psi: &ComplexVector) -> Complex64
where
    Q: Fn(&ComplexVector) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    let mut ik = Complex64::new(1.0, 0.0);
    for _ in 0..4 {
        acc += ik * q(&(phi + psi * ik));
        ik *= Complex64::i();
    }
    acc * 0.25
}

/// Slack for `ker(S) ⊆ ker(A)` residual tests at matrix scale `scale`.
pub(crate) fn kernel_slack(n: usize, scale: f64, tol: &Tolerance) -> f64 {
    let n = n.max(1) as f64;
    n * (tol.rank_rel + 16.0 * f64::EPSILON) * scale
}

/// Smallest `C` with `|t(phi, psi)| <= C d[phi]^½ d[psi]^½`, or `None` when
/// `ker(d)` is not contained in `ker(t) ∩ ker(t^*)`.
pub(crate) fn bound_constant(
    dominating: &PsdSpectrum,
    t: &ComplexMatrix,
    tol: &Tolerance,
) -> Option<f64> {
    let n = t.nrows();
    let kernel = dominating.kernel_basis();
    let scale = operator_norm(t).max(dominating.lambda_max());
    let slack = kernel_slack(n, scale, tol);
    if kernel.ncols() > 0 {
        let forward = max_column_norm(&(t * &kernel));
        let backward = max_column_norm(&(t.adjoint() * &kernel));
        if forward > slack || backward > slack {
            return None;
        }
    }
    let ph = dominating.pinv_sqrt();
    Some(operator_norm(&(&ph * t * &ph)))
}

/// Decides `sigma ∈ M(t)`: kernel inclusion plus `||S^{+½} A S^{+½}|| <= 1`.
pub fn m_membership(
    sigma: &NonNegativeForm,
    t: &SesquilinearForm,
    tol: &Tolerance,
) -> Result<bool> {
    check_dim("t", sigma.dim(), t.dim())?;
    let spectrum = PsdSpectrum::new(sigma.matrix(), tol, "sigma")?;
    Ok(match bound_constant(&spectrum, t.matrix(), tol) {
        Some(c) => c <= 1.0 + tol.psd_abs,
        None => false,
    })
}

/// Builds an element of `M(t)`: `|A|` when `A` is normal, `|A| + |A^*|` otherwise.
pub fn construct_dominating(t: &SesquilinearForm, tol: &Tolerance) -> NonNegativeForm {
    let n = t.dim();
    let a = t.matrix();
    if n == 0 || max_abs(a) == 0.0 {
        return NonNegativeForm::zero(n);
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors were requested");
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let v = v_t.adjoint();
    let sigma = ComplexMatrix::from_diagonal(&svd.singular_values.map(|s| Complex64::new(s, 0.0)));
    let abs_a = &v * &sigma * &v_t;
    let commutator = a * a.adjoint() - a.adjoint() * a;
    let scale = operator_norm(a).powi(2).max(1.0);
    if max_abs(&commutator) <= tol.cmp_abs * scale {
        NonNegativeForm::from_psd_unchecked(abs_a)
    } else {
        let abs_adj = &u * &sigma * u.adjoint();
        NonNegativeForm::from_psd_unchecked(abs_a + abs_adj)
    }
}

/// Which of the standard regions of `C` contain `N(t) = { t[phi] }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeClass {
    /// `N(t) ⊆ [0, +inf)`.
    pub nonnegative: bool,
    /// `N(t) ⊆ R`.
    pub real: bool,
    /// `N(t) ⊆ Q`, the closed first quadrant.
    pub quadrant: bool,
    /// `N(t) ⊆ Π`, the closed right half-plane.
    pub half_plane: bool,
    /// Smallest `c` with `N(t) ⊆ S_c = { |Im z| <= c Re z }`, if one exists.
    pub sector: Option<f64>,
}

impl RangeClass {
    pub fn in_sector(&self, c: f64) -> bool {
        self.sector.is_some_and(|c0| c >= c0)
    }
}

pub fn classify_range(t: &SesquilinearForm, tol: &Tolerance) -> RangeClass {
    let re = hermitian_part(t.matrix());
    let im = skew_part(t.matrix());
    let re_spec = PsdSpectrum::new(&re, tol, "Re t").ok();
    let im_psd = linalg::is_psd(&im, tol);
    let real = t.is_hermitian(tol);
    let half_plane = re_spec.is_some();
    let quadrant = half_plane && im_psd;
    let nonnegative = linalg::is_psd(t.matrix(), tol);
    let sector = re_spec.and_then(|spec| sector_constant(&spec, &re, &im, tol));
    RangeClass {
        nonnegative,
        real,
        quadrant,
        half_plane,
        sector,
    }
}

fn sector_constant(
    re_spec: &PsdSpectrum,
    re: &ComplexMatrix,
    im: &ComplexMatrix,
    tol: &Tolerance,
) -> Option<f64> {
    let with_slack = |c: f64| {
        linalg::is_psd(&(re.scale(c) - im), tol) && linalg::is_psd(&(re.scale(c) + im), tol)
    };
    if with_slack(0.0) {
        return Some(0.0);
    }
    // A finite constant needs ker(Re t) ⊆ ker(Im t).
    let kernel = re_spec.kernel_basis();
    let scale = re_spec.lambda_max().max(operator_norm(im));
    if kernel.ncols() > 0 && max_column_norm(&(im * &kernel)) > kernel_slack(re.nrows(), scale, tol)
    {
        return None;
    }
    let Some(lambda_min) = re_spec.min_positive() else {
        return Some(0.0);
    };
    // Bisect on range(Re t), where Re t is definite, with exact semidefiniteness
    // so the reported constant never undershoots.
    let eig = re_spec.eigen();
    let cols: Vec<usize> = (0..eig.values.len())
        .filter(|&j| eig.values[j] > re_spec.cutoff())
        .collect();
    let basis = ComplexMatrix::from_fn(re.nrows(), cols.len(), |i, k| eig.vectors[(i, cols[k])]);
    let re_c = basis.adjoint() * re * &basis;
    let im_c = basis.adjoint() * im * &basis;
    let strict = |c: f64| {
        min_eigenvalue(&(re_c.scale(c) - &im_c)) >= 0.0
            && min_eigenvalue(&(re_c.scale(c) + &im_c)) >= 0.0
    };
    let mut hi = 2.0 * operator_norm(&im_c) / lambda_min + 1.0;
    if !strict(hi) {
        return None;
    }
    let mut lo = 0.0;
    while hi - lo > SECTOR_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if strict(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

fn min_eigenvalue(h: &ComplexMatrix) -> f64 {
    hermitian_part(h)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `Some(C)` with `C omega ∈ M(t)` minimal when `t` is ω-bounded, `None` otherwise.
pub fn is_omega_bounded(
    t: &SesquilinearForm,
    omega: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<Option<f64>> {
    check_dim("t", omega.dim(), t.dim())?;
    let spectrum = PsdSpectrum::new(omega.matrix(), tol, "omega")?;
    Ok(bound_constant(&spectrum, t.matrix(), tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn e(n: usize, k: usize) -> ComplexVector {
        let mut v = ComplexVector::zeros(n);
        v[k] = Complex64::new(1.0, 0.0);
        v
    }

    fn cv(values: &[f64]) -> ComplexVector {
        ComplexVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    fn t_indefinite_diag() -> SesquilinearForm {
        SesquilinearForm::from_real_rows(&[&[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0]])
            .unwrap()
    }

    fn ones2() -> SesquilinearForm {
        SesquilinearForm::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap()
    }

    fn nilpotent() -> SesquilinearForm {
        SesquilinearForm::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let t = t_indefinite_diag();
        assert_eq!(
            t.evaluate(&e(3, 0), &e(3, 0)).unwrap(),
            Complex64::new(-1.0, 0.0)
        );
        let zero = ComplexVector::zeros(3);
        assert_eq!(
            t.evaluate(&zero, &e(3, 1)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let p = cv(&[1.0, -1.0]);
        assert_eq!(ones2().evaluate(&p, &p).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(ones2().quadratic(&p).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn evaluate_is_sesquilinear() {
        let t = nilpotent();
        // t(phi, psi) = psi^* A phi: A[0][1] couples phi_2 with conj(psi_1)
        assert_eq!(
            t.evaluate(&e(2, 1), &e(2, 0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let i = Complex64::i();
        let phi = e(2, 1) * i;
        assert_eq!(t.evaluate(&phi, &e(2, 0)).unwrap(), i);
        assert_eq!(t.evaluate(&e(2, 1), &(e(2, 0) * i)).unwrap(), -i);
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let err = t_indefinite_diag()
            .evaluate(&e(2, 0), &e(3, 0))
            .unwrap_err();
        assert_eq!(err.code(), "DIM_MISMATCH");
    }

    #[test]
    fn polarization_examples() {
        let t = t_indefinite_diag();
        let q = |v: &ComplexVector| t.quadratic(v).unwrap();
        let r = polarization_reconstruct(q, &e(3, 0), &e(3, 1));
        assert!(r.norm() < 1e-15);

        let t = nilpotent();
        let q = |v: &ComplexVector| t.quadratic(v).unwrap();
        let direct = t.evaluate(&e(2, 1), &e(2, 0)).unwrap();
        let r = polarization_reconstruct(q, &e(2, 1), &e(2, 0));
        assert!((r - direct).norm() < 1e-15);

        let phi = cv(&[0.3, -2.0]);
        let r = polarization_reconstruct(q, &phi, &phi);
        assert!((r - t.quadratic(&phi).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn adjoint_and_parts() {
        let tol = tol();
        let h = SesquilinearForm::new(ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 1.0),
                Complex64::new(2.0, -1.0),
                Complex64::new(3.0, 0.0),
            ],
        ))
        .unwrap();
        assert_eq!(h.adjoint(), h);
        assert!(h.imag_part().is_zero(0.0));

        let t = nilpotent();
        let re = t.real_part();
        let im = t.imag_part();
        assert_eq!(re.matrix()[(0, 1)], Complex64::new(0.5, 0.0));
        assert_eq!(re.matrix()[(1, 0)], Complex64::new(0.5, 0.0));
        // (1/2i)(A - A^*): entry (0,1) = 1/(2i) = -i/2, entry (1,0) = -1/(2i) = i/2
        assert_eq!(im.matrix()[(0, 1)], Complex64::new(0.0, -0.5));
        assert_eq!(im.matrix()[(1, 0)], Complex64::new(0.0, 0.5));
        assert!(re.is_hermitian(&tol) && im.is_hermitian(&tol));
        let back = &re + &(&im * Complex64::i());
        assert!(back.max_abs_diff(&t) < 1e-15);
    }

    #[test]
    fn membership_examples() {
        let tol = tol();
        let t = t_indefinite_diag();
        let sigma = NonNegativeForm::from_weights(&[1.0, 1.0, 0.0], &tol).unwrap();
        assert!(m_membership(&sigma, &t, &tol).unwrap());
        let u = NonNegativeForm::from_real_rows(
            &[
                &[5.0 / 3.0, -4.0 / 3.0, 0.0],
                &[-4.0 / 3.0, 5.0 / 3.0, 0.0],
                &[0.0, 0.0, 0.0],
            ],
            &tol,
        )
        .unwrap();
        assert!(m_membership(&u, &t, &tol).unwrap());
        let omega = NonNegativeForm::from_weights(&[0.0, 1.0, 1.0], &tol).unwrap();
        assert!(!m_membership(&omega, &t, &tol).unwrap());
        // too small to dominate
        assert!(!m_membership(&sigma.scaled(0.5), &t, &tol).unwrap());
    }

    #[test]
    fn membership_rejects_non_psd_and_mismatch() {
        let tol = tol();
        let bad = NonNegativeForm::from_psd_unchecked(
            SesquilinearForm::from_real_rows(&[&[-1.0, 0.0], &[0.0, 1.0]])
                .unwrap()
                .into_matrix(),
        );
        assert_eq!(
            m_membership(&bad, &nilpotent(), &tol).unwrap_err().code(),
            "NOT_PSD"
        );
        let sigma = NonNegativeForm::zero(3);
        assert_eq!(
            m_membership(&sigma, &nilpotent(), &tol).unwrap_err().code(),
            "DIM_MISMATCH"
        );
    }

    #[test]
    fn dominating_examples() {
        let tol = tol();
        let t = t_indefinite_diag();
        let sigma = construct_dominating(&t, &tol);
        let expected = NonNegativeForm::from_weights(&[1.0, 1.0, 0.0], &tol).unwrap();
        assert!(sigma.max_abs_diff(&expected) < 1e-14);
        assert!(m_membership(&sigma, &t, &tol).unwrap());

        assert!(
            construct_dominating(&SesquilinearForm::zero(3), &tol)
                .max_abs_diff(&NonNegativeForm::zero(3))
                == 0.0
        );

        let t = nilpotent();
        let sigma = construct_dominating(&t, &tol);
        let identity = NonNegativeForm::from_weights(&[1.0, 1.0], &tol).unwrap();
        assert!(sigma.max_abs_diff(&identity) < 1e-14);
        assert!(m_membership(&sigma, &t, &tol).unwrap());
    }

    #[test]
    fn classify_examples() {
        let tol = tol();
        let c = classify_range(&t_indefinite_diag(), &tol);
        assert!(c.real && !c.nonnegative && !c.half_plane && !c.quadrant);
        assert_eq!(c.sector, None);

        let psd = NonNegativeForm::from_weights(&[2.0, 1.0, 0.0], &tol)
            .unwrap()
            .as_form();
        let c = classify_range(&psd, &tol);
        assert!(c.nonnegative && c.real && c.quadrant && c.half_plane);
        assert_eq!(c.sector, Some(0.0));
        assert!(c.in_sector(0.0));

        // |x1|^2 + i|x2|^2: quadrant, but Im is not controlled by Re on e2
        let i = Complex64::i();
        let t = SesquilinearForm::from_diagonal(&[Complex64::new(1.0, 0.0), i]);
        let c = classify_range(&t, &tol);
        assert!(c.quadrant && c.half_plane && !c.real && !c.nonnegative);
        assert_eq!(c.sector, None);

        // |x1|^2 + (1+i)|x2|^2: |Im| = |x2|^2 <= 1 * Re
        let t =
            SesquilinearForm::from_diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0)]);
        let c = classify_range(&t, &tol);
        let sector = c.sector.expect("sector constant");
        assert!(
            (1.0..=1.0 + 2.0 * SECTOR_BISECTION_TOL).contains(&sector),
            "{sector}"
        );
        assert!(c.in_sector(1.5) && !c.in_sector(0.9));

        let t = SesquilinearForm::from_diagonal(&[Complex64::new(1.0, -3.0)]);
        let c = classify_range(&t, &tol);
        assert!(c.half_plane && !c.quadrant);
        assert!((c.sector.unwrap() - 3.0).abs() < 2.0 * SECTOR_BISECTION_TOL);
    }

    #[test]
    fn omega_bounded_examples() {
        let tol = tol();
        let omega = NonNegativeForm::from_weights(&[0.0, 1.0, 1.0], &tol).unwrap();
        let t_r = SesquilinearForm::from_real_rows(&[
            &[0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0],
        ])
        .unwrap();
        let c = is_omega_bounded(&t_r, &omega, &tol).unwrap().unwrap();
        assert!((c - 1.0).abs() < 1e-14);
        assert_eq!(
            is_omega_bounded(&t_indefinite_diag(), &omega, &tol).unwrap(),
            None
        );
        let c = is_omega_bounded(&omega.as_form(), &omega, &tol)
            .unwrap()
            .unwrap();
        assert!((c - 1.0).abs() < 1e-14);
    }
}
