//! Complex measures on finite atomic measure spaces.
//!
//! With finitely many atoms and the full power set as σ-algebra, simple
//! functions are exactly `C^k` in the indicator basis, and a measure is fixed
//! by its value on each atom. The Lebesgue decomposition is computed directly
//! (restriction to the support of `ν`) and through the form engine; the two
//! routes must agree.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forms::{NonNegativeForm, SesquilinearForm};
use crate::lebesgue::decompose;
use crate::linalg::Tolerance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicMeasureSpace {
    atoms: Vec<String>,
}

impl AtomicMeasureSpace {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::InvalidSpace(
                "at least one atom is required".to_string(),
            ));
        }
        let mut seen = HashSet::new();
        for a in &atoms {
            if !seen.insert(a.as_str()) {
                return Err(Error::InvalidSpace(format!("duplicate atom label {a:?}")));
            }
        }
        Ok(AtomicMeasureSpace { atoms })
    }

    /// Atoms labelled `a0, a1, ...`.
    pub fn with_len(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| format!("a{i}")))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMeasure {
    space: AtomicMeasureSpace,
    values: Vec<Complex64>,
}

impl ComplexMeasure {
    pub fn new(space: AtomicMeasureSpace, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimMismatch {
                what: "measure values".to_string(),
                expected: space.len(),
                found: values.len(),
            });
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidSpace(
                "measure values must be finite".to_string(),
            ));
        }
        Ok(ComplexMeasure { space, values })
    }

    pub fn from_real(space: AtomicMeasureSpace, values: &[f64]) -> Result<Self> {
        Self::new(
            space,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn zero(space: AtomicMeasureSpace) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); space.len()];
        ComplexMeasure { space, values }
    }

    pub fn space(&self) -> &AtomicMeasureSpace {
        &self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `μ(A)` for a set of atom indices.
    pub fn measure_of(&self, atoms: impl IntoIterator<Item = usize>) -> Complex64 {
        atoms.into_iter().map(|a| self.values[a]).sum()
    }

    pub fn is_signed(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0 && z.re >= 0.0)
    }

    fn check_reference(&self) -> Result<()> {
        match self.values.iter().position(|z| z.im != 0.0 || z.re < 0.0) {
            Some(i) => Err(Error::NegativeReference {
                atom: self.space.atoms[i].clone(),
            }),
            None => Ok(()),
        }
    }

    fn check_same_space(&self, other: &ComplexMeasure) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimMismatch {
                what: "measure space".to_string(),
                expected: self.space.len(),
                found: other.space.len(),
            });
        }
        Ok(())
    }

    fn restricted(&self, keep: impl Fn(usize) -> bool) -> ComplexMeasure {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &z)| if keep(i) { z } else { Complex64::new(0.0, 0.0) })
            .collect();
        ComplexMeasure {
            space: self.space.clone(),
            values,
        }
    }
}

/// `|μ|`, atomwise modulus; on an atomic space the supremum over partitions
/// is attained by the partition into atoms.
pub fn total_variation(mu: &ComplexMeasure) -> ComplexMeasure {
    ComplexMeasure {
        space: mu.space.clone(),
        values: mu
            .values
            .iter()
            .map(|z| Complex64::new(z.norm(), 0.0))
            .collect(),
    }
}

/// The form `t(phi, psi) = ∫ phi conj(psi) dμ`, i.e. `diag(μ)` in the indicator basis.
pub fn induced_form(mu: &ComplexMeasure) -> SesquilinearForm {
    SesquilinearForm::from_diagonal(&mu.values)
}

fn induced_nonneg(nu: &ComplexMeasure, tol: &Tolerance) -> Result<NonNegativeForm> {
    NonNegativeForm::named(induced_form(nu).into_matrix(), tol, "induced form")
}

/// `μ ≪ ν`: every atom with `ν = 0` has `μ = 0`.
pub fn is_ac_measure(mu: &ComplexMeasure, nu: &ComplexMeasure) -> Result<bool> {
    mu.check_same_space(nu)?;
    nu.check_reference()?;
    Ok(mu
        .values
        .iter()
        .zip(&nu.values)
        .all(|(m, n)| n.re != 0.0 || *m == Complex64::new(0.0, 0.0)))
}

/// `μ ⊥ ν`: every atom has `μ = 0` or `ν = 0`.
pub fn is_singular_measure(mu: &ComplexMeasure, nu: &ComplexMeasure) -> Result<bool> {
    mu.check_same_space(nu)?;
    nu.check_reference()?;
    Ok(mu
        .values
        .iter()
        .zip(&nu.values)
        .all(|(m, n)| n.re == 0.0 || *m == Complex64::new(0.0, 0.0)))
}

/// `μ = μ_a + μ_s` with `E` the support of `ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSplit {
    pub mu_a: ComplexMeasure,
    pub mu_s: ComplexMeasure,
    /// Indices of the atoms in `E = { ν > 0 }`.
    pub support: Vec<usize>,
}

impl MeasureSplit {
    pub fn support_labels(&self) -> Vec<&str> {
        self.support
            .iter()
            .map(|&i| self.mu_a.space.atoms[i].as_str())
            .collect()
    }
}

fn support_of(nu: &ComplexMeasure) -> Vec<usize> {
    (0..nu.values.len())
        .filter(|&i| nu.values[i].re > 0.0)
        .collect()
}

pub fn lebesgue_decompose_measure(
    mu: &ComplexMeasure,
    nu: &ComplexMeasure,
) -> Result<MeasureSplit> {
    mu.check_same_space(nu)?;
    nu.check_reference()?;
    let support = support_of(nu);
    let in_support = |i: usize| nu.values[i].re > 0.0;
    Ok(MeasureSplit {
        mu_a: mu.restricted(in_support),
        mu_s: mu.restricted(|i| !in_support(i)),
        support,
    })
}

/// Decomposes `μ` through the forms induced by `μ`, `|μ|` and `ν`, reading
/// `μ_a(a) = t_r[χ_a]` and `μ_s(a) = (t_m + t_ss)[χ_a]`. Fails with
/// `RouteMismatch` if the result differs from the direct split by more than `cmp_abs`.
pub fn decompose_via_forms(
    mu: &ComplexMeasure,
    nu: &ComplexMeasure,
    tol: &Tolerance,
) -> Result<MeasureSplit> {
    let direct = lebesgue_decompose_measure(mu, nu)?;
    let t = induced_form(mu);
    let sigma = induced_nonneg(&total_variation(mu), tol)?;
    let omega = induced_nonneg(nu, tol)?;
    let d = decompose(&t, &omega, &sigma, tol)?;
    let singular = d.singular_part();
    let k = mu.values.len();
    let mu_a: Vec<Complex64> = (0..k).map(|a| d.t_r.matrix()[(a, a)]).collect();
    let mu_s: Vec<Complex64> = (0..k).map(|a| singular.matrix()[(a, a)]).collect();

    for a in 0..k {
        let da = (mu_a[a] - direct.mu_a.values[a]).norm();
        let ds = (mu_s[a] - direct.mu_s.values[a]).norm();
        if da > tol.cmp_abs || ds > tol.cmp_abs {
            return Err(Error::RouteMismatch(format!(
                "atom {:?}: form route gives ({}, {}), direct route ({}, {})",
                mu.space.atoms[a], mu_a[a], mu_s[a], direct.mu_a.values[a], direct.mu_s.values[a]
            )));
        }
    }
    Ok(MeasureSplit {
        mu_a: ComplexMeasure::new(mu.space.clone(), mu_a)?,
        mu_s: ComplexMeasure::new(mu.space.clone(), mu_s)?,
        support: direct.support,
    })
}
