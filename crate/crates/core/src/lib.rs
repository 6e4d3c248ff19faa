//! Lebesgue-type decompositions of sesquilinear forms on `C^n`.
//!
//! * [`lebesgue::decompose_nonneg`] splits a non-negative form `σ` into an
//!   ω-absolutely continuous and an ω-singular part.
//! * [`lebesgue::decompose`] splits an arbitrary form `t`, given a dominating
//!   `σ ∈ M(t)`, into ω-regular, ω-mixed and ω-strongly singular parts.
//! * [`measures`] applies the same machinery to complex measures on finite
//!   atomic spaces and checks it against the direct decomposition.
//!
//! Forms are represented by matrices: `t(phi, psi) = psi^* A phi`.

pub mod error;
pub mod forms;
pub mod lebesgue;
pub mod linalg;
pub mod measures;
pub mod sampling;

pub use error::{Error, Result};
pub use forms::{
    classify_range, construct_dominating, is_omega_bounded, m_membership, polarization_reconstruct,
    NonNegativeForm, RangeClass, SesquilinearForm,
};
pub use lebesgue::{
    ac_extremal_check, decompose, decompose_nonneg, is_absolutely_continuous, is_mixed_certificate,
    is_regular, is_singular_nonneg, is_strongly_singular, singularity_sufficient, NonNegSplit,
    QuotientContext, TripleDecomposition,
};
pub use linalg::{ComplexMatrix, ComplexVector, Tolerance};
pub use measures::{
    decompose_via_forms, induced_form, is_ac_measure, is_singular_measure,
    lebesgue_decompose_measure, total_variation, AtomicMeasureSpace, ComplexMeasure, MeasureSplit,
};
pub use num_complex::Complex64;
