//! Predicates and certificate checks built on the splits.
//!
//! Absolute continuity and singularity of non-negative forms are read off the
//! computed split. A split part "vanishes" when its operator norm is at most
//! `n * cmp_abs * ||σ + ω||`.

use crate::error::{Error, Result};
use crate::forms::{
    is_omega_bounded, kernel_slack, m_membership, NonNegativeForm, SesquilinearForm,
};
use crate::linalg::{
    check_dim, hermitian_eig, kernel_basis, loewner_le, max_abs, operator_norm, ComplexMatrix,
    PsdSpectrum, Tolerance,
};

use super::{NonNegSplit, QuotientContext};

fn vanish_threshold(n: usize, scale: f64, tol: &Tolerance) -> f64 {
    n.max(1) as f64 * tol.cmp_abs * scale
}

fn split_with_context(
    sigma: &NonNegativeForm,
    omega: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<(QuotientContext, NonNegSplit)> {
    let ctx = QuotientContext::build(sigma, omega, None, tol)?;
    let split = NonNegSplit::from_context(&ctx);
    Ok((ctx, split))
}

/// Largest value of `s[v]` over unit vectors `v` in the numerical kernel of `w`.
fn max_on_kernel(w: &PsdSpectrum, s: &ComplexMatrix, tol: &Tolerance) -> Result<f64> {
    let kernel = w.kernel_basis();
    if kernel.ncols() == 0 {
        return Ok(0.0);
    }
    let compressed = kernel.adjoint() * s * &kernel;
    Ok(hermitian_eig(&compressed, tol)?.max().max(0.0))
}

/// `σ ≪ ω`: `σ_s = 0`, cross-checked against `ker W ⊆ ker S`.
pub fn is_absolutely_continuous(
    sigma: &NonNegativeForm,
    omega: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<bool> {
    let (ctx, split) = split_with_context(sigma, omega, tol)?;
    let threshold = vanish_threshold(ctx.dim(), ctx.scale(), tol);
    let by_split = operator_norm(split.sigma_s.matrix()) <= threshold;

    let w_spec = PsdSpectrum::new(omega.matrix(), tol, "omega")?;
    let by_kernel = max_on_kernel(&w_spec, sigma.matrix(), tol)? <= threshold;
    if by_split != by_kernel {
        return Err(Error::InconsistentRank(format!(
            "singular part norm {:e} and kernel criterion disagree (threshold {threshold:e})",
            operator_norm(split.sigma_s.matrix())
        )));
    }
    Ok(by_split)
}

/// `σ ⊥ ω` for non-negative `σ`: the absolutely continuous part vanishes.
pub fn is_singular_nonneg(
    sigma: &NonNegativeForm,
    omega: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<bool> {
    let (ctx, split) = split_with_context(sigma, omega, tol)?;
    Ok(operator_norm(split.sigma_a.matrix()) <= vanish_threshold(ctx.dim(), ctx.scale(), tol))
}

/// Checks `u <= σ_a` for an admissible `u` (`0 <= u <= σ`, `u ≪ ω`).
///
/// A `false` return means the extremality property failed numerically.
pub fn ac_extremal_check(
    sigma: &NonNegativeForm,
    omega: &NonNegativeForm,
    u: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<bool> {
    let n = sigma.dim();
    check_dim("u", n, u.dim())?;
    PsdSpectrum::new(u.matrix(), tol, "u")?;
    let (ctx, split) = split_with_context(sigma, omega, tol)?;
    if !loewner_le(u.matrix(), sigma.matrix(), tol)? {
        return Err(Error::Precondition(
            "u is not dominated by sigma".to_string(),
        ));
    }
    let w_spec = PsdSpectrum::new(omega.matrix(), tol, "omega")?;
    if max_on_kernel(&w_spec, u.matrix(), tol)? > vanish_threshold(n, ctx.scale(), tol) {
        return Err(Error::Precondition(
            "u is not absolutely continuous with respect to omega".to_string(),
        ));
    }
    loewner_le(u.matrix(), split.sigma_a.matrix(), tol)
}

/// In finite dimension ω-regular is the same as ω-bounded.
pub fn is_regular(t: &SesquilinearForm, omega: &NonNegativeForm, tol: &Tolerance) -> Result<bool> {
    Ok(is_omega_bounded(t, omega, tol)?.is_some())
}

/// Certificate check: `σ_cert ∈ M(t)` and `σ_cert ⊥ ω`.
pub fn is_strongly_singular(
    t: &SesquilinearForm,
    omega: &NonNegativeForm,
    sigma_cert: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<bool> {
    check_dim("omega", t.dim(), omega.dim())?;
    Ok(m_membership(sigma_cert, t, tol)? && is_singular_nonneg(sigma_cert, omega, tol)?)
}

/// Certificate check for ω-mixed forms.
///
/// Requires `α ≪ ω`, `β ⊥ ω`, `α ⊥ β`, `α + β ∈ M(t)`, and `t[phi] = 0`
/// whenever `α[phi] = 0` or `β[phi] = 0`. The last condition is tested by
/// compressing `A` onto the kernels of `α` and `β`: a quadratic form vanishing
/// on a subspace has zero compression there.
pub fn is_mixed_certificate(
    t: &SesquilinearForm,
    omega: &NonNegativeForm,
    alpha: &NonNegativeForm,
    beta: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<bool> {
    let n = t.dim();
    check_dim("omega", n, omega.dim())?;
    check_dim("alpha", n, alpha.dim())?;
    check_dim("beta", n, beta.dim())?;
    let alpha_spec = PsdSpectrum::new(alpha.matrix(), tol, "alpha")?;
    let beta_spec = PsdSpectrum::new(beta.matrix(), tol, "beta")?;

    if !is_absolutely_continuous(alpha, omega, tol)? {
        return Ok(false);
    }
    if !is_singular_nonneg(beta, omega, tol)? || !is_singular_nonneg(alpha, beta, tol)? {
        return Ok(false);
    }
    if !m_membership(&(alpha + beta), t, tol)? {
        return Ok(false);
    }
    let scale = operator_norm(t.matrix())
        .max(alpha_spec.lambda_max())
        .max(beta_spec.lambda_max());
    let slack = kernel_slack(n, scale, tol);
    for spec in [&alpha_spec, &beta_spec] {
        let k = spec.kernel_basis();
        if k.ncols() > 0 && max_abs(&(k.adjoint() * t.matrix() * &k)) > slack {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sufficient test for ω-singularity: the image of `ker t` (or of `ker t^*`)
/// under `phi ↦ W^{1/2} phi` spans `range(W^{1/2})`. `false` is inconclusive.
pub fn singularity_sufficient(
    t: &SesquilinearForm,
    omega: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<bool> {
    check_dim("omega", t.dim(), omega.dim())?;
    let w_spec = PsdSpectrum::new(omega.matrix(), tol, "omega")?;
    let target_rank = w_spec.rank();
    if target_rank == 0 {
        return Ok(true);
    }
    let w_half = w_spec.sqrt();
    for a in [t.matrix().clone(), t.matrix().adjoint()] {
        let kernel = kernel_basis(&a, tol)?;
        if kernel.ncols() < target_rank {
            continue;
        }
        let image = &w_half * &kernel;
        let gram = image.adjoint() * &image;
        let eig = hermitian_eig(&gram, tol)?;
        let rank = eig
            .values
            .iter()
            .filter(|&&l| l > w_spec.cutoff() && l > 0.0)
            .count();
        if rank >= target_rank {
            return Ok(true);
        }
    }
    Ok(false)
}
