//! The decomposition engine.
//!
//! Both splits are computed in the space `H_{σ+ω}`, realized concretely as
//! `range(G^{1/2})` with the standard inner product, where `G = S + W` and
//! `phi ↦ G^{1/2} phi` plays the role of the canonical projection. In finite
//! dimension the embedding `H_{σ+ω} → H_ω` is closed and its kernel is
//! `G^{1/2} (ker W)`; `P̂` projects `range(G^{1/2})` onto the orthogonal
//! complement of that kernel.
//!
//! For a form `t` dominated by `σ`, the contraction `T̂ = G^{+½} A G^{+½}` represents
//! `t` on `H_{σ+ω}` and
//!
//! ```text
//! t_r  = G^½ P̂ T̂ P̂ G^½
//! t_m  = G^½ (P̂ T̂ Q̂ + Q̂ T̂ P̂) G^½
//! t_ss = G^½ Q̂ T̂ Q̂ G^½          with Q̂ = range projector of G minus P̂.
//! ```

mod checks;

pub use checks::{
    ac_extremal_check, is_absolutely_continuous, is_mixed_certificate, is_regular,
    is_singular_nonneg, is_strongly_singular, singularity_sufficient,
};

use crate::error::{Error, Result};
use crate::forms::{m_membership, NonNegativeForm, SesquilinearForm};
use crate::linalg::{check_dim, hermitian_eig, ComplexMatrix, PsdSpectrum, Tolerance};

/// Spectral data of `G = S + W` realizing `H_{σ+ω}`, the kernel of the
/// embedding into `H_ω`, and the projection `P̂`.
#[derive(Debug, Clone)]
pub struct QuotientContext {
    s: ComplexMatrix,
    w: ComplexMatrix,
    g: ComplexMatrix,
    g_half: ComplexMatrix,
    g_pinv_half: ComplexMatrix,
    range: ComplexMatrix,
    kernel_image: ComplexMatrix,
    p_hat: ComplexMatrix,
    t_hat: Option<ComplexMatrix>,
    scale: f64,
}

impl QuotientContext {
    /// Builds the context for `σ`, `ω` and, optionally, a form `t` with `σ ∈ M(t)`.
    pub fn build(
        sigma: &NonNegativeForm,
        omega: &NonNegativeForm,
        t: Option<&SesquilinearForm>,
        tol: &Tolerance,
    ) -> Result<Self> {
        tol.validate()?;
        let n = sigma.dim();
        check_dim("omega", n, omega.dim())?;
        PsdSpectrum::new(sigma.matrix(), tol, "sigma")?;
        let w_spec = PsdSpectrum::new(omega.matrix(), tol, "omega")?;
        if let Some(t) = t {
            check_dim("t", n, t.dim())?;
            if !m_membership(sigma, t, tol)? {
                return Err(Error::NotDominating(
                    "sigma does not belong to M(t)".to_string(),
                ));
            }
        }

        let s = sigma.matrix().clone();
        let w = omega.matrix().clone();
        let g = &s + &w;
        let g_spec = PsdSpectrum::new(&g, tol, "sigma + omega")?;
        let g_half = g_spec.sqrt();
        let g_pinv_half = g_spec.pinv_sqrt();
        let range = g_spec.range_projector();

        // Orthonormal basis of G^½ (ker W), dropping directions G^½ annihilates.
        let kernel = w_spec.kernel_basis();
        let image = &g_half * &kernel;
        let gram = image.adjoint() * &image;
        let gram_eig = hermitian_eig(&gram, tol)?;
        let keep: Vec<usize> = (0..gram_eig.values.len())
            .filter(|&j| gram_eig.values[j] > g_spec.cutoff() && gram_eig.values[j] > 0.0)
            .collect();
        let mut kernel_image = ComplexMatrix::zeros(n, keep.len());
        for (col, &j) in keep.iter().enumerate() {
            let v = (&image * gram_eig.vectors.column(j)).unscale(gram_eig.values[j].sqrt());
            kernel_image.set_column(col, &v);
        }
        let p_hat = if kernel_image.ncols() > 0 {
            &range - &kernel_image * kernel_image.adjoint()
        } else {
            range.clone()
        };
        let t_hat = t.map(|t| &g_pinv_half * t.matrix() * &g_pinv_half);

        Ok(QuotientContext {
            s,
            w,
            g,
            g_half,
            g_pinv_half,
            range,
            kernel_image,
            p_hat,
            t_hat,
            scale: g_spec.lambda_max(),
        })
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn sigma_matrix(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn omega_matrix(&self) -> &ComplexMatrix {
        &self.w
    }

    /// `G = S + W`.
    pub fn gram(&self) -> &ComplexMatrix {
        &self.g
    }

    /// `G^{1/2}`.
    pub fn g_half(&self) -> &ComplexMatrix {
        &self.g_half
    }

    /// Pseudo-inverse of `G^{1/2}`.
    pub fn g_pinv_half(&self) -> &ComplexMatrix {
        &self.g_pinv_half
    }

    /// Orthogonal projector onto `range(G)`.
    pub fn range_projector(&self) -> &ComplexMatrix {
        &self.range
    }

    /// Orthonormal columns spanning `G^{1/2} (ker W)`.
    pub fn kernel_image(&self) -> &ComplexMatrix {
        &self.kernel_image
    }

    /// `P̂`: projector onto `range(G^{1/2}) ⊖ G^{1/2}(ker W)`.
    pub fn p_hat(&self) -> &ComplexMatrix {
        &self.p_hat
    }

    /// `Q̂ = range projector - P̂`.
    pub fn q_hat(&self) -> ComplexMatrix {
        &self.range - &self.p_hat
    }

    /// `T̂ = G^{+½} A G^{+½}`, present when the context was built with a form.
    pub fn t_hat(&self) -> Option<&ComplexMatrix> {
        self.t_hat.as_ref()
    }

    /// Largest eigenvalue of `G`; the reference scale for vanishing tests.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `G^½ X G^½`.
    fn pull_back(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.g_half * x * &self.g_half
    }

    /// Matrix of `σ_a + ω`.
    pub fn ac_plus_omega(&self) -> ComplexMatrix {
        self.pull_back(&self.p_hat)
    }
}

/// `σ = σ_a + σ_s` with `σ_a` ω-absolutely continuous and `σ_s` ω-singular.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegSplit {
    pub sigma_a: NonNegativeForm,
    pub sigma_s: NonNegativeForm,
}

impl NonNegSplit {
    fn from_context(ctx: &QuotientContext) -> Self {
        let ac_plus_omega = ctx.ac_plus_omega();
        let sigma_s = &ctx.g - &ac_plus_omega;
        let sigma_a = ac_plus_omega - &ctx.w;
        NonNegSplit {
            sigma_a: NonNegativeForm::from_psd_unchecked(sigma_a),
            sigma_s: NonNegativeForm::from_psd_unchecked(sigma_s),
        }
    }
}

/// Splits a non-negative form into its ω-absolutely continuous and ω-singular parts.
pub fn decompose_nonneg(
    sigma: &NonNegativeForm,
    omega: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<NonNegSplit> {
    let ctx = QuotientContext::build(sigma, omega, None, tol)?;
    Ok(NonNegSplit::from_context(&ctx))
}

/// `t = t_r + t_m + t_ss` relative to `ω` and a chosen `σ ∈ M(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleDecomposition {
    /// ω-regular part.
    pub t_r: SesquilinearForm,
    /// ω-mixed part, `t_m = t_m_forward + t_m_backward`.
    pub t_m: SesquilinearForm,
    /// ω-strongly singular part.
    pub t_ss: SesquilinearForm,
    /// `G^½ Q̂ T̂ P̂ G^½`, bounded by `(σ_a+ω)[phi]^½ σ_s[psi]^½`.
    pub t_m_forward: SesquilinearForm,
    /// `G^½ P̂ T̂ Q̂ G^½`, bounded by `σ_s[phi]^½ (σ_a+ω)[psi]^½`.
    pub t_m_backward: SesquilinearForm,
    /// The split of `σ` whose parts bound the three pieces.
    pub witnesses: NonNegSplit,
}

impl TripleDecomposition {
    /// `t_s = t_m + t_ss`, the ω-singular part.
    pub fn singular_part(&self) -> SesquilinearForm {
        &self.t_m + &self.t_ss
    }

    pub fn sum(&self) -> SesquilinearForm {
        &(&self.t_r + &self.t_m) + &self.t_ss
    }
}

/// Three-part Lebesgue decomposition of `t` with respect to `ω` and `σ ∈ M(t)`.
pub fn decompose(
    t: &SesquilinearForm,
    omega: &NonNegativeForm,
    sigma: &NonNegativeForm,
    tol: &Tolerance,
) -> Result<TripleDecomposition> {
    let ctx = QuotientContext::build(sigma, omega, Some(t), tol)?;
    let t_hat = ctx.t_hat().expect("context was built with a form");
    let p = ctx.p_hat();
    let q = ctx.q_hat();
    let wrap = SesquilinearForm::from_matrix_unchecked;

    let t_r = wrap(ctx.pull_back(&(p * t_hat * p)));
    let t_m_forward = wrap(ctx.pull_back(&(&q * t_hat * p)));
    let t_m_backward = wrap(ctx.pull_back(&(p * t_hat * &q)));
    let t_ss = wrap(ctx.pull_back(&(&q * t_hat * &q)));
    let t_m = &t_m_forward + &t_m_backward;
    Ok(TripleDecomposition {
        t_r,
        t_m,
        t_ss,
        t_m_forward,
        t_m_backward,
        witnesses: NonNegSplit::from_context(&ctx),
    })
}
