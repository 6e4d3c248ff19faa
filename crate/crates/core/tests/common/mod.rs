//! Reference computations shared by the integration suites.
//!
//! Nothing here calls into `formleb::lebesgue`; the splits are recomputed from
//! a known basis `K` of `ker W` with plain eigen-decompositions.

#![allow(dead_code)]

use formleb::{Complex64, ComplexMatrix};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    let n = rows.len();
    ComplexMatrix::from_fn(n, rows[0].len(), |i, j| c(rows[i][j]))
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { c(values[i]) } else { c(0.0) })
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    max_abs(&(a - b))
}

/// Eigenpairs of the Hermitian part of `h`.
pub fn eigh(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    if h.nrows() == 0 {
        return (Vec::new(), ComplexMatrix::zeros(0, 0));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let e = sym.symmetric_eigen();
    (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
}

pub fn min_eig(h: &ComplexMatrix) -> f64 {
    if h.nrows() == 0 {
        return 0.0;
    }
    eigh(h).0.into_iter().fold(f64::INFINITY, f64::min)
}

pub fn max_eig(h: &ComplexMatrix) -> f64 {
    if h.nrows() == 0 {
        return 0.0;
    }
    eigh(h).0.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Number of eigenvalues above `rel * max(1, λmax)`.
pub fn rank(h: &ComplexMatrix, rel: f64) -> usize {
    if h.nrows() == 0 {
        return 0;
    }
    let (values, _) = eigh(h);
    let cut = rel * values.iter().copied().fold(1.0, f64::max);
    values.iter().filter(|&&l| l > cut).count()
}

/// `f` applied to the eigenvalues of a PSD matrix; eigenvalues below `cut` map to zero.
fn spectral(h: &ComplexMatrix, cut: f64, f: impl Fn(f64) -> f64) -> ComplexMatrix {
    let (values, vectors) = eigh(h);
    let mut scaled = vectors.clone();
    for (j, &l) in values.iter().enumerate() {
        let v = if l > cut { f(l) } else { 0.0 };
        scaled.column_mut(j).scale_mut(v);
    }
    scaled * vectors.adjoint()
}

pub fn sqrt_psd(h: &ComplexMatrix) -> ComplexMatrix {
    spectral(h, 1e-12, f64::sqrt)
}

pub fn pinv_psd(h: &ComplexMatrix) -> ComplexMatrix {
    let cut = 1e-10 * max_eig(h).max(1.0);
    spectral(h, cut, |l| 1.0 / l)
}

pub fn pinv_sqrt_psd(h: &ComplexMatrix) -> ComplexMatrix {
    let cut = 1e-10 * max_eig(h).max(1.0);
    spectral(h, cut, |l| 1.0 / l.sqrt())
}

/// Reference parts of `σ` and `t`.
pub struct Reference {
    pub sigma_a: ComplexMatrix,
    pub sigma_s: ComplexMatrix,
    pub t_r: ComplexMatrix,
    pub t_m: ComplexMatrix,
    pub t_ss: ComplexMatrix,
}

/// Square-root-free reference: with `F = G K (K^* G K)^+ K^*`,
/// `σ_s = F G`, `t_ss = F A F^*`, `t_r = (I - F) A (I - F)^*`.
pub fn reference(
    a: &ComplexMatrix,
    s: &ComplexMatrix,
    w: &ComplexMatrix,
    kernel_w: &ComplexMatrix,
) -> Reference {
    let n = s.nrows();
    let g = s + w;
    let m = kernel_w.adjoint() * &g * kernel_w;
    let f = &g * kernel_w * pinv_psd(&m) * kernel_w.adjoint();
    let id = ComplexMatrix::identity(n, n);
    let sigma_s = &f * &g;
    let sigma_a = s - &sigma_s;
    let t_ss = &f * a * f.adjoint();
    let t_r = (&id - &f) * a * (&id - &f).adjoint();
    let t_m = a - &t_r - &t_ss;
    Reference {
        sigma_a,
        sigma_s,
        t_r,
        t_m,
        t_ss,
    }
}

/// Direct rendition of the quotient-space construction:
/// `P̂ = R - V V^*` with `V` an orthonormal basis of `G^½ ker W`,
/// `T̂ = G^{+½} A G^{+½}`, and the parts pulled back through `G^½`.
pub fn reference_via_sqrt(
    a: &ComplexMatrix,
    s: &ComplexMatrix,
    w: &ComplexMatrix,
    kernel_w: &ComplexMatrix,
) -> Reference {
    let g = s + w;
    let gh = sqrt_psd(&g);
    let gph = pinv_sqrt_psd(&g);
    let range = &gh * &gph;
    let image = &gh * kernel_w;
    let (values, vectors) = eigh(&(image.adjoint() * &image));
    let cut = 1e-10 * max_eig(&g).max(1.0);
    let mut proj = ComplexMatrix::zeros(g.nrows(), g.nrows());
    for (j, &l) in values.iter().enumerate() {
        if l > cut {
            let v = (&image * vectors.column(j)).unscale(l.sqrt());
            proj += &v * v.adjoint();
        }
    }
    let p = &range - &proj;
    let q = &range - &p;
    let t_hat = &gph * a * &gph;
    let pull = |x: &ComplexMatrix| &gh * x * &gh;
    let sigma_a = pull(&p) - w;
    let sigma_s = &g - pull(&p);
    let t_r = pull(&(&p * &t_hat * &p));
    let t_ss = pull(&(&q * &t_hat * &q));
    let t_m = pull(&(&q * &t_hat * &p + &p * &t_hat * &q));
    Reference {
        sigma_a,
        sigma_s,
        t_r,
        t_m,
        t_ss,
    }
}

/// Orthonormal basis of the kernel of a PSD matrix.
pub fn kernel_of_psd(h: &ComplexMatrix) -> ComplexMatrix {
    let (values, vectors) = eigh(h);
    let cut = 1e-10 * max_eig(h).max(1.0);
    let cols: Vec<usize> = (0..values.len()).filter(|&j| values[j] <= cut).collect();
    ComplexMatrix::from_fn(h.nrows(), cols.len(), |i, k| vectors[(i, cols[k])])
}
