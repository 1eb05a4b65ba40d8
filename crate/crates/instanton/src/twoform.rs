//! The algebra of 2-forms at a point of an oriented Riemannian 4-manifold:
//! orthonormal frames, the six-dimensional basis of Λ², the Hodge star as an
//! involution of Λ² ≅ 𝔰𝔬(4), and the self-dual / anti-self-dual projectors.
//!
//! 2-forms (equivalently 𝔰𝔬(4) elements) are stored as antisymmetric 4×4
//! component arrays in the orthonormal frame. The Λ² inner product is the
//! ordered-pair sum `⟨A,B⟩ = Σ_{a<b} A_ab B_ab`, so the basis 2-forms
//! `e^a∧e^b` are orthonormal.

use crate::chart::MetricJet;
use crate::error::GeomError;
use crate::linalg::{self, M4, V4};
use crate::Result;

/// 𝔰𝔬(4) element / 2-form in orthonormal-frame components.
pub type So4 = M4;

/// Basis of Λ² ordered so that index `i` and `i+3` are Hodge-dual partners:
/// `e⁰∧e¹ ↔ e²∧e³`, `e⁰∧e² ↔ e³∧e¹`, `e⁰∧e³ ↔ e¹∧e²`.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Λ² inner product (ordered pairs).
pub fn pair(a: &So4, b: &So4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            acc += a[i][j] * b[i][j];
        }
    }
    acc
}

pub fn norm_sq(a: &So4) -> f64 {
    pair(a, a)
}

/// Hodge star on 2-forms in a positively oriented orthonormal frame:
/// `(*A)_ab = ½ ε_abcd A_cd`.
pub fn star(a: &So4) -> So4 {
    let mut out = [[0.0; 4]; 4];
    for (i, &(p, q)) in PAIRS.iter().enumerate() {
        let (r, s) = PAIRS[(i + 3) % 6];
        out[p][q] = a[r][s];
        out[q][p] = -a[r][s];
    }
    out
}

/// Self-dual part `½(A + *A)`.
pub fn self_dual(a: &So4) -> So4 {
    let s = star(a);
    linalg::tensor2(|i, j| 0.5 * (a[i][j] + s[i][j]))
}

/// Anti-self-dual part `½(A − *A)`.
pub fn anti_self_dual(a: &So4) -> So4 {
    let s = star(a);
    linalg::tensor2(|i, j| 0.5 * (a[i][j] - s[i][j]))
}

pub fn basis_form(i: usize) -> So4 {
    let (p, q) = PAIRS[i];
    let mut out = [[0.0; 4]; 4];
    out[p][q] = 1.0;
    out[q][p] = -1.0;
    out
}

pub fn to_six(a: &So4) -> [f64; 6] {
    std::array::from_fn(|i| {
        let (p, q) = PAIRS[i];
        a[p][q]
    })
}

pub fn from_six(v: &[f64; 6]) -> So4 {
    let mut out = [[0.0; 4]; 4];
    for (i, &(p, q)) in PAIRS.iter().enumerate() {
        out[p][q] = v[i];
        out[q][p] = -v[i];
    }
    out
}

/// Orthonormal frame at a point together with its coframe, oriented
/// positively with respect to the chart orientation.
#[derive(Clone, Debug)]
pub struct TwoFormAlgebra {
    pub dim: usize,
    /// `frame[a][i]`: coordinate components of the a-th frame vector.
    pub frame: M4,
    /// `coframe[a][i]`: components of the dual coframe 1-forms.
    pub coframe: M4,
}

impl TwoFormAlgebra {
    /// Gram–Schmidt on the coordinate vectors in index order. The resulting
    /// frame is positively oriented for the declared chart orientation.
    pub fn gram_schmidt(jet: &MetricJet) -> Result<Self> {
        let dim = jet.dim;
        let mut frame = [[0.0; 4]; 4];
        for a in 0..dim {
            let mut v = [0.0; 4];
            v[a] = 1.0;
            for b in 0..a {
                let proj = linalg::inner(dim, &jet.g, &v, &frame[b]);
                v = linalg::axpy(-proj, &frame[b].clone(), &v);
            }
            let nsq = linalg::inner(dim, &jet.g, &v, &v);
            if nsq.is_nan() || nsq <= 1e-28 {
                return Err(GeomError::DegenerateFrame { residual: nsq });
            }
            frame[a] = linalg::scale(&v, 1.0 / nsq.sqrt());
        }
        for a in dim..4 {
            frame[a][a] = 1.0;
        }
        if jet.orientation < 0.0 && dim == 4 {
            // Flip the last vector so that dVol(e_0,..,e_3) = +1.
            frame[3] = linalg::scale(&frame[3], -1.0);
        }
        // Coframe rows solve coframe · frameᵀ = I, i.e. θ^a_i = (F^{-1})ᵀ.
        let fm = linalg::tensor2(|i, a| frame[a][i]);
        let (finv, _) = linalg::invert(4, &fm).ok_or(GeomError::DegenerateFrame {
            residual: f64::INFINITY,
        })?;
        let coframe = linalg::tensor2(|a, i| finv[a][i]);
        Ok(TwoFormAlgebra { dim, frame, coframe })
    }

    /// Frame components of a coordinate vector.
    pub fn vector_to_frame(&self, v: &V4) -> V4 {
        linalg::tensor1(|a| linalg::dot(4, &self.coframe[a].clone(), v))
    }

    /// Frame components of a coordinate 1-form (`α_a = α(F_a)`).
    pub fn oneform_to_frame(&self, alpha: &V4) -> V4 {
        linalg::tensor1(|a| linalg::dot(4, &self.frame[a].clone(), alpha))
    }

    /// Frame components of a covariant 2-tensor.
    pub fn cov2_to_frame(&self, t: &M4) -> M4 {
        linalg::tensor2(|a, b| {
            linalg::sum2(4, |i, j| t[i][j] * self.frame[a][i] * self.frame[b][j])
        })
    }

    /// Gram residual of the frame, for validity checks.
    pub fn gram_residual(&self, jet: &MetricJet) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.dim {
            for b in 0..self.dim {
                let want = if a == b { 1.0 } else { 0.0 };
                let got = linalg::inner(self.dim, &jet.g, &self.frame[a].clone(), &self.frame[b].clone());
                worst = worst.max((got - want).abs());
            }
        }
        worst
    }
}

/// Hodge star of a 2-form given in a valid orthonormal frame, exposed as the
/// chart-level operation. Fails if the frame Gram residual exceeds `tol`.
pub fn hodge_star_2form(
    frame: &TwoFormAlgebra,
    jet: &MetricJet,
    omega: &So4,
    tol: f64,
) -> Result<So4> {
    let residual = frame.gram_residual(jet);
    if residual > tol {
        return Err(GeomError::DegenerateFrame { residual });
    }
    Ok(star(omega))
}
