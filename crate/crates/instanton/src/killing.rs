//! Killing field data: the field, its dual 1-form, covariant derivative,
//! `dX♭`, and the Killing-equation residual.

use crate::chart::{ChartPoint, MetricChart};
use crate::curvature::CurvatureData;
use crate::error::GeomError;
use crate::linalg::{self, M4, V4};
use crate::Result;
use std::fmt;
use std::sync::Arc;

pub type FieldFn = dyn Fn(&V4) -> V4 + Send + Sync;
/// `jacobian[i][j] = ∂_i X^j`
pub type FieldJacFn = dyn Fn(&V4) -> M4 + Send + Sync;

/// A vector field on a chart with exact component derivatives.
#[derive(Clone)]
pub struct KillingField {
    pub name: String,
    components: Arc<FieldFn>,
    jacobian: Arc<FieldJacFn>,
}

impl fmt::Debug for KillingField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KillingField({})", self.name)
    }
}

impl KillingField {
    pub fn new(name: impl Into<String>, components: Arc<FieldFn>, jacobian: Arc<FieldJacFn>) -> Self {
        KillingField {
            name: name.into(),
            components,
            jacobian,
        }
    }

    /// Constant coordinate vector field `∂_axis`.
    pub fn coordinate_axis(name: impl Into<String>, axis: usize) -> Self {
        KillingField::new(
            name,
            Arc::new(move |_: &V4| {
                let mut v = [0.0; 4];
                v[axis] = 1.0;
                v
            }),
            Arc::new(|_: &V4| [[0.0; 4]; 4]),
        )
    }

    /// Rotation field `−x_b ∂_a + x_a ∂_b` (single plane, unit rate).
    pub fn plane_rotation(name: impl Into<String>, a: usize, b: usize) -> Self {
        KillingField::new(
            name,
            Arc::new(move |x: &V4| {
                let mut v = [0.0; 4];
                v[a] = -x[b];
                v[b] = x[a];
                v
            }),
            Arc::new(move |_: &V4| {
                let mut j = [[0.0; 4]; 4];
                j[b][a] = -1.0;
                j[a][b] = 1.0;
                j
            }),
        )
    }

    /// Sum of equal-rate rotations in the (0,1) and (2,3) planes.
    pub fn two_plane_rotation(name: impl Into<String>) -> Self {
        KillingField::new(
            name,
            Arc::new(|x: &V4| [-x[1], x[0], -x[3], x[2]]),
            Arc::new(|_: &V4| {
                let mut j = [[0.0; 4]; 4];
                j[1][0] = -1.0;
                j[0][1] = 1.0;
                j[3][2] = -1.0;
                j[2][3] = 1.0;
                j
            }),
        )
    }

    pub fn at(&self, coords: &V4) -> V4 {
        (self.components)(coords)
    }

    pub fn jac_at(&self, coords: &V4) -> M4 {
        (self.jacobian)(coords)
    }

    /// The field scaled by a nonzero constant.
    pub fn scaled(&self, c: f64) -> KillingField {
        let comp = self.components.clone();
        let jac = self.jacobian.clone();
        KillingField::new(
            format!("{}*{}", self.name, c),
            Arc::new(move |x: &V4| linalg::scale(&comp(x), c)),
            Arc::new(move |x: &V4| {
                let j = jac(x);
                linalg::tensor2(|i, k| c * j[i][k])
            }),
        )
    }
}

/// Pointwise Killing-field data in both coordinate and frame components.
#[derive(Clone, Debug)]
pub struct KillingData {
    pub dim: usize,
    /// Contravariant components in coordinates.
    pub x: V4,
    /// `X♭` in coordinates.
    pub x_flat: V4,
    pub norm_sq: f64,
    pub norm: f64,
    /// `∇X` as a (0,2) tensor in coordinates: `nabla_x[i][j] = ⟨∇_i X, ∂_j⟩`.
    pub nabla_x: M4,
    /// `dX♭ = ∇X − (∇X)ᵀ` in coordinates (equals `2·nabla_x` for Killing fields).
    pub dx_flat: M4,
    /// Frame components of the field (equal to `X♭` frame components).
    pub x_frame: V4,
    /// `∇X` tensor in frame components.
    pub nabla_x_frame: M4,
    pub dx_flat_frame: M4,
    /// Residual of the Killing equation, `|sym ∇X| = ½|L_X g|`.
    pub residual: f64,
}

/// Assemble Killing data at a point from already-computed curvature data.
pub fn killing_data(field: &KillingField, curv: &CurvatureData) -> KillingData {
    let jet = &curv.jet;
    let n = jet.dim;
    let coords_x = field.at(&jet.coords);
    let jac = field.jac_at(&jet.coords);
    let x_flat = linalg::tensor1(|j| linalg::sum(n, |k| jet.g[j][k] * coords_x[k]));
    let norm_sq = linalg::dot(n, &coords_x, &x_flat);
    // ∇_i X^k = ∂_i X^k + Γ^k_{im} X^m, lowered on the value index.
    let nabla_x = linalg::tensor2(|i, j| {
        if i >= n || j >= n {
            return 0.0;
        }
        linalg::sum(n, |k| {
            jet.g[j][k] * (jac[i][k] + linalg::sum(n, |m| curv.gamma[k][i][m] * coords_x[m]))
        })
    });
    let dx_flat = linalg::tensor2(|i, j| nabla_x[i][j] - nabla_x[j][i]);
    let frame = &curv.frame;
    let x_frame = frame.vector_to_frame(&coords_x);
    let nabla_x_frame = frame.cov2_to_frame(&nabla_x);
    let dx_flat_frame = linalg::tensor2(|a, b| nabla_x_frame[a][b] - nabla_x_frame[b][a]);
    let sym = linalg::tensor2(|a, b| 0.5 * (nabla_x_frame[a][b] + nabla_x_frame[b][a]));
    let residual = linalg::sum2(n, |a, b| sym[a][b] * sym[a][b]).sqrt();
    KillingData {
        dim: n,
        x: coords_x,
        x_flat,
        norm_sq,
        norm: norm_sq.max(0.0).sqrt(),
        nabla_x,
        dx_flat,
        x_frame,
        nabla_x_frame,
        dx_flat_frame,
        residual,
    }
}

/// Killing-equation residual `|sym ∇X| = ½|L_X g|` at a point.
pub fn killing_residual(metric: &MetricChart, field: &KillingField, p: &ChartPoint) -> Result<f64> {
    let curv = crate::curvature::riemann(metric, p)?;
    Ok(killing_data(field, &curv).residual)
}

/// Guard against evaluation on (or too near) the null set of `X`.
pub fn null_set_guard(kd: &KillingData, chart: &MetricChart, coords: &V4, eps_null: f64) -> Result<()> {
    let guard = eps_null * chart.coord_scale;
    if kd.norm <= guard {
        return Err(GeomError::NullSetProximity {
            coords: coords[..chart.dim].to_vec(),
            norm: kd.norm,
            guard,
        });
    }
    Ok(())
}

/// Default null-set guard threshold (relative to chart scale).
pub const EPS_NULL: f64 = 1e-6;
