use thiserror::Error;

/// Errors raised by chart evaluation, curvature computation and the probes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("point {coords:?} lies outside the domain of chart `{chart}` (margin {margin})")]
    OutsideDomain {
        chart: String,
        coords: Vec<f64>,
        margin: f64,
    },

    #[error("metric matrix is not invertible at {coords:?} (pivot {pivot:.3e})")]
    DegenerateMetric { coords: Vec<f64>, pivot: f64 },

    #[error("metric is not positive definite at {coords:?}")]
    NotPositiveDefinite { coords: Vec<f64> },

    #[error("curvature symmetry residual {residual:.3e} exceeds tolerance {tol:.3e} (bad derivatives?)")]
    SymmetryResidual { residual: f64, tol: f64 },

    #[error("Killing field norm {norm:.3e} below null-set guard {guard:.3e} at {coords:?}")]
    NullSetProximity {
        coords: Vec<f64>,
        norm: f64,
        guard: f64,
    },

    #[error("orthonormal frame is degenerate (Gram residual {residual:.3e})")]
    DegenerateFrame { residual: f64 },

    #[error("radial profile covers geodesic radius up to {max:.3} but {requested:.3} was requested")]
    ProfileRangeExceeded { requested: f64, max: f64 },

    #[error("level set at geodesic radius {radius:.3} touches the null set of the Killing field")]
    LevelSetOnNullSet { radius: f64 },

    #[error("ball sampler exhausted chart domain before reaching radius {radius:.3}")]
    SamplerExhausted { radius: f64 },

    #[error("degenerate interval: inner {inner} must be positive and below outer {outer}")]
    DegenerateInterval { inner: f64, outer: f64 },

    #[error("unknown catalog metric `{0}`")]
    UnknownMetric(String),

    #[error("invalid parameter for `{name}`: {detail}")]
    InvalidParameter { name: String, detail: String },

    #[error("extrapolation did not converge: {0}")]
    NonConvergent(String),

    #[error("{0}")]
    Invalid(String),
}
