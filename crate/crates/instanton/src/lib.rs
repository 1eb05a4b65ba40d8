//! Numerical verification toolkit for curvature energy identities on
//! Ricci-flat 4-manifolds carrying a Killing field.
//!
//! The library computes curvature data from explicit metric charts, builds the
//! Killing-field transgression of the Chern–Gauss–Bonnet and Pontryagin forms,
//! and checks the resulting energy identities on a catalog of gravitational
//! instantons (Eguchi–Hanson, Taub–NUT) and flat model spaces at desk scale.
//!
//! Conventions used throughout (fixed once, validated by the test suite):
//!
//! * Riemann tensor `R^l_{kij} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ Γ − Γ Γ`,
//!   lowered as `R_{lkij} = g_{lm} R^m_{kij}`; the round sphere has positive
//!   sectional curvature.
//! * Tensor norms are full metric contractions: `|Rm|² = R_{ijkl} R^{ijkl}`.
//!   The *energy density* integrated by the quadrature and theorem drivers is
//!   the pair-normalized `¼ R_{ijkl} R^{ijkl}`, which for Ricci-flat metrics
//!   equals the Gauss–Bonnet integrand `8π² P_χ / dVol`.
//! * Exterior algebra uses the determinant (shuffle) convention, so that
//!   `dX♭(A,B) = 2⟨∇_A X, B⟩` for a Killing field `X`.
//! * `dVol = o · √(det g) dx⁰∧…∧dxⁿ⁻¹` with chart-declared orientation `o`.

// Index loops over small fixed-size tensors are the house style here; the
// iterator rewrites clippy suggests obscure the index bookkeeping.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod chart;
pub mod curvature;
pub mod error;
pub mod killing;
pub(crate) mod linalg;
pub mod par;
pub mod probes;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod theorems;
pub mod transgression;
pub mod twoform;

pub use chart::{ChartPoint, DomainBox, MetricChart, MetricJet};
pub use curvature::{characteristic_densities, christoffel, riemann, CurvatureData};
pub use error::GeomError;
pub use killing::{killing_residual, KillingData, KillingField};
pub use probes::{ProbeConfig, ProbeResult};
pub use quadrature::{CutoffProfile, RadialProfile};
pub use transgression::{ConnectionDeformation, Transgression3Form, TransgressionKind};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, GeomError>;
