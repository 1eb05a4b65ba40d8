//! Flat charts: Euclidean ℝ⁴ and ℝ², plus round-sphere charts used as
//! constant-curvature fixtures by the probe tests.

use crate::chart::{DomainBox, MetricChart};
use crate::linalg::{tensor2, M4, T3, T4, V4};
use std::f64::consts::PI;
use std::sync::Arc;

pub fn flat_r4_chart(half_width: f64) -> MetricChart {
    let g = |_: &V4| -> M4 { tensor2(|i, j| if i == j { 1.0 } else { 0.0 }) };
    MetricChart::new(
        "flat-r4",
        4,
        DomainBox::new(4, [-half_width; 4], [half_width; 4]),
        Arc::new(g),
    )
    .with_exact_derivatives(
        Arc::new(|_: &V4| -> T3 { [[[0.0; 4]; 4]; 4] }),
        Arc::new(|_: &V4| -> T4 { [[[[0.0; 4]; 4]; 4]; 4] }),
    )
}

pub fn flat_r2_chart(half_width: f64) -> MetricChart {
    let g = |_: &V4| -> M4 { tensor2(|i, j| if i == j { 1.0 } else { 0.0 }) };
    MetricChart::new(
        "flat-r2",
        2,
        DomainBox::new(2, [-half_width, -half_width, 0.0, 0.0], [half_width, half_width, 0.0, 0.0]),
        Arc::new(g),
    )
    .with_exact_derivatives(
        Arc::new(|_: &V4| -> T3 { [[[0.0; 4]; 4]; 4] }),
        Arc::new(|_: &V4| -> T4 { [[[[0.0; 4]; 4]; 4]; 4] }),
    )
}

/// Round 2-sphere of radius `rho`, chart coordinates (θ, φ).
pub fn two_sphere_chart(rho: f64) -> MetricChart {
    let r2 = rho * rho;
    let g = move |x: &V4| -> M4 {
        let s = x[0].sin();
        tensor2(|i, j| match (i, j) {
            (0, 0) => r2,
            (1, 1) => r2 * s * s,
            _ => {
                if i == j {
                    1.0
                } else {
                    0.0
                }
            }
        })
    };
    let dg = move |x: &V4| -> T3 {
        let mut out = [[[0.0; 4]; 4]; 4];
        out[0][1][1] = r2 * (2.0 * x[0]).sin();
        out
    };
    let d2g = move |x: &V4| -> T4 {
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        out[0][0][1][1] = 2.0 * r2 * (2.0 * x[0]).cos();
        out
    };
    MetricChart::new(
        "two-sphere",
        2,
        DomainBox::new(2, [1e-3, -10.0 * PI, 0.0, 0.0], [PI - 1e-3, 10.0 * PI, 0.0, 0.0]),
        Arc::new(g),
    )
    .with_exact_derivatives(Arc::new(dg), Arc::new(d2g))
}

/// Round 4-sphere of radius `rho` in nested polar coordinates.
pub fn four_sphere_chart(rho: f64) -> MetricChart {
    let r2 = rho * rho;
    let g = move |x: &V4| -> M4 {
        let u0 = x[0].sin().powi(2);
        let u1 = x[1].sin().powi(2);
        let u2 = x[2].sin().powi(2);
        tensor2(|i, j| {
            if i != j {
                return 0.0;
            }
            match i {
                0 => r2,
                1 => r2 * u0,
                2 => r2 * u0 * u1,
                _ => r2 * u0 * u1 * u2,
            }
        })
    };
    let dg = move |x: &V4| -> T3 {
        let u = [x[0].sin().powi(2), x[1].sin().powi(2), x[2].sin().powi(2)];
        let du = [(2.0 * x[0]).sin(), (2.0 * x[1]).sin(), (2.0 * x[2]).sin()];
        let mut out = [[[0.0; 4]; 4]; 4];
        out[0][1][1] = r2 * du[0];
        out[0][2][2] = r2 * du[0] * u[1];
        out[1][2][2] = r2 * u[0] * du[1];
        out[0][3][3] = r2 * du[0] * u[1] * u[2];
        out[1][3][3] = r2 * u[0] * du[1] * u[2];
        out[2][3][3] = r2 * u[0] * u[1] * du[2];
        out
    };
    let d2g = move |x: &V4| -> T4 {
        let u = [x[0].sin().powi(2), x[1].sin().powi(2), x[2].sin().powi(2)];
        let du = [(2.0 * x[0]).sin(), (2.0 * x[1]).sin(), (2.0 * x[2]).sin()];
        let ddu = [
            2.0 * (2.0 * x[0]).cos(),
            2.0 * (2.0 * x[1]).cos(),
            2.0 * (2.0 * x[2]).cos(),
        ];
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        out[0][0][1][1] = r2 * ddu[0];
        out[0][0][2][2] = r2 * ddu[0] * u[1];
        out[1][1][2][2] = r2 * u[0] * ddu[1];
        out[0][1][2][2] = r2 * du[0] * du[1];
        out[1][0][2][2] = out[0][1][2][2];
        out[0][0][3][3] = r2 * ddu[0] * u[1] * u[2];
        out[1][1][3][3] = r2 * u[0] * ddu[1] * u[2];
        out[2][2][3][3] = r2 * u[0] * u[1] * ddu[2];
        out[0][1][3][3] = r2 * du[0] * du[1] * u[2];
        out[1][0][3][3] = out[0][1][3][3];
        out[0][2][3][3] = r2 * du[0] * u[1] * du[2];
        out[2][0][3][3] = out[0][2][3][3];
        out[1][2][3][3] = r2 * u[0] * du[1] * du[2];
        out[2][1][3][3] = out[1][2][3][3];
        out
    };
    MetricChart::new(
        "four-sphere",
        4,
        DomainBox::new(
            4,
            [0.3, 0.3, 0.3, -10.0 * PI],
            [PI - 0.3, PI - 0.3, PI - 0.3, 10.0 * PI],
        ),
        Arc::new(g),
    )
    .with_exact_derivatives(Arc::new(dg), Arc::new(d2g))
}
