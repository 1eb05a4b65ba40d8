//! Taub–NUT metric in Gibbons–Hawking form,
//! `ds² = V (dρ² + ρ²dθ² + ρ²sin²θ dφ²) + V⁻¹ (dτ + 2m cosθ dφ)²`,
//! `V = 1 + 2m/ρ`, coordinates `(ρ, θ, φ, τ)` with `τ ∈ (0, 8πm)`.
//!
//! The Killing field is `∂_τ`; `|X|² = V⁻¹ → 0` at the nut `ρ = 0`.

use crate::chart::{DomainBox, MetricChart};
use crate::linalg::{M4, T3, T4, V4};
use std::f64::consts::PI;
use std::sync::Arc;

struct Tn {
    m: f64,
}

impl Tn {
    fn v(&self, rho: f64) -> f64 {
        1.0 + 2.0 * self.m / rho
    }
    fn vp(&self, rho: f64) -> f64 {
        -2.0 * self.m / (rho * rho)
    }
    fn vpp(&self, rho: f64) -> f64 {
        4.0 * self.m / (rho * rho * rho)
    }

    fn g(&self, x: &V4) -> M4 {
        let (rho, th) = (x[0], x[1]);
        let v = self.v(rho);
        let (s, c) = th.sin_cos();
        let m = self.m;
        let mut g = [[0.0; 4]; 4];
        g[0][0] = v;
        g[1][1] = v * rho * rho;
        g[2][2] = v * rho * rho * s * s + 4.0 * m * m * c * c / v;
        g[3][3] = 1.0 / v;
        g[2][3] = 2.0 * m * c / v;
        g[3][2] = g[2][3];
        g
    }

    fn dg(&self, x: &V4) -> T3 {
        let (rho, th) = (x[0], x[1]);
        let v = self.v(rho);
        let vp = self.vp(rho);
        let (s, c) = th.sin_cos();
        let m = self.m;
        // d(Vρ²)/dρ = 2ρ + 2m, d(1/V)/dρ = −V'/V².
        let dinv = -vp / (v * v);
        let mut out = [[[0.0; 4]; 4]; 4];
        out[0][0][0] = vp;
        out[0][1][1] = 2.0 * rho + 2.0 * m;
        out[0][2][2] = (2.0 * rho + 2.0 * m) * s * s + 4.0 * m * m * c * c * dinv;
        out[0][3][3] = dinv;
        out[0][2][3] = 2.0 * m * c * dinv;
        out[0][3][2] = out[0][2][3];
        out[1][2][2] = 2.0 * s * c * (v * rho * rho - 4.0 * m * m / v);
        out[1][2][3] = -2.0 * m * s / v;
        out[1][3][2] = out[1][2][3];
        out
    }

    fn d2g(&self, x: &V4) -> T4 {
        let (rho, th) = (x[0], x[1]);
        let v = self.v(rho);
        let vp = self.vp(rho);
        let vpp = self.vpp(rho);
        let (s, c) = th.sin_cos();
        let m = self.m;
        let dinv = -vp / (v * v);
        let ddinv = -vpp / (v * v) + 2.0 * vp * vp / (v * v * v);
        let cos2 = c * c - s * s;
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        out[0][0][0][0] = vpp;
        out[0][0][1][1] = 2.0;
        out[0][0][2][2] = 2.0 * s * s + 4.0 * m * m * c * c * ddinv;
        out[0][0][3][3] = ddinv;
        out[0][0][2][3] = 2.0 * m * c * ddinv;
        out[0][0][3][2] = out[0][0][2][3];
        out[1][1][2][2] = 2.0 * cos2 * (v * rho * rho - 4.0 * m * m / v);
        out[1][1][2][3] = -2.0 * m * c / v;
        out[1][1][3][2] = out[1][1][2][3];
        out[0][1][2][2] = 2.0 * s * c * ((2.0 * rho + 2.0 * m) - 4.0 * m * m * dinv);
        out[0][1][2][3] = -2.0 * m * s * dinv;
        out[0][1][3][2] = out[0][1][2][3];
        out[1][0][2][2] = out[0][1][2][2];
        out[1][0][2][3] = out[0][1][2][3];
        out[1][0][3][2] = out[0][1][3][2];
        out
    }
}

/// Full-contraction `|Rm|²` of the Taub–NUT metric, `96 m²/(ρ+2m)⁶`; its
/// radial integral gives the total energy `8π²` in closed form.
pub fn tn_norm_rm_sq(m: f64, rho: f64) -> f64 {
    96.0 * m * m / (rho + 2.0 * m).powi(6)
}

pub fn taub_nut_chart(m: f64) -> MetricChart {
    let t1 = Tn { m };
    let t2 = Tn { m };
    let t3 = Tn { m };
    MetricChart::new(
        "taub-nut",
        4,
        DomainBox::new(
            4,
            [1e-9 * m, 1e-6, 1e-6, 1e-6],
            [4000.0 * m, PI - 1e-6, 2.0 * PI - 1e-6, 8.0 * PI * m - 1e-6],
        ),
        Arc::new(move |x: &V4| t1.g(x)),
    )
    .with_exact_derivatives(
        Arc::new(move |x: &V4| t2.dg(x)),
        Arc::new(move |x: &V4| t3.d2g(x)),
    )
    .with_coord_scale(m)
}
