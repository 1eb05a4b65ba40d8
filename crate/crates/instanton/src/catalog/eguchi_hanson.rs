//! Eguchi–Hanson metric in radial Euler-angle form,
//! `ds² = f⁻¹ dr² + (r²/4)(σ₁² + σ₂²) + (r²/4) f σ₃²` with `f = 1 − (a/r)⁴`,
//! coordinates `(r, θ, φ, ψ)` and `σ₃ = dψ + cosθ dφ`, `ψ ∈ (0, 2π)`.
//!
//! The Killing field is `∂_ψ`; its zero set is the bolt 2-sphere at `r = a`.
//! In the frame adapted to the coordinate orientation the curvature is
//! self-dual with `|Rm|² = 384 a⁸/r¹²` (full contraction).

use crate::chart::{DomainBox, MetricChart};
use crate::linalg::{M4, T3, T4, V4};
use std::f64::consts::PI;
use std::sync::Arc;

struct Eh {
    a4: f64,
}

impl Eh {
    fn f(&self, r: f64) -> f64 {
        1.0 - self.a4 / r.powi(4)
    }
    fn fp(&self, r: f64) -> f64 {
        4.0 * self.a4 / r.powi(5)
    }
    fn fpp(&self, r: f64) -> f64 {
        -20.0 * self.a4 / r.powi(6)
    }

    fn g(&self, x: &V4) -> M4 {
        let (r, th) = (x[0], x[1]);
        let f = self.f(r);
        let (s, c) = th.sin_cos();
        let q = r * r / 4.0;
        let mut g = [[0.0; 4]; 4];
        g[0][0] = 1.0 / f;
        g[1][1] = q;
        g[2][2] = q * (s * s + f * c * c);
        g[3][3] = q * f;
        g[2][3] = q * f * c;
        g[3][2] = g[2][3];
        g
    }

    fn dg(&self, x: &V4) -> T3 {
        let (r, th) = (x[0], x[1]);
        let f = self.f(r);
        let fp = self.fp(r);
        let (s, c) = th.sin_cos();
        let q = r * r / 4.0;
        let dq = r / 2.0;
        let mut out = [[[0.0; 4]; 4]; 4];
        // ∂_r
        out[0][0][0] = -fp / (f * f);
        out[0][1][1] = dq;
        out[0][2][2] = dq * (s * s + f * c * c) + q * fp * c * c;
        out[0][3][3] = dq * f + q * fp;
        out[0][2][3] = (dq * f + q * fp) * c;
        out[0][3][2] = out[0][2][3];
        // ∂_θ
        out[1][2][2] = 2.0 * s * c * (q - q * f);
        out[1][2][3] = -q * f * s;
        out[1][3][2] = out[1][2][3];
        out
    }

    fn d2g(&self, x: &V4) -> T4 {
        let (r, th) = (x[0], x[1]);
        let f = self.f(r);
        let fp = self.fp(r);
        let fpp = self.fpp(r);
        let (s, c) = th.sin_cos();
        let q = r * r / 4.0;
        let dq = r / 2.0;
        let ddq = 0.5;
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        // ∂_r ∂_r
        out[0][0][0][0] = -fpp / (f * f) + 2.0 * fp * fp / (f * f * f);
        out[0][0][1][1] = ddq;
        out[0][0][2][2] = ddq * (s * s + f * c * c) + 2.0 * dq * fp * c * c + q * fpp * c * c;
        out[0][0][3][3] = ddq * f + 2.0 * dq * fp + q * fpp;
        out[0][0][2][3] = (ddq * f + 2.0 * dq * fp + q * fpp) * c;
        out[0][0][3][2] = out[0][0][2][3];
        // ∂_θ ∂_θ
        let cos2 = c * c - s * s;
        out[1][1][2][2] = 2.0 * cos2 * (q - q * f);
        out[1][1][2][3] = -q * f * c;
        out[1][1][3][2] = out[1][1][2][3];
        // ∂_r ∂_θ
        out[0][1][2][2] = 2.0 * s * c * (dq - dq * f - q * fp);
        out[0][1][2][3] = -(dq * f + q * fp) * s;
        out[0][1][3][2] = out[0][1][2][3];
        out[1][0][2][2] = out[0][1][2][2];
        out[1][0][2][3] = out[0][1][2][3];
        out[1][0][3][2] = out[0][1][3][2];
        out
    }
}

pub fn eguchi_hanson_chart(a: f64) -> MetricChart {
    let eh = Eh { a4: a.powi(4) };
    let eh2 = Eh { a4: a.powi(4) };
    let eh3 = Eh { a4: a.powi(4) };
    MetricChart::new(
        "eguchi-hanson",
        4,
        DomainBox::new(
            4,
            [a * (1.0 + 1e-9), 1e-6, 1e-6, 1e-6],
            [4000.0 * a, PI - 1e-6, 2.0 * PI - 1e-6, 2.0 * PI - 1e-6],
        ),
        Arc::new(move |x: &V4| eh.g(x)),
    )
    .with_exact_derivatives(
        Arc::new(move |x: &V4| eh2.dg(x)),
        Arc::new(move |x: &V4| eh3.d2g(x)),
    )
    .with_coord_scale(a)
}

/// Full-contraction `|Rm|²` of the Eguchi–Hanson metric, `384 a⁸ / r¹²`;
/// derived by a Cartan-frame computation and used as a curvature oracle.
pub fn eh_norm_rm_sq(a: f64, r: f64) -> f64 {
    384.0 * a.powi(8) / r.powi(12)
}
