//! Curvature computation by differentiation of metric components, the
//! orthogonal decomposition of the curvature tensor, and characteristic
//! densities.
//!
//! Sign conventions: `R^l_{kij} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^l_{im}Γ^m_{jk}
//! − Γ^l_{jm}Γ^m_{ik}`, lowered on the first index. With these signs the round
//! sphere has positive sectional curvature. Norms are full metric
//! contractions; `energy_density` is the pair-normalized `¼|Rm|²` that the
//! quadrature and theorem drivers integrate.

use crate::chart::{ChartPoint, MetricChart, MetricJet};
use crate::error::GeomError;
use crate::linalg::{self, M4, T3, T4};
use crate::twoform::{self, So4, TwoFormAlgebra, PAIRS};
use crate::Result;
use std::f64::consts::PI;

/// Christoffel symbols `Γ^k_{ij}` (`gamma[k][i][j]`, symmetric in `i,j`).
pub fn christoffel(metric: &MetricChart, p: &ChartPoint) -> Result<T3> {
    let jet = metric.jet(p)?;
    Ok(christoffel_from_jet(&jet))
}

pub fn christoffel_from_jet(jet: &MetricJet) -> T3 {
    let n = jet.dim;
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                gamma[k][i][j] = 0.5
                    * linalg::sum(n, |l| {
                        jet.ginv[k][l] * (jet.dg[i][j][l] + jet.dg[j][i][l] - jet.dg[l][i][j])
                    });
            }
        }
    }
    gamma
}

/// Curvature data at a point: Christoffel symbols, lowered Riemann tensor,
/// Ricci, scalar, trace-free Ricci, Weyl with its self-dual split, and norms.
#[derive(Clone, Debug)]
pub struct CurvatureData {
    pub dim: usize,
    pub jet: MetricJet,
    /// `Γ^k_{ij}`
    pub gamma: T3,
    /// Fully lowered `R_{ijkl}` in coordinates (first pair `ij`, second `kl`).
    pub riemann: T4,
    pub ricci: M4,
    pub scalar: f64,
    pub ricci_tracefree: M4,
    /// Orthonormal frame used for the Λ² decomposition.
    pub frame: TwoFormAlgebra,
    /// Frame components of the lowered Riemann tensor.
    pub riemann_frame: T4,
    /// Frame components of the Weyl tensor (dim 4 only, zero otherwise).
    pub weyl_frame: T4,
    /// Weyl operator blocks on Λ⁺ and Λ⁻ as 6×6 matrices in the pair basis.
    pub weyl_plus: [[f64; 6]; 6],
    pub weyl_minus: [[f64; 6]; 6],
    /// Full-contraction norms.
    pub norm_rm_sq: f64,
    pub norm_ricci_sq: f64,
    pub norm_ricci_tracefree_sq: f64,
    pub norm_weyl_sq: f64,
    pub norm_weyl_plus_sq: f64,
    pub norm_weyl_minus_sq: f64,
}

impl CurvatureData {
    /// Pair-normalized energy density `¼ R_{ijkl}R^{ijkl}`; for Ricci-flat
    /// metrics this is the Gauss–Bonnet integrand `8π² P_χ / dVol`.
    pub fn energy_density(&self) -> f64 {
        0.25 * self.norm_rm_sq
    }

    /// Pointwise curvature magnitude used by the probes, `√(¼|Rm|²)`.
    pub fn rm_norm(&self) -> f64 {
        self.energy_density().sqrt()
    }

    /// First Bianchi residual `max |R_{i[jkl]}|`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let b = self.riemann[i][j][k][l]
                            + self.riemann[i][k][l][j]
                            + self.riemann[i][l][j][k];
                        worst = worst.max(b.abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of pair antisymmetry / pair symmetry.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.dim;
        let r = &self.riemann;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((r[i][j][k][l] + r[j][i][k][l]).abs());
                        worst = worst.max((r[i][j][k][l] + r[i][j][l][k]).abs());
                        worst = worst.max((r[i][j][k][l] - r[k][l][i][j]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Residual of `|Rm|² = R²/6 + 2|Ric°|² + |W|²` (dimension 4).
    pub fn decomposition_residual(&self) -> f64 {
        let rhs = self.scalar * self.scalar / 6.0
            + 2.0 * self.norm_ricci_tracefree_sq
            + self.norm_weyl_sq;
        (self.norm_rm_sq - rhs).abs() / self.norm_rm_sq.max(1.0)
    }

    /// Curvature 2-form of the pair `(u,v)` of frame indices, as an 𝔰𝔬(4)
    /// element in frame components: `[F(e_a,e_b)]_cd = R_cdab`.
    pub fn curvature_form(&self, a: usize, b: usize) -> So4 {
        linalg::tensor2(|c, d| self.riemann_frame[c][d][a][b])
    }

    /// Curvature 2-form contracted with frame vectors `u, v`.
    pub fn curvature_form_vec(&self, u: &[f64; 4], v: &[f64; 4]) -> So4 {
        linalg::tensor2(|c, d| {
            linalg::sum2(4, |a, b| self.riemann_frame[c][d][a][b] * u[a] * v[b])
        })
    }
}

/// Compute the full curvature data at a point.
pub fn riemann(metric: &MetricChart, p: &ChartPoint) -> Result<CurvatureData> {
    let jet = metric.jet(p)?;
    riemann_from_jet(&jet)
}

pub fn riemann_from_jet(jet: &MetricJet) -> Result<CurvatureData> {
    let n = jet.dim;
    let gamma = christoffel_from_jet(jet);

    // ∂(g^{-1}) = −g^{-1} ∂g g^{-1}
    let dginv = linalg::tensor3(|k, i, j| {
        -linalg::sum2(n, |a, b| jet.ginv[i][a] * jet.dg[k][a][b] * jet.ginv[b][j])
    });

    // ∂_i Γ^l_{jk}
    let dgamma = linalg::tensor4(|i, l, j, k| {
        if i >= n || l >= n || j >= n || k >= n {
            return 0.0;
        }
        0.5 * linalg::sum(n, |m| {
            dginv[i][l][m] * (jet.dg[j][k][m] + jet.dg[k][j][m] - jet.dg[m][j][k])
                + jet.ginv[l][m]
                    * (jet.d2g[i][j][k][m] + jet.d2g[i][k][j][m] - jet.d2g[i][m][j][k])
        })
    });

    // R^l_{kij}
    let riem_up = linalg::tensor4(|l, k, i, j| {
        if l >= n || k >= n || i >= n || j >= n {
            return 0.0;
        }
        dgamma[i][l][j][k] - dgamma[j][l][i][k]
            + linalg::sum(n, |m| {
                gamma[l][i][m] * gamma[m][j][k] - gamma[l][j][m] * gamma[m][i][k]
            })
    });

    let riemann = linalg::tensor4(|i, j, k, l| {
        linalg::sum(n, |m| jet.g[i][m] * riem_up[m][j][k][l])
    });

    let ricci = linalg::tensor2(|k, j| {
        if k >= n || j >= n {
            0.0
        } else {
            linalg::sum(n, |i| riem_up[i][k][i][j])
        }
    });
    let scalar = linalg::sum2(n, |k, j| jet.ginv[k][j] * ricci[k][j]);
    let ricci_tracefree = linalg::tensor2(|i, j| {
        if i >= n || j >= n {
            0.0
        } else {
            ricci[i][j] - scalar / n as f64 * jet.g[i][j]
        }
    });

    let frame = TwoFormAlgebra::gram_schmidt(jet)?;
    let fr = &frame.frame;
    let riemann_frame = linalg::tensor4(|a, b, c, d| {
        linalg::sum4(n, |i, j, k, l| {
            riemann[i][j][k][l] * fr[a][i] * fr[b][j] * fr[c][k] * fr[d][l]
        })
    });
    let ricci_frame = frame.cov2_to_frame(&ricci);
    let ric0_frame = frame.cov2_to_frame(&ricci_tracefree);

    let norm_rm_sq = linalg::sum4(n, |a, b, c, d| riemann_frame[a][b][c][d].powi(2));
    let norm_ricci_sq = linalg::sum2(n, |a, b| ricci_frame[a][b].powi(2));
    let norm_ricci_tracefree_sq = linalg::sum2(n, |a, b| ric0_frame[a][b].powi(2));

    // Weyl decomposition only in dimension 4.
    let (weyl_frame, weyl_plus, weyl_minus, w2, wp2, wm2) = if n == 4 {
        let weyl_frame = linalg::tensor4(|a, b, c, d| {
            let delta = |p: usize, q: usize| if p == q { 1.0 } else { 0.0 };
            let kn_ric = ric0_frame[a][c] * delta(b, d) + ric0_frame[b][d] * delta(a, c)
                - ric0_frame[a][d] * delta(b, c)
                - ric0_frame[b][c] * delta(a, d);
            let kn_g = 2.0 * (delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c));
            riemann_frame[a][b][c][d] - 0.5 * kn_ric - scalar / 24.0 * kn_g
        });
        // 6×6 pair-basis operator of the Weyl tensor.
        let wop: [[f64; 6]; 6] = std::array::from_fn(|ii| {
            std::array::from_fn(|jj| {
                let (a, b) = PAIRS[ii];
                let (c, d) = PAIRS[jj];
                weyl_frame[a][b][c][d]
            })
        });
        // Projectors P± = ½(1 ± S) with S the dual-pair swap.
        let swap = |v: usize| (v + 3) % 6;
        let mut wp = [[0.0; 6]; 6];
        let mut wm = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let s_i = swap(i);
                let s_j = swap(j);
                wp[i][j] =
                    0.25 * (wop[i][j] + wop[s_i][j] + wop[i][s_j] + wop[s_i][s_j]);
                wm[i][j] =
                    0.25 * (wop[i][j] - wop[s_i][j] - wop[i][s_j] + wop[s_i][s_j]);
            }
        }
        let frob = |m: &[[f64; 6]; 6]| -> f64 {
            m.iter().flatten().map(|x| x * x).sum::<f64>()
        };
        // Full-contraction norms: |W|² = 4·Σ_{IJ} W_IJ².
        let w2 = 4.0 * frob(&wop);
        let wp2 = 4.0 * frob(&wp);
        let wm2 = 4.0 * frob(&wm);
        (weyl_frame, wp, wm, w2, wp2, wm2)
    } else {
        (
            [[[[0.0; 4]; 4]; 4]; 4],
            [[0.0; 6]; 6],
            [[0.0; 6]; 6],
            0.0,
            0.0,
            0.0,
        )
    };

    let data = CurvatureData {
        dim: n,
        jet: jet.clone(),
        gamma,
        riemann,
        ricci,
        scalar,
        ricci_tracefree,
        frame,
        riemann_frame,
        weyl_frame,
        weyl_plus,
        weyl_minus,
        norm_rm_sq,
        norm_ricci_sq,
        norm_ricci_tracefree_sq,
        norm_weyl_sq: w2,
        norm_weyl_plus_sq: wp2,
        norm_weyl_minus_sq: wm2,
    };

    let tol = 1e-6 * (1.0 + norm_rm_sq);
    let sym = data.symmetry_residual();
    if sym > tol {
        return Err(GeomError::SymmetryResidual { residual: sym, tol });
    }
    Ok(data)
}

/// Euler and Pontryagin densities (coefficients of `dVol`):
/// `euler = (R²/24 − ½|Ric°|² + ¼|W|²) / 8π²`,
/// `pontryagin = (|W⁺|² − |W⁻|²) / 48π²`.
pub fn characteristic_densities(c: &CurvatureData) -> (f64, f64) {
    let euler = (c.scalar * c.scalar / 24.0 - 0.5 * c.norm_ricci_tracefree_sq
        + 0.25 * c.norm_weyl_sq)
        / (8.0 * PI * PI);
    let pontryagin = (c.norm_weyl_plus_sq - c.norm_weyl_minus_sq) / (48.0 * PI * PI);
    (euler, pontryagin)
}

/// Euler density evaluated through the invariant polynomial
/// `P_χ(F,F)` with `P_χ(h₁,h₂) = ⟨h₁, *h₂⟩ / 8π²`; an independent route used
/// to certify [`characteristic_densities`].
pub fn euler_density_via_polynomial(c: &CurvatureData) -> f64 {
    let f: Vec<So4> = (0..6)
        .map(|j| {
            let (a, b) = PAIRS[j];
            c.curvature_form(a, b)
        })
        .collect();
    // 𝒫(F,F)(e0,e1,e2,e3) = 2 Σ_dual-pairs ⟨F_I, *F_I*⟩ / 8π².
    let mut acc = 0.0;
    for i in 0..3 {
        acc += twoform::pair(&f[i], &twoform::star(&f[i + 3]));
    }
    2.0 * acc / (8.0 * PI * PI)
}

/// Pontryagin density through `P_τ(h₁,h₂) = ⟨h₁,h₂⟩ / 12π²`.
pub fn pontryagin_density_via_polynomial(c: &CurvatureData) -> f64 {
    let f: Vec<So4> = (0..6)
        .map(|j| {
            let (a, b) = PAIRS[j];
            c.curvature_form(a, b)
        })
        .collect();
    let mut acc = 0.0;
    for i in 0..3 {
        acc += twoform::pair(&f[i], &f[i + 3]);
    }
    2.0 * acc / (12.0 * PI * PI)
}

/// Metric compatibility residual `max |∇_k g_ij|` of the Christoffel symbols.
pub fn compatibility_residual(jet: &MetricJet, gamma: &T3) -> f64 {
    let n = jet.dim;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let nabla = jet.dg[k][i][j]
                    - linalg::sum(n, |m| {
                        gamma[m][k][i] * jet.g[m][j] + gamma[m][k][j] * jet.g[i][m]
                    });
                worst = worst.max(nabla.abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::chart::DomainBox;
    use std::sync::Arc;

    #[test]
    fn flat_space_has_zero_curvature() {
        let chart = catalog::flat_r4_chart(10.0);
        let p = chart.point([1.0, -2.0, 0.5, 3.0]);
        let gamma = christoffel(&chart, &p).unwrap();
        assert!(linalg::sum3(4, |k, i, j| gamma[k][i][j].abs()) < 1e-14);
        let c = riemann(&chart, &p).unwrap();
        assert!(c.norm_rm_sq < 1e-20);
        let (e, t) = characteristic_densities(&c);
        assert_eq!((e, t), (0.0, 0.0));
    }

    #[test]
    fn two_sphere_christoffel_matches_symbolic_oracle() {
        let chart = catalog::two_sphere_chart(1.0);
        let p = chart.point([PI / 3.0, 0.0, 0.0, 0.0]);
        let gamma = christoffel(&chart, &p).unwrap();
        let theta = PI / 3.0;
        // Γ^θ_{φφ} = −sinθ cosθ, Γ^φ_{θφ} = cotθ.
        assert!((gamma[0][1][1] - (-(theta.sin()) * theta.cos())).abs() < 1e-12);
        assert!((gamma[1][0][1] - theta.cos() / theta.sin()).abs() < 1e-12);
        let jet = chart.jet(&p).unwrap();
        assert!(compatibility_residual(&jet, &gamma) < 1e-12);
    }

    #[test]
    fn two_sphere_has_positive_sectional_curvature() {
        let chart = catalog::two_sphere_chart(1.0);
        let p = chart.point([PI / 3.0, 0.4, 0.0, 0.0]);
        let c = riemann(&chart, &p).unwrap();
        let theta: f64 = PI / 3.0;
        assert!((c.riemann[0][1][0][1] - theta.sin().powi(2)).abs() < 1e-10);
        assert!((c.scalar - 2.0).abs() < 1e-10);
        // Energy-normalized |Rm| = 1/ρ² = 1 on the unit sphere.
        assert!((c.rm_norm() - 1.0).abs() < 1e-10);
    }

    /// Round 4-sphere: Euler density must equal 6/(8π²)·(1/ρ⁴), both by the
    /// scalar decomposition and by the invariant polynomial.
    #[test]
    fn round_four_sphere_euler_density() {
        let chart = catalog::four_sphere_chart(1.0);
        let p = chart.point([1.1, 1.3, 0.7, 0.2]);
        let c = riemann(&chart, &p).unwrap();
        assert!((c.scalar - 12.0).abs() < 1e-8, "scalar = {}", c.scalar);
        assert!(c.norm_ricci_tracefree_sq < 1e-12);
        assert!(c.norm_weyl_sq < 1e-10);
        let (e, t) = characteristic_densities(&c);
        let expect = 6.0 / (8.0 * PI * PI);
        assert!((e - expect).abs() < 1e-10, "euler {e} vs {expect}");
        assert!(t.abs() < 1e-12);
        let e_poly = euler_density_via_polynomial(&c);
        assert!((e_poly - expect).abs() < 1e-10, "poly {e_poly} vs {expect}");
        let t_poly = pontryagin_density_via_polynomial(&c);
        assert!(t_poly.abs() < 1e-12);
    }

    /// The two routes to both densities agree on a generic (not conformally
    /// special) curved metric computed with the numeric fallback.
    #[test]
    fn density_routes_agree_on_generic_metric() {
        let g = |x: &crate::linalg::V4| -> crate::linalg::M4 {
            linalg::tensor2(|i, j| {
                let base = if i == j { 1.0 } else { 0.0 };
                base + 0.05
                    * ((x[i] + 0.3).sin() * (x[j] - 0.2).cos()
                        + (x[j] + 0.3).sin() * (x[i] - 0.2).cos())
                    + if i == j { 0.05 * (x[(i + 1) % 4] * 2.0).cos() } else { 0.0 }
            })
        };
        let chart = crate::chart::MetricChart::new(
            "generic",
            4,
            DomainBox::new(4, [-1.0; 4], [1.0; 4]),
            Arc::new(g),
        );
        let p = chart.point([0.2, -0.1, 0.3, 0.05]);
        let c = riemann(&chart, &p).unwrap();
        assert!(c.norm_rm_sq > 1e-4, "curvature should be nontrivial");
        let (e, t) = characteristic_densities(&c);
        let e_poly = euler_density_via_polynomial(&c);
        let t_poly = pontryagin_density_via_polynomial(&c);
        assert!((e - e_poly).abs() < 1e-8 * (1.0 + e.abs()), "{e} vs {e_poly}");
        assert!((t - t_poly).abs() < 1e-8 * (1.0 + t.abs()), "{t} vs {t_poly}");
        assert!(c.decomposition_residual() < 1e-8);
        assert!(c.bianchi_residual() < 1e-6);
    }

    /// For Ricci-flat metrics the Gauss–Bonnet integrand equals the
    /// pair-normalized energy density: 8π²·euler_density = ¼|Rm|².
    #[test]
    fn ricci_flat_euler_density_equals_energy_density() {
        for (chart, p) in [
            (catalog::eguchi_hanson_chart(1.0), [1.7, 1.1, 2.0, 2.0]),
            (catalog::taub_nut_chart(1.0), [2.3, 1.4, 3.0, 6.0]),
        ] {
            let c = riemann(&chart, &chart.point(p)).unwrap();
            let (euler, _) = characteristic_densities(&c);
            let q = c.energy_density();
            assert!(
                (8.0 * PI * PI * euler - q).abs() < 1e-9 * q,
                "8π²·euler = {} vs energy density {}",
                8.0 * PI * PI * euler,
                q
            );
        }
    }

    /// tr W± = 0 and the Weyl operator preserves the star eigenspaces (no
    /// SD/ASD mixing), on a generic curved metric.
    #[test]
    fn weyl_blocks_are_tracefree_and_star_compatible() {
        let chart = catalog::eguchi_hanson_chart(1.0);
        let generic = {
            let g = |x: &crate::linalg::V4| -> crate::linalg::M4 {
                linalg::tensor2(|i, j| {
                    let base = if i == j { 1.0 } else { 0.0 };
                    base + 0.04
                        * ((x[i] * 1.3).sin() * (x[j] * 0.7).cos()
                            + (x[j] * 1.3).sin() * (x[i] * 0.7).cos())
                })
            };
            crate::chart::MetricChart::new(
                "generic2",
                4,
                crate::chart::DomainBox::new(4, [-1.0; 4], [1.0; 4]),
                std::sync::Arc::new(g),
            )
        };
        for (chart, p) in [
            (&chart, [1.5, 1.2, 2.0, 2.5]),
            (&generic, [0.25, -0.2, 0.4, 0.1]),
        ] {
            let c = riemann(chart, &chart.point(p)).unwrap();
            let scale = c.norm_weyl_sq.max(1e-12);
            let tr_p: f64 = (0..6).map(|i| c.weyl_plus[i][i]).sum();
            let tr_m: f64 = (0..6).map(|i| c.weyl_minus[i][i]).sum();
            assert!(tr_p.abs() < 1e-8 * scale.sqrt(), "tr W+ = {tr_p}");
            assert!(tr_m.abs() < 1e-8 * scale.sqrt(), "tr W− = {tr_m}");
            // Cross-projection P∓ W P± of the Weyl operator vanishes.
            let swap = |v: usize| (v + 3) % 6;
            let mut cross: f64 = 0.0;
            for i in 0..6 {
                for j in 0..6 {
                    let (a, b) = PAIRS[i];
                    let (d, e) = PAIRS[j];
                    let w = |ii: usize, jj: usize| {
                        let (a, b) = PAIRS[ii];
                        let (d, e) = PAIRS[jj];
                        c.weyl_frame[a][b][d][e]
                    };
                    let _ = (a, b, d, e);
                    let mixed = 0.25
                        * (w(i, j) + w(swap(i), j) - w(i, swap(j)) - w(swap(i), swap(j)));
                    cross = cross.max(mixed.abs());
                }
            }
            assert!(cross < 1e-8 * (1.0 + scale.sqrt()), "cross block {cross}");
        }
    }
}
