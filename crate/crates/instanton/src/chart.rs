//! Coordinate charts with smooth metric component functions.
//!
//! A [`MetricChart`] owns closures for the metric components and, when
//! available, exact first and second coordinate derivatives. Charts without
//! exact derivatives fall back to fourth-order central differences with step
//! `1e-4 · coord_scale`.

use crate::error::GeomError;
use crate::linalg::{self, M4, T3, T4, V4};
use crate::Result;
use std::fmt;
use std::sync::Arc;

pub type MetricFn = dyn Fn(&V4) -> M4 + Send + Sync;
/// `dg[k][i][j] = ∂_k g_ij`
pub type MetricD1Fn = dyn Fn(&V4) -> T3 + Send + Sync;
/// `d2g[l][k][i][j] = ∂_l ∂_k g_ij`
pub type MetricD2Fn = dyn Fn(&V4) -> T4 + Send + Sync;

/// Open coordinate box domain.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainBox {
    pub lo: V4,
    pub hi: V4,
    pub dim: usize,
}

impl DomainBox {
    pub fn new(dim: usize, lo: V4, hi: V4) -> Self {
        DomainBox { lo, hi, dim }
    }

    /// Strict interior membership with a margin on every axis.
    pub fn contains_with_margin(&self, coords: &V4, margin: f64) -> bool {
        (0..self.dim).all(|i| coords[i] > self.lo[i] + margin && coords[i] < self.hi[i] - margin)
    }

    /// Distance to the nearest wall, negative outside the box.
    pub fn wall_margin(&self, coords: &V4) -> f64 {
        (0..self.dim)
            .map(|i| (coords[i] - self.lo[i]).min(self.hi[i] - coords[i]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// A point in a named chart. Coordinates beyond `dim` are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub chart_id: String,
    pub coords: V4,
}

impl ChartPoint {
    pub fn new(chart_id: impl Into<String>, coords: V4) -> Self {
        ChartPoint {
            chart_id: chart_id.into(),
            coords,
        }
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.chart_id, self.coords)
    }
}

/// Chart-based metric: component functions on an open box, optional exact
/// derivatives, and an orientation sign for `dVol`.
#[derive(Clone)]
pub struct MetricChart {
    pub name: String,
    pub dim: usize,
    pub domain: DomainBox,
    pub orientation: f64,
    /// Characteristic coordinate scale, used for finite-difference steps and
    /// null-set guards.
    pub coord_scale: f64,
    g: Arc<MetricFn>,
    dg: Option<Arc<MetricD1Fn>>,
    d2g: Option<Arc<MetricD2Fn>>,
}

impl fmt::Debug for MetricChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricChart")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("domain", &self.domain)
            .field("orientation", &self.orientation)
            .field("exact_derivatives", &self.dg.is_some())
            .finish()
    }
}

impl MetricChart {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        domain: DomainBox,
        g: Arc<MetricFn>,
    ) -> Self {
        MetricChart {
            name: name.into(),
            dim,
            domain,
            orientation: 1.0,
            coord_scale: 1.0,
            g,
            dg: None,
            d2g: None,
        }
    }

    pub fn with_exact_derivatives(mut self, dg: Arc<MetricD1Fn>, d2g: Arc<MetricD2Fn>) -> Self {
        self.dg = Some(dg);
        self.d2g = Some(d2g);
        self
    }

    pub fn with_orientation(mut self, orientation: f64) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_coord_scale(mut self, scale: f64) -> Self {
        self.coord_scale = scale;
        self
    }

    pub fn has_exact_derivatives(&self) -> bool {
        self.dg.is_some() && self.d2g.is_some()
    }

    pub fn point(&self, coords: V4) -> ChartPoint {
        ChartPoint::new(self.name.clone(), coords)
    }

    /// Raw metric components at coordinates (no domain check).
    pub fn g_at(&self, coords: &V4) -> M4 {
        (self.g)(coords)
    }

    /// Finite-difference step used by the numeric fallback.
    pub fn fd_step(&self) -> f64 {
        1e-4 * self.coord_scale
    }

    /// Margin required so that all numeric stencils stay inside the domain.
    pub fn stencil_margin(&self) -> f64 {
        if self.has_exact_derivatives() {
            0.0
        } else {
            2.5 * self.fd_step()
        }
    }

    pub fn check_point(&self, p: &ChartPoint, extra_margin: f64) -> Result<()> {
        let margin = self.stencil_margin() + extra_margin;
        if !self.domain.contains_with_margin(&p.coords, margin) {
            return Err(GeomError::OutsideDomain {
                chart: self.name.clone(),
                coords: p.coords[..self.dim].to_vec(),
                margin,
            });
        }
        Ok(())
    }

    /// Evaluate metric, inverse, first and second derivatives at a point.
    pub fn jet(&self, p: &ChartPoint) -> Result<MetricJet> {
        self.check_point(p, 0.0)?;
        let coords = p.coords;
        let g = (self.g)(&coords);
        let dg = match &self.dg {
            Some(f) => f(&coords),
            None => numeric_d1(&*self.g, &coords, self.dim, self.fd_step()),
        };
        let d2g = match &self.d2g {
            Some(f) => f(&coords),
            None => numeric_d2(&*self.g, &coords, self.dim, self.fd_step()),
        };
        let det = linalg::det(self.dim, &g);
        if det <= 0.0 {
            return Err(GeomError::NotPositiveDefinite {
                coords: coords[..self.dim].to_vec(),
            });
        }
        let (ginv, pivot) = linalg::invert(self.dim, &g).ok_or(GeomError::DegenerateMetric {
            coords: coords[..self.dim].to_vec(),
            pivot: 0.0,
        })?;
        if pivot < 1e-14 * self.coord_scale {
            return Err(GeomError::DegenerateMetric {
                coords: coords[..self.dim].to_vec(),
                pivot,
            });
        }
        Ok(MetricJet {
            dim: self.dim,
            coords,
            g,
            ginv,
            dg,
            d2g,
            sqrt_det: det.sqrt(),
            orientation: self.orientation,
        })
    }

    /// The chart for the conformally scaled metric `λ²·g` on the same domain.
    pub fn scaled(&self, lambda_sq: f64) -> MetricChart {
        let g = self.g.clone();
        let dg = self.dg.clone();
        let d2g = self.d2g.clone();
        let mut out = MetricChart::new(
            format!("{}*{}", self.name, lambda_sq),
            self.dim,
            self.domain.clone(),
            Arc::new(move |x: &V4| {
                let m = g(x);
                linalg::tensor2(|i, j| lambda_sq * m[i][j])
            }),
        )
        .with_orientation(self.orientation)
        .with_coord_scale(self.coord_scale);
        if let (Some(dg), Some(d2g)) = (dg, d2g) {
            out = out.with_exact_derivatives(
                Arc::new(move |x: &V4| {
                    let t = dg(x);
                    linalg::tensor3(|k, i, j| lambda_sq * t[k][i][j])
                }),
                Arc::new(move |x: &V4| {
                    let t = d2g(x);
                    linalg::tensor4(|l, k, i, j| lambda_sq * t[l][k][i][j])
                }),
            );
        }
        out
    }

    /// Largest deviation between declared exact derivatives and central
    /// finite differences of `g`, for chart validation.
    pub fn derivative_residual(&self, p: &ChartPoint) -> Result<f64> {
        let (Some(dg), Some(d2g)) = (&self.dg, &self.d2g) else {
            return Ok(0.0);
        };
        self.check_point(p, 3.0 * self.fd_step())?;
        let h = self.fd_step();
        let nd1 = numeric_d1(&*self.g, &p.coords, self.dim, h);
        let nd2 = numeric_d2(&*self.g, &p.coords, self.dim, h);
        let e1 = dg(&p.coords);
        let e2 = d2g(&p.coords);
        let mut worst: f64 = 0.0;
        for k in 0..self.dim {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    worst = worst.max((nd1[k][i][j] - e1[k][i][j]).abs());
                    for l in 0..self.dim {
                        worst = worst.max((nd2[l][k][i][j] - e2[l][k][i][j]).abs());
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// Metric data at a point: components, inverse, derivatives, volume factor.
#[derive(Clone, Debug)]
pub struct MetricJet {
    pub dim: usize,
    pub coords: V4,
    pub g: M4,
    pub ginv: M4,
    pub dg: T3,
    pub d2g: T4,
    pub sqrt_det: f64,
    pub orientation: f64,
}

impl MetricJet {
    /// `dVol` coefficient on the coordinate top form.
    pub fn dvol_coefficient(&self) -> f64 {
        self.orientation * self.sqrt_det
    }
}

fn shifted(coords: &V4, axis: usize, delta: f64) -> V4 {
    let mut c = *coords;
    c[axis] += delta;
    c
}

/// Fourth-order central first derivatives of the metric components.
fn numeric_d1(g: &MetricFn, coords: &V4, dim: usize, h: f64) -> T3 {
    let mut out = [[[0.0; 4]; 4]; 4];
    for k in 0..dim {
        let p2 = g(&shifted(coords, k, 2.0 * h));
        let p1 = g(&shifted(coords, k, h));
        let m1 = g(&shifted(coords, k, -h));
        let m2 = g(&shifted(coords, k, -2.0 * h));
        for i in 0..dim {
            for j in 0..dim {
                out[k][i][j] =
                    (-p2[i][j] + 8.0 * p1[i][j] - 8.0 * m1[i][j] + m2[i][j]) / (12.0 * h);
            }
        }
    }
    out
}

/// Fourth-order second derivatives: diagonal by the 5-point stencil, mixed by
/// nesting the first-derivative stencil.
fn numeric_d2(g: &MetricFn, coords: &V4, dim: usize, h: f64) -> T4 {
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    let g0 = g(coords);
    for k in 0..dim {
        let p2 = g(&shifted(coords, k, 2.0 * h));
        let p1 = g(&shifted(coords, k, h));
        let m1 = g(&shifted(coords, k, -h));
        let m2 = g(&shifted(coords, k, -2.0 * h));
        for i in 0..dim {
            for j in 0..dim {
                out[k][k][i][j] = (-p2[i][j] + 16.0 * p1[i][j] - 30.0 * g0[i][j]
                    + 16.0 * m1[i][j]
                    - m2[i][j])
                    / (12.0 * h * h);
            }
        }
    }
    let coeffs = [(2.0, -1.0 / 12.0), (1.0, 8.0 / 12.0), (-1.0, -8.0 / 12.0), (-2.0, 1.0 / 12.0)];
    for l in 0..dim {
        for k in 0..l {
            for (sl, wl) in coeffs {
                for (sk, wk) in coeffs {
                    let c = shifted(&shifted(coords, l, sl * h), k, sk * h);
                    let gv = g(&c);
                    let w = wl * wk / (h * h);
                    for i in 0..dim {
                        for j in 0..dim {
                            out[l][k][i][j] += w * gv[i][j];
                        }
                    }
                }
            }
            for i in 0..dim {
                for j in 0..dim {
                    out[k][l][i][j] = out[l][k][i][j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor2;

    fn poly_chart() -> MetricChart {
        // g = δ + quadratic perturbation, smooth and SPD near the origin.
        let g = |x: &V4| {
            tensor2(|i, j| {
                let base = if i == j { 1.0 } else { 0.0 };
                base + 0.05 * (x[i] * x[j] + if i == j { x[(i + 1) % 4] * x[(i + 1) % 4] } else { 0.0 })
            })
        };
        MetricChart::new(
            "poly",
            4,
            DomainBox::new(4, [-2.0; 4], [2.0; 4]),
            Arc::new(g),
        )
    }

    #[test]
    fn numeric_derivatives_match_analytic() {
        let chart = poly_chart();
        let p = chart.point([0.3, -0.2, 0.5, 0.1]);
        let jet = chart.jet(&p).unwrap();
        // ∂_k g_ij of the perturbation: 0.05 (δ_ki x_j + δ_kj x_i) + diag piece.
        let x = p.coords;
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let mut expect = 0.05
                        * ((if k == i { x[j] } else { 0.0 }) + (if k == j { x[i] } else { 0.0 }));
                    if i == j && k == (i + 1) % 4 {
                        expect += 0.1 * x[k];
                    }
                    assert!(
                        (jet.dg[k][i][j] - expect).abs() < 1e-9,
                        "dg[{k}][{i}][{j}] = {} vs {}",
                        jet.dg[k][i][j],
                        expect
                    );
                }
            }
        }
    }

    #[test]
    fn domain_margin_is_enforced() {
        let chart = poly_chart();
        let p = chart.point([1.9999, 0.0, 0.0, 0.0]);
        assert!(matches!(
            chart.jet(&p),
            Err(GeomError::OutsideDomain { .. })
        ));
    }

    #[test]
    fn scaled_chart_scales_metric() {
        let chart = poly_chart();
        let p = [0.1, 0.2, -0.3, 0.0];
        let scaled = chart.scaled(4.0);
        let g = chart.g_at(&p);
        let gs = scaled.g_at(&p);
        for i in 0..4 {
            for j in 0..4 {
                assert!((gs[i][j] - 4.0 * g[i][j]).abs() < 1e-14);
            }
        }
    }
}
