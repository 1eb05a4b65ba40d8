//! Radial quadrature on cohomogeneity-one metrics: ball volumes, curvature
//! energies, level-set integrals of 3-forms, and smooth cutoff profiles.
//!
//! Geodesic balls about the distinguished center (nut, bolt, origin) are the
//! radial sublevel sets `{geodesic_r < s}`. Orbit volumes are computed from
//! the induced metric determinant on the orbit, not from round-sphere
//! formulas.

use crate::catalog::{CatalogEntry, RadialGeometry};
use crate::chart::ChartPoint;
use crate::curvature::riemann;
use crate::error::GeomError;
use crate::killing::EPS_NULL;
use crate::linalg::{self, V4};
use crate::par::{self, ExecMode};
use crate::transgression::{gauss_legendre_01, Transgression3Form};
use crate::Result;

/// Tabulated radial data: coordinate radius, cumulative geodesic radius,
/// orbit 3-volume and pointwise energy density along the radial parameter.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    pub entry_name: String,
    pub n_cells: usize,
    /// Radial parameter nodes (2N+1 Simpson nodes).
    pub u: Vec<f64>,
    pub r: Vec<f64>,
    /// Geodesic radius at cell boundaries (N+1 values, even nodes).
    pub geodesic_r: Vec<f64>,
    /// `ds/du` at all nodes.
    pub speed: Vec<f64>,
    /// Orbit 3-volume at all nodes.
    pub orbit_volume: Vec<f64>,
    /// Pair-normalized `|Rm|²` at one orbit sample per node.
    pub energy_density: Vec<f64>,
    /// Cumulative 4-volume and energy at cell boundaries.
    pub cum_volume: Vec<f64>,
    pub cum_energy: Vec<f64>,
}

fn mid_angles(geo: &RadialGeometry) -> [f64; 3] {
    std::array::from_fn(|i| 0.5 * (geo.angle_box[i].0 + geo.angle_box[i].1))
}

/// Tangent of the orbit parametrization along `r` (numeric).
fn radial_tangent(geo: &RadialGeometry, r: f64, angles: [f64; 3]) -> V4 {
    let h = 1e-6 * r.abs().max(1e-3);
    let plus = (geo.point_of)(r + h, angles);
    let minus = (geo.point_of)(r - h, angles);
    linalg::tensor1(|i| (plus[i] - minus[i]) / (2.0 * h))
}

fn angle_tangents(geo: &RadialGeometry, r: f64, angles: [f64; 3]) -> [V4; 3] {
    std::array::from_fn(|k| {
        let span = geo.angle_box[k].1 - geo.angle_box[k].0;
        let h = 1e-6 * span;
        let mut ap = angles;
        let mut am = angles;
        ap[k] += h;
        am[k] -= h;
        let plus = (geo.point_of)(r, ap);
        let minus = (geo.point_of)(r, am);
        linalg::tensor1(|i| (plus[i] - minus[i]) / (2.0 * h))
    })
}

/// Quadrature nodes/weights over one angle interval.
fn angle_rule(lo: f64, hi: f64, periodic: bool, n: usize) -> Vec<(f64, f64)> {
    if periodic {
        let w = (hi - lo) / n as f64;
        (0..n).map(|k| (lo + (k as f64 + 0.5) * w, w)).collect()
    } else {
        let (nodes, weights) = gauss_legendre_01(n);
        nodes
            .iter()
            .zip(weights.iter())
            .map(|(&x, &w)| (lo + x * (hi - lo), w * (hi - lo)))
            .collect()
    }
}

/// Orbit 3-volume at radial coordinate `r` from the induced metric
/// determinant.
pub fn orbit_volume(entry: &CatalogEntry, geo: &RadialGeometry, r: f64) -> f64 {
    let rules: [Vec<(f64, f64)>; 3] = std::array::from_fn(|k| {
        angle_rule(
            geo.angle_box[k].0,
            geo.angle_box[k].1,
            geo.angle_periodic[k],
            geo.angle_cells[k],
        )
    });
    let mut total = 0.0;
    for &(a0, w0) in &rules[0] {
        for &(a1, w1) in &rules[1] {
            for &(a2, w2) in &rules[2] {
                let angles = [a0, a1, a2];
                let p = (geo.point_of)(r, angles);
                let g = entry.chart.g_at(&p);
                let e = angle_tangents(geo, r, angles);
                let gram = linalg::tensor2(|i, j| {
                    if i < 3 && j < 3 {
                        linalg::inner(entry.chart.dim, &g, &e[i], &e[j])
                    } else if i == j {
                        1.0
                    } else {
                        0.0
                    }
                });
                let det3 = linalg::det(3, &gram);
                total += w0 * w1 * w2 * det3.max(0.0).sqrt();
            }
        }
    }
    total
}

impl RadialProfile {
    /// Build the profile with `n_cells` radial Simpson cells.
    pub fn build(entry: &CatalogEntry, n_cells: usize, mode: ExecMode) -> Result<RadialProfile> {
        let geo = entry.radial.as_ref().ok_or_else(|| {
            GeomError::Invalid(format!("{} has no radial geometry", entry.name))
        })?;
        let n_nodes = 2 * n_cells + 1;
        let h = (geo.u_hi - geo.u_lo) / (2.0 * n_cells as f64);
        let angles = mid_angles(geo);

        let per_node: Vec<(f64, f64, f64, f64, f64)> = par::map_indexed(mode, n_nodes, |j| {
            let u = geo.u_lo + j as f64 * h;
            let r = (geo.r_of_u)(u);
            let p = (geo.point_of)(r, angles);
            let g = entry.chart.g_at(&p);
            let dphi_dr = radial_tangent(geo, r, angles);
            let speed_r = linalg::inner(entry.chart.dim, &g, &dphi_dr, &dphi_dr).max(0.0).sqrt();
            let speed = (geo.dr_du)(u) * speed_r;
            let ovol = orbit_volume(entry, geo, r);
            // Energy density at one orbit sample (constant on orbits for
            // cohomogeneity-one entries; asserted in tests).
            let q = riemann(&entry.chart, &entry.chart.point(p))
                .map(|c| c.energy_density())
                .unwrap_or(0.0);
            (u, r, speed, ovol, q)
        });

        let mut u = Vec::with_capacity(n_nodes);
        let mut r = Vec::with_capacity(n_nodes);
        let mut speed = Vec::with_capacity(n_nodes);
        let mut orbit_vol = Vec::with_capacity(n_nodes);
        let mut q = Vec::with_capacity(n_nodes);
        for (uu, rr, ss, oo, qq) in per_node {
            u.push(uu);
            r.push(rr);
            speed.push(ss);
            orbit_vol.push(oo);
            q.push(qq);
        }

        // Cumulative Simpson sums at cell boundaries.
        let simpson = |f: &dyn Fn(usize) -> f64| -> Vec<f64> {
            let mut cum = Vec::with_capacity(n_cells + 1);
            cum.push(0.0);
            let mut acc = 0.0;
            for k in 0..n_cells {
                let j = 2 * k;
                acc += h / 3.0 * (f(j) + 4.0 * f(j + 1) + f(j + 2));
                cum.push(acc);
            }
            cum
        };
        let geodesic_r = simpson(&|j| speed[j]);
        let cum_volume = simpson(&|j| speed[j] * orbit_vol[j]);
        let cum_energy = simpson(&|j| q[j] * speed[j] * orbit_vol[j]);

        Ok(RadialProfile {
            entry_name: entry.name.clone(),
            n_cells,
            u,
            r,
            geodesic_r,
            speed,
            orbit_volume: orbit_vol,
            energy_density: q,
            cum_volume,
            cum_energy,
        })
    }

    pub fn max_geodesic_radius(&self) -> f64 {
        *self.geodesic_r.last().unwrap()
    }

    /// Locate geodesic radius `s`: cell index and fraction within the cell.
    fn locate(&self, s: f64) -> Result<(usize, f64)> {
        let max = self.max_geodesic_radius();
        if s > max {
            return Err(GeomError::ProfileRangeExceeded { requested: s, max });
        }
        if s <= 0.0 {
            return Ok((0, 0.0));
        }
        let mut lo = 0usize;
        let mut hi = self.geodesic_r.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.geodesic_r[mid] <= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let span = self.geodesic_r[hi] - self.geodesic_r[lo];
        let frac = if span > 0.0 { (s - self.geodesic_r[lo]) / span } else { 0.0 };
        Ok((lo, frac.clamp(0.0, 1.0)))
    }

    /// Coordinate radius of the geodesic sphere of radius `s`.
    pub fn r_of_geodesic(&self, s: f64) -> Result<f64> {
        let (cell, frac) = self.locate(s)?;
        let j = 2 * cell;
        let r0 = self.r[j];
        let r1 = self.r[j + 2];
        Ok(r0 + frac * (r1 - r0))
    }

    /// Geodesic radius of the orbit at coordinate radius `r` (clamped to the
    /// tabulated range).
    pub fn geodesic_of_r(&self, r: f64) -> f64 {
        let n = self.geodesic_r.len() - 1;
        if r <= self.r[0] {
            return 0.0;
        }
        if r >= self.r[2 * n] {
            return self.geodesic_r[n];
        }
        let mut lo = 0usize;
        let mut hi = n;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.r[2 * mid] <= r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r0 = self.r[2 * lo];
        let r1 = self.r[2 * hi];
        let frac = if r1 > r0 { (r - r0) / (r1 - r0) } else { 0.0 };
        self.geodesic_r[lo] + frac * (self.geodesic_r[hi] - self.geodesic_r[lo])
    }

    pub fn geodesic_of_index(&self, cell: usize) -> f64 {
        self.geodesic_r[cell]
    }

    /// Integrate a tabulated integrand (values at all Simpson nodes) up to
    /// geodesic radius `s`: cumulative cells plus a partial-cell quadratic.
    fn integrate_to(&self, cum: &[f64], f: &dyn Fn(usize) -> f64, s: f64) -> Result<f64> {
        let (cell, frac) = self.locate(s)?;
        let mut total = cum[cell];
        if frac > 0.0 {
            let j = 2 * cell;
            let h = self.u[1] - self.u[0];
            // Exact antiderivative of the quadratic through the three
            // Simpson nodes, in the normalized variable t ∈ [0, 2]
            // (u = u_j + t·h). Using the geodesic fraction for t is an
            // O(h²) in-cell approximation, below the profile tolerances.
            let (f0, f1, f2) = (f(j), f(j + 1), f(j + 2));
            let t = 2.0 * frac;
            let a = f0;
            let b = (-3.0 * f0 + 4.0 * f1 - f2) / 2.0;
            let c = (f0 - 2.0 * f1 + f2) / 2.0;
            total += h * (a * t + b * t * t / 2.0 + c * t * t * t / 3.0);
        }
        Ok(total)
    }

    /// 4-volume of the radial ball of geodesic radius `s`.
    pub fn ball_volume(&self, s: f64) -> Result<f64> {
        self.integrate_to(&self.cum_volume, &|j| self.speed[j] * self.orbit_volume[j], s)
    }

    /// `∫_{B(s)} |Rm|² dVol` (pair-normalized energy density).
    pub fn energy_in_ball(&self, s: f64) -> Result<f64> {
        self.integrate_to(
            &self.cum_energy,
            &|j| self.energy_density[j] * self.speed[j] * self.orbit_volume[j],
            s,
        )
    }

    pub fn total_energy(&self) -> f64 {
        *self.cum_energy.last().unwrap()
    }

    /// CSV table with columns `r, geodesic_r, shell_volume, shell_energy`
    /// (shell densities per unit geodesic radius, at cell boundaries).
    pub fn to_csv(&self) -> String {
        let mut rows = Vec::with_capacity(self.n_cells + 1);
        for k in 0..=self.n_cells {
            let j = 2 * k;
            rows.push(vec![
                self.r[j],
                self.geodesic_r[k],
                self.orbit_volume[j],
                self.energy_density[j] * self.orbit_volume[j],
            ]);
        }
        crate::report::csv_table(&["r", "geodesic_r", "shell_volume", "shell_energy"], &rows)
    }
}

/// Level-set integral of a 3-form over the geodesic sphere of radius `s`,
/// oriented by the outward normal. Returns the integral and the spread of the
/// pointwise pullback over the sampled orbit points (an isotropy check).
pub fn sphere_integral_3form<F>(
    entry: &CatalogEntry,
    profile: &RadialProfile,
    form_field: F,
    s: f64,
) -> Result<(f64, f64)>
where
    F: Fn(&ChartPoint) -> Result<Transgression3Form>,
{
    let geo = entry.radial.as_ref().ok_or_else(|| {
        GeomError::Invalid(format!("{} has no radial geometry", entry.name))
    })?;
    let r = profile.r_of_geodesic(s)?;
    let ovol = orbit_volume(entry, geo, r);
    // Sample a small fixed grid of orbit points.
    let samples: Vec<[f64; 3]> = {
        let mut v = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let f = |idx: usize, t: f64| {
                        let (lo, hi) = geo.angle_box[idx];
                        lo + (0.3 + 0.4 * t) * (hi - lo)
                    };
                    v.push([f(0, i as f64), f(1, j as f64), f(2, k as f64)]);
                }
            }
        }
        v
    };
    let dim = entry.chart.dim;
    let mut values = Vec::with_capacity(samples.len());
    for angles in samples {
        let coords = (geo.point_of)(r, angles);
        let p = entry.chart.point(coords);
        let jet = entry.chart.jet(&p)?;
        // Null-set guard on the level set.
        let x = entry.killing.at(&coords);
        let xnorm = linalg::inner(dim, &jet.g, &x, &x).max(0.0).sqrt();
        if xnorm <= EPS_NULL * entry.chart.coord_scale {
            return Err(GeomError::LevelSetOnNullSet { radius: s });
        }
        let tp = form_field(&p)?;
        // Orthonormal oriented frame (ν, E1, E2, E3) with ν outward.
        let nu = radial_tangent(geo, r, angles);
        let e = angle_tangents(geo, r, angles);
        let mut frame = [nu, e[0], e[1], e[2]];
        // Gram–Schmidt with respect to g.
        for a in 0..4 {
            for b in 0..a {
                let proj = linalg::inner(dim, &jet.g, &frame[a].clone(), &frame[b].clone());
                frame[a] = linalg::axpy(-proj, &frame[b].clone(), &frame[a].clone());
            }
            let nsq = linalg::inner(dim, &jet.g, &frame[a].clone(), &frame[a].clone());
            if nsq.is_nan() || nsq <= 1e-28 {
                return Err(GeomError::DegenerateFrame { residual: nsq });
            }
            frame[a] = linalg::scale(&frame[a].clone(), 1.0 / nsq.sqrt());
        }
        // Orientation: dVol(ν, E1, E2, E3) = ±1; enforce +1.
        let basis = linalg::tensor2(|i, a| frame[i][a]);
        let det = linalg::det(4, &basis) * jet.dvol_coefficient();
        let mut v = tp.value(&frame[1], &frame[2], &frame[3]);
        if det < 0.0 {
            v = -v;
        }
        values.push(v);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0f64, f64::max);
    Ok((mean * ovol, spread * ovol.abs()))
}

/// Smooth monotone cutoff equal to 1 below `inner` and 0 above `outer`, with
/// a certified derivative bound `1.875/(outer − inner)`.
#[derive(Clone, Debug)]
pub struct CutoffProfile {
    pub inner: f64,
    pub outer: f64,
    pub derivative_bound: f64,
}

impl CutoffProfile {
    pub fn new(inner: f64, outer: f64) -> Result<CutoffProfile> {
        if inner.is_nan() || outer.is_nan() || inner <= 0.0 || outer <= inner {
            return Err(GeomError::DegenerateInterval { inner, outer });
        }
        Ok(CutoffProfile {
            inner,
            outer,
            derivative_bound: 1.875 / (outer - inner),
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        if x <= self.inner {
            1.0
        } else if x >= self.outer {
            0.0
        } else {
            let t = (x - self.inner) / (self.outer - self.inner);
            1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x <= self.inner || x >= self.outer {
            0.0
        } else {
            let w = self.outer - self.inner;
            let t = (x - self.inner) / w;
            -30.0 * t * t * (1.0 - t) * (1.0 - t) / w
        }
    }
}
