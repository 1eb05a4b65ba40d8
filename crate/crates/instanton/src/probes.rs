//! Estimator probes: s-local curvature radius, energy radius, local
//! variation functionals, the scale-s maximal function, and the weak
//! curvature-radius estimate.
//!
//! Suprema and infima over metric balls are estimated by deterministic
//! low-discrepancy sampling on a direction × radius grid, with two-sided
//! sampling brackets reported. Balls are the `g(p)`-ellipsoid proxies
//! `{p + w : |w|_{g(p)} < r}`, exact on flat charts; the direction set is
//! fixed in advance, which makes all probe outputs exactly scale-covariant.

use crate::chart::{ChartPoint, MetricChart};
use crate::curvature::riemann;
use crate::error::GeomError;
use crate::killing::KillingField;
use crate::linalg::{self, V4};
use crate::par::{self, ExecMode};
use crate::sampling::unit_directions;
use crate::Result;
use serde::Serialize;

/// Probe sampling configuration.
#[derive(Clone, Debug)]
pub struct ProbeConfig {
    /// Number of ball directions.
    pub n_directions: usize,
    /// Number of radial rungs per direction.
    pub n_radial: usize,
    /// Energy-radius threshold ε₀.
    pub epsilon_0: f64,
    /// Sequence seed for the deterministic sampler.
    pub seed: u64,
    pub mode: ExecMode,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            n_directions: 96,
            n_radial: 32,
            epsilon_0: 1e-2,
            seed: 0,
            mode: ExecMode::default(),
        }
    }
}

/// Two-sided sampling bracket for a sup/inf estimate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// A sup/inf ratio with its sampling data. `infinite` is set when the
/// sampled infimum vanishes (the null set intersects the sample).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VariationRatio {
    pub sup: f64,
    pub inf: f64,
    pub ratio: f64,
    pub infinite: bool,
}

impl VariationRatio {
    fn from_sup_inf(sup: f64, inf: f64, guard: f64) -> VariationRatio {
        if inf <= guard {
            VariationRatio {
                sup,
                inf,
                ratio: f64::INFINITY,
                infinite: true,
            }
        } else {
            VariationRatio {
                sup,
                inf,
                ratio: sup / inf,
                infinite: false,
            }
        }
    }
}

/// Combined probe output.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ProbeResult {
    pub r_curv: Option<f64>,
    pub r_curv_bracket: Option<Bracket>,
    pub rho: Option<f64>,
    pub rho_bracket: Option<Bracket>,
    pub m_x: Option<VariationRatio>,
    pub m_x_omega_s: Option<VariationRatio>,
    /// `(s, ratio)` ladder for the asymptotic variation estimate.
    pub m_x_infty_estimate: Vec<(f64, VariationRatio)>,
    pub maximal: Option<f64>,
    /// `|∇X|/|X| · r_R^s(p)`, the measured scale-invariant combination.
    pub grad_ratio_scale: Option<f64>,
}

/// Direction × radius sample grid over the proxy ball `B(p, s)`.
pub struct BallGrid {
    pub dim: usize,
    pub radii: Vec<f64>,
    /// `points[d][j]`: sample at direction `d`, rung `j`.
    pub points: Vec<Vec<V4>>,
    /// dVol weights `√det g(q) · r^{dim−1}` (relative).
    pub weights: Vec<Vec<f64>>,
}

impl BallGrid {
    pub fn build(metric: &MetricChart, p: &ChartPoint, s: f64, cfg: &ProbeConfig) -> Result<BallGrid> {
        let dim = metric.dim;
        let jet = metric.jet(p)?;
        let chol = cholesky(dim, &jet.g).ok_or_else(|| GeomError::NotPositiveDefinite {
            coords: p.coords[..dim].to_vec(),
        })?;
        let euclid = unit_directions(dim, cfg.n_directions, cfg.seed);
        // Map Euclidean directions to the g(p) unit ellipsoid: solve Lᵀw = u.
        let dirs: Vec<V4> = euclid
            .iter()
            .map(|u| back_substitute(dim, &chol, u))
            .collect();
        let radii: Vec<f64> = (1..=cfg.n_radial)
            .map(|j| s * j as f64 / cfg.n_radial as f64)
            .collect();
        let margin = metric.stencil_margin();
        let mut points = Vec::with_capacity(dirs.len());
        let mut weights = Vec::with_capacity(dirs.len());
        for w in &dirs {
            let mut ray_pts = Vec::with_capacity(radii.len());
            let mut ray_wts = Vec::with_capacity(radii.len());
            for &r in &radii {
                let q: V4 = linalg::axpy(r, w, &p.coords);
                if !metric.domain.contains_with_margin(&q, margin) {
                    return Err(GeomError::SamplerExhausted { radius: s });
                }
                let det = linalg::det(dim, &metric.g_at(&q));
                if det <= 0.0 {
                    return Err(GeomError::NotPositiveDefinite {
                        coords: q[..dim].to_vec(),
                    });
                }
                ray_pts.push(q);
                ray_wts.push(det.sqrt() * r.powi(dim as i32 - 1));
            }
            points.push(ray_pts);
            weights.push(ray_wts);
        }
        Ok(BallGrid {
            dim,
            radii,
            points,
            weights,
        })
    }

    /// Evaluate a scalar at every grid point.
    pub fn values<F>(&self, cfg: &ProbeConfig, f: F) -> Result<Vec<Vec<f64>>>
    where
        F: Fn(&V4) -> Result<f64> + Sync + Send,
    {
        let results: Vec<Result<Vec<f64>>> = par::map_slice(cfg.mode, &self.points, |ray| {
            ray.iter().map(&f).collect()
        });
        results.into_iter().collect()
    }

    /// Prefix suprema over rungs: `out[j] = max over all points with rung ≤ j`.
    pub fn prefix_sup(&self, vals: &[Vec<f64>]) -> Vec<f64> {
        let nr = self.radii.len();
        let mut out = vec![f64::NEG_INFINITY; nr];
        for j in 0..nr {
            let mut m = if j > 0 { out[j - 1] } else { f64::NEG_INFINITY };
            for ray in vals {
                m = m.max(ray[j]);
            }
            out[j] = m;
        }
        out
    }

    pub fn prefix_inf(&self, vals: &[Vec<f64>]) -> Vec<f64> {
        let nr = self.radii.len();
        let mut out = vec![f64::INFINITY; nr];
        for j in 0..nr {
            let mut m = if j > 0 { out[j - 1] } else { f64::INFINITY };
            for ray in vals {
                m = m.min(ray[j]);
            }
            out[j] = m;
        }
        out
    }

    /// Prefix dVol-weighted ball averages.
    pub fn prefix_avg(&self, vals: &[Vec<f64>]) -> Vec<f64> {
        let nr = self.radii.len();
        let mut num = 0.0;
        let mut den = 0.0;
        let mut out = vec![0.0; nr];
        for j in 0..nr {
            for (ray_v, ray_w) in vals.iter().zip(self.weights.iter()) {
                num += ray_v[j] * ray_w[j];
                den += ray_w[j];
            }
            out[j] = if den > 0.0 { num / den } else { 0.0 };
        }
        out
    }
}

fn cholesky(dim: usize, g: &linalg::M4) -> Option<linalg::M4> {
    let mut l = [[0.0; 4]; 4];
    for i in 0..dim {
        for j in 0..=i {
            let mut sum = g[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i][j] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    for i in dim..4 {
        l[i][i] = 1.0;
    }
    Some(l)
}

/// Solve `Lᵀ w = u` (upper-triangular back substitution).
fn back_substitute(dim: usize, l: &linalg::M4, u: &V4) -> V4 {
    let mut w = [0.0; 4];
    for i in (0..dim).rev() {
        let mut sum = u[i];
        for k in i + 1..dim {
            sum -= l[k][i] * w[k];
        }
        w[i] = sum / l[i][i];
    }
    w
}

fn rm_at(metric: &MetricChart, q: &V4) -> Result<f64> {
    let c = riemann(metric, &metric.point(*q))?;
    Ok(c.rm_norm())
}

/// Largest probe radius whose proxy ball stays inside the chart domain: the
/// unit `g(p)` ellipsoid extends `√(g^{ii})` along axis `i`.
pub fn max_safe_probe_radius(metric: &MetricChart, p: &ChartPoint) -> Result<f64> {
    let jet = metric.jet(p)?;
    let margin = metric.stencil_margin();
    let mut s = f64::INFINITY;
    for i in 0..metric.dim {
        let room = (p.coords[i] - metric.domain.lo[i])
            .min(metric.domain.hi[i] - p.coords[i])
            - margin;
        let extent = jet.ginv[i][i].max(0.0).sqrt();
        if extent > 0.0 {
            s = s.min(room / extent);
        }
    }
    Ok(0.95 * s.max(0.0))
}

/// `r_R^s(p) = sup{0 < r < s : |Rm| < r⁻² on B(p,r)}` with a sampling
/// bracket. The supremum over each ball is certified by the sampled maxima.
pub fn curvature_radius(
    metric: &MetricChart,
    p: &ChartPoint,
    s: f64,
    cfg: &ProbeConfig,
) -> Result<(f64, Bracket)> {
    let grid = BallGrid::build(metric, p, s, cfg)?;
    let vals = grid.values(cfg, |q| rm_at(metric, q))?;
    let sup = grid.prefix_sup(&vals);
    let rm_center = rm_at(metric, &p.coords)?;
    Ok(radius_from_sup(&grid.radii, &sup, rm_center, s))
}

fn radius_from_sup(radii: &[f64], sup: &[f64], center: f64, s: f64) -> (f64, Bracket) {
    let passes = |j: usize| sup[j].max(center) < radii[j].powi(-2);
    let mut last_pass: Option<usize> = None;
    for j in 0..radii.len() {
        if passes(j) {
            last_pass = Some(j);
        } else {
            break;
        }
    }
    match last_pass {
        None => {
            // Fails already at the first rung; the radius lies below it.
            let hi = radii[0];
            let est = sup[0].max(center).powf(-0.5).min(hi);
            (est, Bracket { lo: 0.0, hi })
        }
        Some(j) if j + 1 == radii.len() => (s, Bracket { lo: radii[j], hi: s }),
        Some(j) => {
            let lo = radii[j];
            let hi = radii[j + 1];
            let est = sup[j + 1].max(center).powf(-0.5).clamp(lo, hi);
            (est, Bracket { lo, hi })
        }
    }
}

/// `ρ^s(p)`: the s-local energy radius, `sup{r < s : r⁴·avg_B(p,r)|Rm|² ≤ ε₀}`.
pub fn energy_radius(
    metric: &MetricChart,
    p: &ChartPoint,
    s: f64,
    cfg: &ProbeConfig,
) -> Result<(f64, Bracket)> {
    let grid = BallGrid::build(metric, p, s, cfg)?;
    let vals = grid.values(cfg, |q| rm_at(metric, q).map(|v| v * v))?;
    let avg = grid.prefix_avg(&vals);
    let radii = &grid.radii;
    let passes = |j: usize| radii[j].powi(4) * avg[j] <= cfg.epsilon_0;
    let mut last_pass: Option<usize> = None;
    for j in 0..radii.len() {
        if passes(j) {
            last_pass = Some(j);
        } else {
            break;
        }
    }
    Ok(match last_pass {
        None => {
            let hi = radii[0];
            let est = (cfg.epsilon_0 / avg[0].max(1e-300)).powf(0.25).min(hi);
            (est, Bracket { lo: 0.0, hi })
        }
        Some(j) if j + 1 == radii.len() => (s, Bracket { lo: radii[j], hi: s }),
        Some(j) => {
            let lo = radii[j];
            let hi = radii[j + 1];
            let est = (cfg.epsilon_0 / avg[j + 1].max(1e-300)).powf(0.25).clamp(lo, hi);
            (est, Bracket { lo, hi })
        }
    })
}

/// Scale-s Hardy–Littlewood maximal function
/// `M_f^s(p) = sup_{0<r<s} avg_{B(p,r)} |f|`.
pub fn maximal_function<F>(
    metric: &MetricChart,
    f: F,
    p: &ChartPoint,
    s: f64,
    cfg: &ProbeConfig,
) -> Result<f64>
where
    F: Fn(&V4) -> Result<f64> + Sync + Send,
{
    let grid = BallGrid::build(metric, p, s, cfg)?;
    let vals = grid.values(cfg, |q| f(q).map(f64::abs))?;
    let avg = grid.prefix_avg(&vals);
    Ok(avg.iter().fold(0.0f64, |a, &b| a.max(b)))
}

/// Variation modes for [`local_variation`]. The asymptotic ladder
/// `M_X^{B(p,s),s}` over increasing `s` is assembled by the theorem drivers
/// from repeated [`excised_variation_sup`] calls.
pub enum VariationMode<'a> {
    /// `M_X(p)`: sup/inf of |X| over `B(p, r_R^s(p))`.
    Pointwise { s: f64 },
    /// Excised variant: the ball minus the region Ω.
    Excised {
        s: f64,
        omega: &'a (dyn Fn(&V4) -> bool + Sync),
    },
}

/// Local variation of the field at `p` per the requested mode.
/// `zero_points` are declared null-set representatives: a ball that contains
/// one (outside any excision) certifies an infinite ratio.
pub fn local_variation(
    metric: &MetricChart,
    field: &KillingField,
    p: &ChartPoint,
    cfg: &ProbeConfig,
    mode: VariationMode<'_>,
    zero_points: &[V4],
) -> Result<ProbeResult> {
    let mut out = ProbeResult::default();
    match mode {
        VariationMode::Pointwise { s } => {
            let (rc, bracket) = curvature_radius(metric, p, s, cfg)?;
            out.r_curv = Some(rc);
            out.r_curv_bracket = Some(bracket);
            let ratio = variation_on_ball(metric, field, p, rc, cfg, None, zero_points)?;
            out.grad_ratio_scale = Some(grad_ratio(metric, field, p)? * rc);
            out.m_x = Some(ratio);
        }
        VariationMode::Excised { s, omega } => {
            let (rc, bracket) = curvature_radius(metric, p, s, cfg)?;
            out.r_curv = Some(rc);
            out.r_curv_bracket = Some(bracket);
            let ratio = variation_on_ball(metric, field, p, rc, cfg, Some(omega), zero_points)?;
            out.m_x_omega_s = Some(ratio);
        }
    }
    Ok(out)
}

fn grad_ratio(metric: &MetricChart, field: &KillingField, p: &ChartPoint) -> Result<f64> {
    let c = riemann(metric, p)?;
    let kd = crate::killing::killing_data(field, &c);
    let grad = linalg::sum2(metric.dim, |a, b| kd.nabla_x_frame[a][b].powi(2)).sqrt();
    if kd.norm <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(grad / kd.norm)
}

/// Sup/inf of |X| over the sampled ball `B(p, r)` (minus Ω when given).
fn variation_on_ball(
    metric: &MetricChart,
    field: &KillingField,
    p: &ChartPoint,
    r: f64,
    cfg: &ProbeConfig,
    omega: Option<&(dyn Fn(&V4) -> bool + Sync)>,
    zero_points: &[V4],
) -> Result<VariationRatio> {
    let grid = BallGrid::build(metric, p, r, cfg)?;
    let dim = metric.dim;
    // A declared zero point inside the ball (and outside the excision)
    // certifies an infinite ratio regardless of the sampled infimum.
    let g_center = metric.g_at(&p.coords);
    let zero_inside = zero_points.iter().any(|z| {
        let d: V4 = linalg::tensor1(|i| z[i] - p.coords[i]);
        let inside = linalg::inner(dim, &g_center, &d, &d).sqrt() <= r;
        let excised = omega.map(|om| om(z)).unwrap_or(false);
        inside && !excised
    });
    let norms = grid.values(cfg, |q| {
        let g = metric.g_at(q);
        let x = field.at(q);
        Ok(linalg::inner(dim, &g, &x, &x).max(0.0).sqrt())
    })?;
    let mut sup = f64::NEG_INFINITY;
    let mut inf = f64::INFINITY;
    let mut any = false;
    for (ray_pts, ray_vals) in grid.points.iter().zip(norms.iter()) {
        for (q, &v) in ray_pts.iter().zip(ray_vals.iter()) {
            if let Some(om) = omega {
                if om(q) {
                    continue;
                }
            }
            any = true;
            sup = sup.max(v);
            inf = inf.min(v);
        }
    }
    // Include the center point unless excised.
    let include_center = omega.map(|om| !om(&p.coords)).unwrap_or(true);
    if include_center {
        let g = metric.g_at(&p.coords);
        let x = field.at(&p.coords);
        let v = linalg::inner(dim, &g, &x, &x).max(0.0).sqrt();
        sup = sup.max(v);
        inf = inf.min(v);
        any = true;
    }
    if !any {
        return Err(GeomError::Invalid(
            "excision removed every ball sample".into(),
        ));
    }
    if zero_inside {
        return Ok(VariationRatio {
            sup,
            inf: 0.0,
            ratio: f64::INFINITY,
            infinite: true,
        });
    }
    Ok(VariationRatio::from_sup_inf(
        sup,
        inf,
        crate::killing::EPS_NULL * metric.coord_scale,
    ))
}

/// `M_X^{Ω,s}`: sup over the supplied probe points `p ∉ Ω` of the sup/inf
/// ratio of |X| over `B(p, r_R^s(p)) ∖ Ω` (brute force over the point grid;
/// the result is a certified lower bound for the true supremum).
pub fn excised_variation_sup(
    metric: &MetricChart,
    field: &KillingField,
    cfg: &ProbeConfig,
    omega: &(dyn Fn(&V4) -> bool + Sync),
    s: f64,
    probe_points: &[V4],
    zero_points: &[V4],
) -> Result<VariationRatio> {
    let mut best: Option<VariationRatio> = None;
    let margin = metric.stencil_margin();
    for q in probe_points {
        if omega(q) || !metric.domain.contains_with_margin(q, margin) {
            continue;
        }
        let p = metric.point(*q);
        // Balls that leave the chart are sampled at the largest radius the
        // chart supports; the reported sup is then a certified lower bound.
        let s_here = max_safe_probe_radius(metric, &p)?.min(s);
        if s_here < 1e-3 * s {
            continue;
        }
        let (rc, _) = curvature_radius(metric, &p, s_here, cfg)?;
        let ratio = variation_on_ball(metric, field, &p, rc, cfg, Some(omega), zero_points)?;
        if ratio.infinite {
            return Ok(ratio);
        }
        if best.map(|b| ratio.ratio > b.ratio).unwrap_or(true) {
            best = Some(ratio);
        }
    }
    best.ok_or_else(|| GeomError::Invalid("no probe point admitted a sample ball".into()))
}

/// Deterministic probe grid on concentric shells of coordinate radius
/// `(1.02 .. 4.5)·s`, for excised variation sups on flat charts.
pub fn shell_probe_points(dim: usize, s: f64, seed: u64) -> Vec<V4> {
    let dirs = unit_directions(dim, 24, seed + 17);
    let mut out = Vec::new();
    for shell in 0..14 {
        let rad = s * (1.02 + 0.25 * shell as f64);
        for d in &dirs {
            out.push(linalg::scale(d, rad));
        }
    }
    out
}

/// Report of the weak curvature-radius estimate
/// `(r_R^s(p))^{−k} ≤ max{2^k s^{−k}, (16 ε₀⁻¹ M^s_{|Rm|²}(p))^{k/4}}`.
#[derive(Clone, Debug, Serialize)]
pub struct WeakEstimateReport {
    pub k: f64,
    pub r_curv: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub maximal: f64,
    pub pass: bool,
    pub margin: f64,
}

pub fn weak_estimate_check(
    metric: &MetricChart,
    p: &ChartPoint,
    s: f64,
    k: f64,
    cfg: &ProbeConfig,
) -> Result<WeakEstimateReport> {
    Ok(weak_estimate_checks(metric, p, s, &[k], cfg)?.remove(0))
}

/// Evaluate the weak estimate for several exponents from one sampling grid.
pub fn weak_estimate_checks(
    metric: &MetricChart,
    p: &ChartPoint,
    s: f64,
    ks: &[f64],
    cfg: &ProbeConfig,
) -> Result<Vec<WeakEstimateReport>> {
    let grid = BallGrid::build(metric, p, s, cfg)?;
    let vals = grid.values(cfg, |q| rm_at(metric, q))?;
    let sup = grid.prefix_sup(&vals);
    let rm_center = rm_at(metric, &p.coords)?;
    let (rc, _) = radius_from_sup(&grid.radii, &sup, rm_center, s);
    let sq: Vec<Vec<f64>> = vals
        .iter()
        .map(|ray| ray.iter().map(|v| v * v).collect())
        .collect();
    let avg = grid.prefix_avg(&sq);
    let maximal = avg.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(ks
        .iter()
        .map(|&k| {
            let lhs = rc.powf(-k);
            let rhs =
                (2.0f64.powf(k) * s.powf(-k)).max((16.0 / cfg.epsilon_0 * maximal).powf(k / 4.0));
            WeakEstimateReport {
                k,
                r_curv: rc,
                lhs,
                rhs,
                maximal,
                pass: lhs <= rhs,
                margin: rhs - lhs,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cfg() -> ProbeConfig {
        ProbeConfig::default()
    }

    #[test]
    fn flat_curvature_radius_saturates() {
        let chart = catalog::flat_r4_chart(50.0);
        let p = chart.point([1.0, 2.0, -1.0, 0.5]);
        let (r, bracket) = curvature_radius(&chart, &p, 10.0, &cfg()).unwrap();
        assert_eq!(r, 10.0);
        assert_eq!(bracket.hi, 10.0);
    }

    /// Constant-curvature fixture: on the round 2-sphere of radius ρ the
    /// probe |Rm| is exactly ρ⁻², so r_R^s = min(s, ρ) and
    /// ρ^s = min(s, ε₀^{1/4} ρ).
    #[test]
    fn constant_curvature_closed_forms() {
        let rho = 2.0;
        let chart = catalog::two_sphere_chart(rho);
        let p = chart.point([1.5, 0.7, 0.0, 0.0]);
        let c = cfg();
        let s_cap = max_safe_probe_radius(&chart, &p).unwrap();
        assert!(s_cap > rho, "need the cap above ρ, got {s_cap}");
        let (r, bracket) = curvature_radius(&chart, &p, 2.5, &c).unwrap();
        assert!(
            (r - rho).abs() <= (bracket.hi - bracket.lo).max(1e-9),
            "r = {r}, bracket [{}, {}]",
            bracket.lo,
            bracket.hi
        );
        // Small s: saturates at s.
        let (r_small, _) = curvature_radius(&chart, &p, 0.5, &c).unwrap();
        assert_eq!(r_small, 0.5);
        let (re, re_bracket) = energy_radius(&chart, &p, 2.5, &c).unwrap();
        let expect = c.epsilon_0.powf(0.25) * rho;
        assert!(
            (re - expect).abs() <= (re_bracket.hi - re_bracket.lo).max(1e-9),
            "rho^s = {re} vs {expect}"
        );
    }

    #[test]
    fn flat_energy_radius_saturates() {
        let chart = catalog::flat_r4_chart(50.0);
        let p = chart.point([0.0, 0.0, 0.0, 0.0]);
        let (re, _) = energy_radius(&chart, &p, 8.0, &cfg()).unwrap();
        assert_eq!(re, 8.0);
    }

    #[test]
    fn maximal_function_of_constant_is_constant() {
        let chart = catalog::flat_r4_chart(50.0);
        let p = chart.point([1.0, 0.0, 0.0, 0.0]);
        let m = maximal_function(&chart, |_| Ok(2.5), &p, 3.0, &cfg()).unwrap();
        assert!((m - 2.5).abs() < 1e-12);
        // |Rm|² of flat space → 0.
        let m0 = maximal_function(&chart, |q| rm_at(&chart, q).map(|v| v * v), &p, 3.0, &cfg())
            .unwrap();
        assert!(m0 < 1e-20);
    }

    #[test]
    fn maximal_function_of_indicator() {
        // f = 1_{B(o,1)} on flat R⁴ at p = o, s = 2: averages are 1 for
        // r ≤ 1 and decay afterwards, so M = 1.
        let chart = catalog::flat_r4_chart(50.0);
        let p = chart.point([0.0; 4]);
        let f = |q: &V4| -> Result<f64> {
            let r: f64 = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            Ok(if r < 1.0 { 1.0 } else { 0.0 })
        };
        let m = maximal_function(&chart, f, &p, 2.0, &cfg()).unwrap();
        assert!((m - 1.0).abs() < 1e-12, "M = {m}");
    }

    #[test]
    fn constant_field_has_unit_variation() {
        let chart = catalog::flat_r4_chart(50.0);
        let field = KillingField::coordinate_axis("dx", 0);
        let p = chart.point([1.0, 2.0, 0.0, 0.0]);
        let res = local_variation(
            &chart,
            &field,
            &p,
            &cfg(),
            VariationMode::Pointwise { s: 3.0 },
            &[],
        )
        .unwrap();
        let m = res.m_x.unwrap();
        assert!(!m.infinite);
        assert!((m.ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plane_rotation_variation_is_infinite_without_excision() {
        // Ball of radius r_R^s = s = 4 around (1,0) contains the origin where
        // |X| = 0, so the ratio flags ∞.
        let chart = catalog::flat_r2_chart(50.0);
        let field = KillingField::plane_rotation("rot", 0, 1);
        let p = chart.point([1.0, 0.0, 0.0, 0.0]);
        let res = local_variation(
            &chart,
            &field,
            &p,
            &cfg(),
            VariationMode::Pointwise { s: 4.0 },
            &[[0.0; 4]],
        )
        .unwrap();
        let m = res.m_x.unwrap();
        assert!(m.infinite, "expected infinite flag, inf = {}", m.inf);
    }

    /// Brute-force oracle for the plane example: for Ω = B(o,s) the excised
    /// variation sup equals 3 (extremal probe point at |p| = 2s, ratio
    /// (|p|+s)/s = 3). The sampled value approaches it from below.
    #[test]
    fn plane_rotation_excised_variation_approaches_three() {
        let chart = catalog::flat_r2_chart(50.0);
        let field = KillingField::plane_rotation("rot", 0, 1);
        let s = 2.0;
        let omega = move |q: &V4| (q[0] * q[0] + q[1] * q[1]).sqrt() < s;
        let mut c = cfg();
        c.n_directions = 128;
        c.n_radial = 48;
        let points = shell_probe_points(2, s, c.seed);
        let ratio =
            excised_variation_sup(&chart, &field, &c, &omega, s, &points, &[[0.0; 4]]).unwrap();
        assert!(!ratio.infinite);
        assert!(
            (ratio.ratio - 3.0).abs() < 0.08,
            "excised variation {} vs oracle 3",
            ratio.ratio
        );
    }

    #[test]
    fn curvature_radius_is_exactly_scale_covariant() {
        let entry = catalog::catalog_metric("eguchi-hanson").unwrap();
        let p = entry.chart.point([1.6, 1.2, 2.0, 2.0]);
        let c = cfg();
        let s = 0.4;
        let (r1, _) = curvature_radius(&entry.chart, &p, s, &c).unwrap();
        let scaled = entry.chart.scaled(4.0);
        let (r2, _) = curvature_radius(&scaled, &p, 2.0 * s, &c).unwrap();
        assert!(
            (r2 - 2.0 * r1).abs() < 1e-6 * r1.abs().max(1.0),
            "r1 = {r1}, r2 = {r2}"
        );
    }

    /// Variation ratios are invariant under metric scaling g → λ²g (the
    /// left side of the scale-invariant estimate).
    #[test]
    fn variation_ratio_is_scale_invariant() {
        let entry = catalog::catalog_metric("eguchi-hanson").unwrap();
        let scaled = entry.chart.scaled(4.0);
        let p = entry.chart.point([2.2, 1.3, 2.0, 3.0]);
        let c = cfg();
        let a = local_variation(
            &entry.chart,
            &entry.killing,
            &p,
            &c,
            VariationMode::Pointwise { s: 0.4 },
            &[],
        )
        .unwrap();
        let b = local_variation(
            &scaled,
            &entry.killing,
            &p,
            &c,
            VariationMode::Pointwise { s: 0.8 },
            &[],
        )
        .unwrap();
        let (ra, rb) = (a.m_x.unwrap().ratio, b.m_x.unwrap().ratio);
        assert!((ra - rb).abs() < 1e-6 * ra, "{ra} vs {rb}");
    }

    #[test]
    fn weak_estimate_on_flat_space() {
        let chart = catalog::flat_r4_chart(50.0);
        let p = chart.point([0.5, -0.3, 1.0, 2.0]);
        let rep = weak_estimate_check(&chart, &p, 4.0, 3.0, &cfg()).unwrap();
        assert!(rep.pass);
        // LHS = s⁻ᵏ ≤ 2ᵏ s⁻ᵏ.
        assert!((rep.lhs - 4.0f64.powf(-3.0)).abs() < 1e-12);
    }

    #[test]
    fn weak_estimate_constant_curvature_margin() {
        let chart = catalog::two_sphere_chart(1.5);
        let p = chart.point([1.2, 0.5, 0.0, 0.0]);
        let s = max_safe_probe_radius(&chart, &p).unwrap().min(1.2);
        let rep = weak_estimate_check(&chart, &p, s, 4.0, &cfg()).unwrap();
        assert!(rep.pass, "margin {}", rep.margin);
        assert!(rep.margin > 0.0);
    }

    /// r_R^s, ρ^s and M_f^s are nondecreasing in s.
    #[test]
    fn probes_are_monotone_in_s() {
        let chart = catalog::two_sphere_chart(2.0);
        let p = chart.point([1.5, 0.7, 0.0, 0.0]);
        let c = cfg();
        let ladder = [0.4, 0.8, 1.6, 2.4];
        let mut prev = (0.0f64, 0.0f64, 0.0f64);
        for s in ladder {
            let (rc, _) = curvature_radius(&chart, &p, s, &c).unwrap();
            let (re, _) = energy_radius(&chart, &p, s, &c).unwrap();
            let m = maximal_function(&chart, |q| rm_at(&chart, q).map(|v| v * v), &p, s, &c)
                .unwrap();
            assert!(rc >= prev.0 - 1e-12 && re >= prev.1 - 1e-12 && m >= prev.2 - 1e-12);
            prev = (rc, re, m);
        }
    }

    #[test]
    fn energy_radius_below_twice_curvature_radius() {
        let entry = catalog::catalog_metric("eguchi-hanson").unwrap();
        let c = cfg();
        for coords in [[1.3, 1.0, 1.5, 1.5], [1.6, 1.6, 3.0, 3.0], [2.5, 1.2, 2.0, 4.0]] {
            let p = entry.chart.point(coords);
            let s = max_safe_probe_radius(&entry.chart, &p).unwrap().min(0.8);
            let (rc, _) = curvature_radius(&entry.chart, &p, s, &c).unwrap();
            let (re, _) = energy_radius(&entry.chart, &p, s, &c).unwrap();
            assert!(
                re <= 2.0 * rc + 1e-9,
                "rho = {re} vs 2 r_R = {}",
                2.0 * rc
            );
        }
    }
}
