//! Catalog of example manifolds with Killing fields and known invariants.
//! Each entry is a fixture for the theorem drivers: a metric chart with exact
//! derivatives, the Killing field, the zero-set data whose Euler
//! characteristics enter the residue balance, and known asymptotic values
//! with provenance tags.

mod eguchi_hanson;
mod flat;
mod taub_nut;

pub use eguchi_hanson::{eguchi_hanson_chart, eh_norm_rm_sq};
pub use flat::{flat_r2_chart, flat_r4_chart, four_sphere_chart, two_sphere_chart};
pub use taub_nut::{taub_nut_chart, tn_norm_rm_sq};

use crate::chart::{DomainBox, MetricChart};
use crate::error::GeomError;
use crate::killing::KillingField;
use crate::linalg::V4;
use crate::report::{Provenance, TaggedValue};
use crate::Result;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroSetKind {
    /// Isolated fixed point of the circle action.
    Nut,
    /// Two-dimensional fixed surface.
    Bolt,
    /// Non-compact fixed plane (excluded from residue balances).
    Plane,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroSetComponent {
    pub kind: ZeroSetKind,
    /// Euler characteristic contribution, when the component is compact.
    pub chi: Option<f64>,
    /// Geodesic radius of the component measured from the profile center.
    pub geodesic_radius: f64,
    pub location: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KnownInvariants {
    /// Asymptotic volume ratio as a multiple of the Euclidean π²/2.
    pub avr_ratio: Option<TaggedValue>,
    /// Total energy `(1/8π²) ∫ |Rm|²`.
    pub energy_over_8pi2: Option<TaggedValue>,
    pub notes: Vec<String>,
}

/// Cohomogeneity-one reduction data: a radial integration parameter `u`,
/// the orbit parametrization, and quadrature resolutions.
#[derive(Clone)]
pub struct RadialGeometry {
    pub u_lo: f64,
    pub u_hi: f64,
    pub r_of_u: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub dr_du: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Chart point of the orbit at radial coordinate `r` and given angles.
    pub point_of: Arc<dyn Fn(f64, [f64; 3]) -> V4 + Send + Sync>,
    /// Radial coordinate of an arbitrary chart point.
    pub radial_of_point: Arc<dyn Fn(&V4) -> f64 + Send + Sync>,
    pub angle_box: [(f64, f64); 3],
    pub angle_periodic: [bool; 3],
    pub angle_cells: [usize; 3],
    /// Default number of radial cells for profiles.
    pub default_cells: usize,
}

impl std::fmt::Debug for RadialGeometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialGeometry")
            .field("u_range", &(self.u_lo, self.u_hi))
            .field("angle_box", &self.angle_box)
            .finish()
    }
}

/// A named example manifold with Killing field and known invariants.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub chart: MetricChart,
    pub killing: KillingField,
    pub zero_set: Vec<ZeroSetComponent>,
    pub known: KnownInvariants,
    pub radial: Option<RadialGeometry>,
    /// Sub-box of the chart domain from which test points are drawn; chosen
    /// away from coordinate degeneracies and the null set of the field.
    pub sample_box: DomainBox,
}

impl CatalogEntry {
    /// Sum of χ over compact zero-set components inside geodesic radius `s`.
    pub fn chi_inside(&self, s: f64) -> f64 {
        self.zero_set
            .iter()
            .filter(|z| z.geodesic_radius < s)
            .filter_map(|z| z.chi)
            .sum()
    }

    /// Representative chart points on the zero set of the Killing field,
    /// used by the variation probes to certify infinite ratios.
    pub fn zero_representatives(&self) -> Vec<V4> {
        match self.name.as_str() {
            "flat-r4-rot2" | "flat-r2-rot" => vec![[0.0; 4]],
            "flat-r4-rot1" => {
                // A grid on the fixed plane {x0 = x1 = 0}.
                let mut out = Vec::new();
                for z in [-4.0, -1.0, 0.0, 1.0, 4.0] {
                    for w in [-4.0, -1.0, 0.0, 1.0, 4.0] {
                        out.push([0.0, 0.0, z, w]);
                    }
                }
                out
            }
            "eguchi-hanson" => {
                let a = self.params[0].1;
                let mut out = Vec::new();
                for th in [0.5, 1.5, 2.5] {
                    for ph in [1.0, 3.0, 5.0] {
                        out.push([a * (1.0 + 1e-9), th, ph, 3.0]);
                    }
                }
                out
            }
            "taub-nut" => {
                let m = self.params[0].1;
                vec![[1e-8 * m, 1.5, 3.0, 4.0 * PI * m]]
            }
            _ => vec![],
        }
    }
}

/// Serializable catalog listing row.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogRow {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub dimension: usize,
    pub zero_set: Vec<ZeroSetComponent>,
    pub known: KnownInvariants,
}

/// Known invariants and zero-set summary for report generation.
pub fn known_invariants(entry: &CatalogEntry) -> CatalogRow {
    CatalogRow {
        name: entry.name.clone(),
        params: entry.params.clone(),
        dimension: entry.chart.dim,
        zero_set: entry.zero_set.clone(),
        known: entry.known.clone(),
    }
}

pub const CATALOG_NAMES: [&str; 5] = [
    "flat-r4-rot1",
    "flat-r4-rot2",
    "eguchi-hanson",
    "taub-nut",
    "flat-r2-rot",
];

/// Look up a catalog metric. Parameterized entries accept `name(value)` or
/// `name(key=value)`, e.g. `eguchi-hanson(1.5)`.
pub fn catalog_metric(name: &str) -> Result<CatalogEntry> {
    let (base, param) = parse_name(name)?;
    match base.as_str() {
        "flat-r4-rot1" => Ok(flat_rot1()),
        "flat-r4-rot2" => Ok(flat_rot2()),
        "eguchi-hanson" => {
            let a = param.unwrap_or(1.0);
            if a <= 0.0 {
                return Err(GeomError::InvalidParameter {
                    name: base,
                    detail: format!("a = {a} must be positive"),
                });
            }
            Ok(eguchi_hanson(a))
        }
        "taub-nut" => {
            let m = param.unwrap_or(1.0);
            if m <= 0.0 {
                return Err(GeomError::InvalidParameter {
                    name: base,
                    detail: format!("m = {m} must be positive"),
                });
            }
            Ok(taub_nut(m))
        }
        "flat-r2-rot" => Ok(flat_r2_rot()),
        _ => Err(GeomError::UnknownMetric(name.to_string())),
    }
}

fn parse_name(name: &str) -> Result<(String, Option<f64>)> {
    let name = name.trim();
    if let Some(open) = name.find('(') {
        let base = name[..open].to_string();
        let inner = name[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| GeomError::UnknownMetric(name.to_string()))?;
        let value_str = inner.split('=').next_back().unwrap_or(inner).trim();
        let value = value_str.parse::<f64>().map_err(|_| GeomError::InvalidParameter {
            name: base.clone(),
            detail: format!("cannot parse parameter `{inner}`"),
        })?;
        Ok((base, Some(value)))
    } else {
        Ok((name.to_string(), None))
    }
}

fn flat_radial(half_width: f64) -> RadialGeometry {
    RadialGeometry {
        u_lo: 1e-9,
        u_hi: 0.98 * half_width,
        r_of_u: Arc::new(|u| u),
        dr_du: Arc::new(|_| 1.0),
        point_of: Arc::new(|r, a| {
            let (chi, th, ph) = (a[0], a[1], a[2]);
            [
                r * chi.cos(),
                r * chi.sin() * th.cos(),
                r * chi.sin() * th.sin() * ph.cos(),
                r * chi.sin() * th.sin() * ph.sin(),
            ]
        }),
        radial_of_point: Arc::new(|q| q.iter().map(|x| x * x).sum::<f64>().sqrt()),
        angle_box: [(0.0, PI), (0.0, PI), (0.0, 2.0 * PI)],
        angle_periodic: [false, false, true],
        angle_cells: [24, 24, 6],
        default_cells: 600,
    }
}

fn flat_rot1() -> CatalogEntry {
    CatalogEntry {
        name: "flat-r4-rot1".into(),
        params: vec![],
        chart: flat_r4_chart(50.0),
        killing: KillingField::plane_rotation("rot01", 0, 1),
        zero_set: vec![ZeroSetComponent {
            kind: ZeroSetKind::Plane,
            chi: None,
            geodesic_radius: 0.0,
            location: "{x0 = x1 = 0} plane (non-compact)".into(),
        }],
        known: KnownInvariants {
            avr_ratio: Some(TaggedValue::new(1.0, Provenance::Trivial)),
            energy_over_8pi2: Some(TaggedValue::new(0.0, Provenance::Trivial)),
            notes: vec![
                "transgression form vanishes identically (integrable perpendicular distribution)"
                    .into(),
            ],
        },
        radial: Some(flat_radial(50.0)),
        sample_box: DomainBox::new(4, [0.5, 0.5, -3.0, -3.0], [3.0, 3.0, 3.0, 3.0]),
    }
}

fn flat_rot2() -> CatalogEntry {
    CatalogEntry {
        name: "flat-r4-rot2".into(),
        params: vec![],
        chart: flat_r4_chart(50.0),
        killing: KillingField::two_plane_rotation("rot2"),
        zero_set: vec![ZeroSetComponent {
            kind: ZeroSetKind::Nut,
            chi: Some(1.0),
            geodesic_radius: 0.0,
            location: "origin".into(),
        }],
        known: KnownInvariants {
            avr_ratio: Some(TaggedValue::new(1.0, Provenance::Trivial)),
            energy_over_8pi2: Some(TaggedValue::new(0.0, Provenance::Trivial)),
            notes: vec!["finite-radius balance: 0 = 1 + (−1) at every radius".into()],
        },
        radial: Some(flat_radial(50.0)),
        sample_box: DomainBox::new(4, [0.5, 0.5, -3.0, -3.0], [3.0, 3.0, 3.0, 3.0]),
    }
}

fn eguchi_hanson(a: f64) -> CatalogEntry {
    let r_max = 350.0 * a;
    CatalogEntry {
        name: "eguchi-hanson".into(),
        params: vec![("a".into(), a)],
        chart: eguchi_hanson_chart(a),
        killing: KillingField::coordinate_axis("d_psi", 3),
        zero_set: vec![ZeroSetComponent {
            kind: ZeroSetKind::Bolt,
            chi: Some(2.0),
            geodesic_radius: 0.0,
            location: format!("bolt 2-sphere at r = {a}"),
        }],
        known: KnownInvariants {
            avr_ratio: Some(TaggedValue::new(0.5, Provenance::Paper)),
            energy_over_8pi2: Some(TaggedValue::new(1.5, Provenance::Paper)),
            notes: vec!["curvature is self-dual; |Rm|² = 384 a⁸/r¹²".into()],
        },
        radial: Some(RadialGeometry {
            u_lo: 1e-4 * a.sqrt(),
            u_hi: (r_max - a).sqrt(),
            r_of_u: Arc::new(move |u| a + u * u),
            dr_du: Arc::new(|u| 2.0 * u),
            point_of: Arc::new(|r, ang| [r, ang[0], ang[1], ang[2]]),
            radial_of_point: Arc::new(|q| q[0]),
            angle_box: [(0.0, PI), (0.0, 2.0 * PI), (0.0, 2.0 * PI)],
            angle_periodic: [false, true, true],
            angle_cells: [24, 4, 4],
            default_cells: 1600,
        }),
        sample_box: DomainBox::new(
            4,
            [1.3 * a, 0.5, 0.5, 0.5],
            [6.0 * a, PI - 0.5, 2.0 * PI - 0.5, 2.0 * PI - 0.5],
        ),
    }
}

fn taub_nut(m: f64) -> CatalogEntry {
    let rho_max = 350.0 * m;
    CatalogEntry {
        name: "taub-nut".into(),
        params: vec![("m".into(), m)],
        chart: taub_nut_chart(m),
        killing: KillingField::coordinate_axis("d_tau", 3),
        zero_set: vec![ZeroSetComponent {
            kind: ZeroSetKind::Nut,
            chi: Some(1.0),
            geodesic_radius: 0.0,
            location: "nut at rho = 0".into(),
        }],
        known: KnownInvariants {
            avr_ratio: Some(TaggedValue::new(0.0, Provenance::Derived)),
            energy_over_8pi2: Some(TaggedValue::new(1.0, Provenance::Derived)),
            notes: vec!["ALF: cubic volume growth, boundary term vanishes at infinity".into()],
        },
        radial: Some(RadialGeometry {
            u_lo: 1e-4 * m.sqrt(),
            u_hi: rho_max.sqrt(),
            r_of_u: Arc::new(|u| u * u),
            dr_du: Arc::new(|u| 2.0 * u),
            point_of: Arc::new(|r, ang| [r, ang[0], ang[1], ang[2]]),
            radial_of_point: Arc::new(|q| q[0]),
            angle_box: [(0.0, PI), (0.0, 2.0 * PI), (0.0, 8.0 * PI * m)],
            angle_periodic: [false, true, true],
            angle_cells: [24, 4, 4],
            default_cells: 1600,
        }),
        sample_box: DomainBox::new(
            4,
            [0.8 * m, 0.5, 0.5, 1.0],
            [6.0 * m, PI - 0.5, 2.0 * PI - 0.5, 8.0 * PI * m - 1.0],
        ),
    }
}

fn flat_r2_rot() -> CatalogEntry {
    CatalogEntry {
        name: "flat-r2-rot".into(),
        params: vec![],
        chart: flat_r2_chart(50.0),
        killing: KillingField::plane_rotation("rot", 0, 1),
        zero_set: vec![ZeroSetComponent {
            kind: ZeroSetKind::Nut,
            chi: Some(1.0),
            geodesic_radius: 0.0,
            location: "origin".into(),
        }],
        known: KnownInvariants {
            avr_ratio: None,
            energy_over_8pi2: Some(TaggedValue::new(0.0, Provenance::Trivial)),
            notes: vec!["plane example: M_X = ∞ without excision".into()],
        },
        radial: None,
        sample_box: DomainBox::new(2, [0.5, 0.5, 0.0, 0.0], [3.0, 3.0, 0.0, 0.0]),
    }
}
