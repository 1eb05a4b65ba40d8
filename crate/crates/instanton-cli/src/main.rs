//! Command-line front end: catalog listing, per-identity verification runs,
//! probe evaluation, and report emission.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error (unknown metric,
//! out-of-domain point, invalid parameter), 4 verification failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use instanton::catalog::{catalog_metric, known_invariants, CatalogEntry, CATALOG_NAMES};
use instanton::error::GeomError;
use instanton::par::ExecMode;
use instanton::probes::{self, ProbeConfig, VariationMode};
use instanton::quadrature::RadialProfile;
use instanton::report::Report;
use instanton::theorems;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_DOMAIN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "instanton", version, about = "Curvature energy identities on Ricci-flat 4-manifolds with Killing fields")]
struct Cli {
    /// Seed for the deterministic samplers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for JSON/CSV artifacts (also: INSTANTON_OUT_DIR).
    #[arg(long, global = true, env = "INSTANTON_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Verify d(TP) = P at sampled points with stencil halving.
    Closure {
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0.02)]
        h: f64,
        /// Maximum residual (at the halved stencil) accepted as a pass.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Finite-radius residue balance at the given geodesic radii.
    Balance {
        #[arg(long)]
        metric: String,
        /// Comma-separated list of geodesic radii.
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        #[arg(long, default_value_t = 1600)]
        cells: usize,
    },
    /// Energy identity: extrapolated energy vs residue minus volume ratio.
    Thm3 {
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        #[arg(long, default_value_t = 1600)]
        cells: usize,
    },
    /// Annulus energy bound with measured constant.
    Thm2 {
        #[arg(long)]
        metric: String,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1600)]
        cells: usize,
    },
    /// Pointwise estimator probes.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
        #[command(flatten)]
        spec: ProbeSpec,
    },
    /// Emit the radial profile table as CSV.
    Profile {
        #[arg(long)]
        metric: String,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1600)]
        cells: usize,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List catalog entries with known invariants and provenance.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    CurvatureRadius,
    EnergyRadius,
    Variation,
    Maximal,
}

#[derive(Args)]
struct ProbeSpec {
    #[arg(long)]
    metric: String,
    /// Comma-separated chart coordinates.
    #[arg(long, value_delimiter = ',')]
    point: Vec<f64>,
    #[arg(long)]
    s: f64,
    /// Excise the radial ball of this geodesic radius (variation only).
    #[arg(long)]
    excise_radius: Option<f64>,
    /// Report the asymptotic variation sequence over these scales
    /// (variation only; comma-separated).
    #[arg(long, value_delimiter = ',')]
    ladder: Option<Vec<f64>>,
    #[arg(long, default_value_t = 96)]
    directions: usize,
    #[arg(long, default_value_t = 32)]
    radial: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.message);
            ExitCode::from(err.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: format!("error: {e}"),
        }
    }
}

fn verify_fail(msg: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_VERIFY,
        message: format!("verification failed: {}", msg.into()),
    }
}

fn emit<T: Serialize>(cli: &Cli, kind: &str, metric: Option<&str>, body: T) -> Result<(), CliError> {
    let report = Report::new(kind, metric.map(str::to_string), cli.seed, body);
    let json = report.to_json();
    println!("{json}");
    if let Some(dir) = &cli.out_dir {
        let name = match metric {
            Some(m) => format!("{kind}-{}.json", m.replace(['(', ')', '='], "_")),
            None => format!("{kind}.json"),
        };
        write_artifact(dir, &name, &json)?;
    }
    Ok(())
}

fn write_artifact(dir: &PathBuf, name: &str, content: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError {
        code: EXIT_DOMAIN,
        message: format!("cannot create output dir: {e}"),
    })?;
    std::fs::write(dir.join(name), content).map_err(|e| CliError {
        code: EXIT_DOMAIN,
        message: format!("cannot write {name}: {e}"),
    })
}

fn entry_of(name: &str) -> Result<CatalogEntry, CliError> {
    Ok(catalog_metric(name)?)
}

fn point_of(entry: &CatalogEntry, coords: &[f64]) -> Result<instanton::ChartPoint, CliError> {
    if coords.len() != entry.chart.dim {
        return Err(CliError {
            code: EXIT_DOMAIN,
            message: format!(
                "error: point has {} coordinates but `{}` is {}-dimensional",
                coords.len(),
                entry.name,
                entry.chart.dim
            ),
        });
    }
    let mut c = [0.0; 4];
    c[..coords.len()].copy_from_slice(coords);
    let p = entry.chart.point(c);
    entry.chart.check_point(&p, 0.0)?;
    Ok(p)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mode = ExecMode::default();
    match &cli.command {
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let rows: Vec<_> = CATALOG_NAMES
                    .iter()
                    .map(|n| known_invariants(&catalog_metric(n).unwrap()))
                    .collect();
                emit(cli, "catalog", None, rows)
            }
        },
        Command::Closure {
            metric,
            points,
            h,
            tol,
        } => {
            let entry = entry_of(metric)?;
            let report = theorems::verify_closure(&entry, *points, *h, cli.seed, mode)?;
            emit(cli, "closure", Some(metric), &report)?;
            if let Some(tol) = tol {
                for row in &report.rows {
                    if row.max_residual_h_half > *tol {
                        return Err(verify_fail(format!(
                            "{} closure residual {:.3e} > {tol:.3e}",
                            row.kind, row.max_residual_h_half
                        )));
                    }
                }
            }
            Ok(())
        }
        Command::Balance {
            metric,
            radii,
            tol,
            cells,
        } => {
            let entry = entry_of(metric)?;
            let profile = RadialProfile::build(&entry, *cells, mode)?;
            let report = theorems::verify_balance(&entry, &profile, radii)?;
            emit(cli, "balance", Some(metric), &report)?;
            if let Some(dir) = &cli.out_dir {
                write_artifact(dir, &format!("balance-{metric}.csv"), &report.csv())?;
            }
            if report.max_residual > *tol {
                return Err(verify_fail(format!(
                    "balance residual {:.3e} > {tol:.3e}",
                    report.max_residual
                )));
            }
            Ok(())
        }
        Command::Thm3 { metric, tol, cells } => {
            let entry = entry_of(metric)?;
            let profile = RadialProfile::build(&entry, *cells, mode)?;
            let ladder = theorems::default_ladder(&profile, 5);
            let report = theorems::verify_thm3(&entry, &profile, &ladder, *tol)?;
            emit(cli, "thm3", Some(metric), &report)?;
            if let Some(dir) = &cli.out_dir {
                write_artifact(dir, &format!("thm3-ladder-{metric}.csv"), &report.ladder_csv())?;
            }
            if !report.claim.pass {
                return Err(verify_fail(format!(
                    "|lhs − rhs| = {:.3e} > {tol:.3e}",
                    report.difference
                )));
            }
            Ok(())
        }
        Command::Thm2 { metric, t, s, cells } => {
            let entry = entry_of(metric)?;
            let profile = RadialProfile::build(&entry, *cells, mode)?;
            let cfg = ProbeConfig {
                seed: cli.seed,
                ..ProbeConfig::default()
            };
            let report = theorems::thm2_bound(&entry, &profile, *t, *s, &cfg)?;
            emit(cli, "thm2", Some(metric), &report)
        }
        Command::Probe { kind, spec } => run_probe(cli, *kind, spec),
        Command::Profile { metric, out, cells } => {
            let entry = entry_of(metric)?;
            let profile = RadialProfile::build(&entry, *cells, mode)?;
            std::fs::write(out, profile.to_csv()).map_err(|e| CliError {
                code: EXIT_DOMAIN,
                message: format!("cannot write CSV: {e}"),
            })?;
            #[derive(Serialize)]
            struct ProfileSummary {
                cells: usize,
                max_geodesic_radius: f64,
                total_energy_over_8pi2: f64,
                csv: String,
            }
            emit(
                cli,
                "profile",
                Some(metric),
                ProfileSummary {
                    cells: *cells,
                    max_geodesic_radius: profile.max_geodesic_radius(),
                    total_energy_over_8pi2: profile.total_energy()
                        / (8.0 * std::f64::consts::PI * std::f64::consts::PI),
                    csv: out.display().to_string(),
                },
            )
        }
    }
}

fn run_probe(cli: &Cli, kind: ProbeKind, spec: &ProbeSpec) -> Result<(), CliError> {
    let entry = entry_of(&spec.metric)?;
    let p = point_of(&entry, &spec.point)?;
    let cfg = ProbeConfig {
        n_directions: spec.directions,
        n_radial: spec.radial,
        seed: cli.seed,
        ..ProbeConfig::default()
    };
    let zeros = entry.zero_representatives();
    match kind {
        ProbeKind::CurvatureRadius => {
            let (r, bracket) = probes::curvature_radius(&entry.chart, &p, spec.s, &cfg)?;
            #[derive(Serialize)]
            struct Out {
                s: f64,
                r_curv: f64,
                bracket: probes::Bracket,
            }
            emit(cli, "probe-curvature-radius", Some(&spec.metric), Out { s: spec.s, r_curv: r, bracket })
        }
        ProbeKind::EnergyRadius => {
            let (rho, bracket) = probes::energy_radius(&entry.chart, &p, spec.s, &cfg)?;
            let (rc, _) = probes::curvature_radius(&entry.chart, &p, spec.s, &cfg)?;
            #[derive(Serialize)]
            struct Out {
                s: f64,
                rho: f64,
                bracket: probes::Bracket,
                r_curv: f64,
                epsilon_0: f64,
                twice_r_curv_geq_rho: bool,
            }
            emit(
                cli,
                "probe-energy-radius",
                Some(&spec.metric),
                Out {
                    s: spec.s,
                    rho,
                    bracket,
                    r_curv: rc,
                    epsilon_0: cfg.epsilon_0,
                    twice_r_curv_geq_rho: 2.0 * rc >= rho,
                },
            )
        }
        ProbeKind::Variation => {
            let mut result = match spec.excise_radius {
                None => probes::local_variation(
                    &entry.chart,
                    &entry.killing,
                    &p,
                    &cfg,
                    VariationMode::Pointwise { s: spec.s },
                    &zeros,
                )?,
                Some(excise) => {
                    // The excision is the radial ball of geodesic radius
                    // `excise` about the profile center.
                    let profile = RadialProfile::build(&entry, 400, ExecMode::default())?;
                    let geo = entry.radial.as_ref().ok_or_else(|| {
                        GeomError::Invalid(format!("{} has no radial geometry", entry.name))
                    })?;
                    let radial_of = geo.radial_of_point.clone();
                    let om = move |q: &[f64; 4]| profile.geodesic_of_r(radial_of(q)) < excise;
                    probes::local_variation(
                        &entry.chart,
                        &entry.killing,
                        &p,
                        &cfg,
                        VariationMode::Excised { s: spec.s, omega: &om },
                        &zeros,
                    )?
                }
            };
            if let Some(rungs) = &spec.ladder {
                let profile = RadialProfile::build(&entry, 800, ExecMode::default())?;
                result.m_x_infty_estimate =
                    theorems::m_x_infty_ladder(&entry, &profile, rungs, &cfg)?;
            }
            emit(cli, "probe-variation", Some(&spec.metric), &result)
        }
        ProbeKind::Maximal => {
            let m = probes::maximal_function(
                &entry.chart,
                |q| {
                    instanton::curvature::riemann(&entry.chart, &entry.chart.point(*q))
                        .map(|c| c.energy_density())
                },
                &p,
                spec.s,
                &cfg,
            )?;
            #[derive(Serialize)]
            struct Out {
                s: f64,
                maximal_rm_sq: f64,
            }
            emit(cli, "probe-maximal", Some(&spec.metric), Out { s: spec.s, maximal_rm_sq: m })
        }
    }
}
