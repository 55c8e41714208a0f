//! One function per subcommand. Each returns the `results` payload of the
//! report plus diagnostics; sweeps return CSV rows.

use std::f64::consts::PI;
use std::path::Path;

use anyhow::Result;
use qgl_core::bounds::{self, BoundReport, CurvatureLimit, UniformStats};
use qgl_core::clock::OrthogonalityScan;
use qgl_core::regge::{BoundCheck, GaussBonnet, ReggeConvention};
use qgl_core::regions::{self, HorizonCheck, RadarCoordinates, WorldSheet};
use qgl_core::units::{planck_scale, PlanckScale};
use qgl_core::{
    Axis, ChartPoint, Error, Estimate, MetricField, PhysicalConstants, RadiusProfile, Sampler,
};
use serde::Serialize;

use crate::scenario::{self, invalid, ClockSource, Scenario, SolidSpec, SweepSpec};

/// Independent sub-seed for stream `stream` of a scenario seed (SplitMix64).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const VOLUME_STREAM: u64 = 0;
const TRACE_STREAM: u64 = 1;
const CURVATURE_STREAM: u64 = 2;

/// A CSV table: header plus rows of numbers.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct RegionSummary {
    pub axis: &'static str,
    pub covariant_radius_m: f64,
    pub duration_s: f64,
    pub worldsheet: WorldSheet,
    pub four_volume: Option<Estimate>,
    pub accepted_samples: Option<usize>,
    pub horizon: Option<HorizonCheck>,
}

#[derive(Debug, Serialize)]
pub struct CriticalIdentity {
    pub radius_m: f64,
    pub duration_s: f64,
    pub critical_energy_j: f64,
    pub ml_at_critical_energy: f64,
    pub geometric: f64,
    pub relative_difference: f64,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct Consistency {
    pub z_score: f64,
    pub within_3_sigma: bool,
}

#[derive(Debug, Serialize)]
pub struct Holographic {
    pub quanta_bound: f64,
    pub wavelength_m: f64,
    pub sphere_area_m2: f64,
    pub entropy_bits: f64,
    /// Geometric event count of the region against the bits its bounding
    /// sphere can hold.
    pub events: f64,
    pub events_exceed_bits: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundsResults {
    pub region: RegionSummary,
    pub geometric: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometric_at_horizon: Option<BoundReport>,
    pub stress_energy: BoundReport,
    pub curvature: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ml_direct: Option<BoundReport>,
    pub critical_identity: CriticalIdentity,
    pub eq2_vs_eq3: Consistency,
    pub curvature_limit: CurvatureLimit,
    pub holographic: Holographic,
}

fn axis_name(axis: &Axis) -> &'static str {
    match axis {
        Axis::Inertial { .. } => "inertial",
        Axis::Static { .. } => "static",
        Axis::Comoving { .. } => "comoving",
        Axis::Path(_) => "geodesic",
    }
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn sampler(seed: u64, stream: u64, spec: &SolidSpec) -> Result<Sampler> {
    if spec.n_samples == 0 {
        return Err(invalid("solid.n_samples must be positive"));
    }
    Ok(Sampler::new(derive_seed(seed, stream), spec.n_samples))
}

pub fn bounds(
    scenario: &Scenario,
    k: PhysicalConstants,
    seed: u64,
    diagnostics: &mut Vec<String>,
) -> Result<BoundsResults> {
    let st = scenario::spacetime(scenario, k)?;
    let spec = scenario::solid_spec(scenario)?;
    let solid = scenario::solid(&st, spec)?;
    let r = solid.covariant_radius();
    let t = solid.duration;
    if r <= 0.0 {
        return Err(invalid("bounds need a solid with positive radius"));
    }

    let volume = regions::integrate_solid(&st, &solid, sampler(seed, VOLUME_STREAM, spec)?, 0.0)?;
    let horizon = regions::horizon_check(&st, &solid)?;
    let geometric = bounds::geometric_report(&k, &solid)?;
    let geometric_at_horizon = match horizon {
        HorizonCheck::Trapped { effective_radius, .. } => {
            diagnostics.push(format!(
                "enclosed energy exceeds the critical energy; horizon radius {effective_radius:e} m used for the geometric limit"
            ));
            let mut report = bounds::geometric_report(&k, &solid)?;
            report.n_max_events = bounds::qgl_bound(&k, effective_radius, t)?;
            report.inputs.radius_m = Some(effective_radius);
            report.inputs.area_m_s = Some(effective_radius * t);
            report.wavelength_m = Some(2.0 * effective_radius);
            Some(report)
        }
        HorizonCheck::Ok { .. } => None,
    };
    let stress_energy = bounds::covariant_ml_bound(
        &st,
        &solid,
        sampler(seed, TRACE_STREAM, spec)?,
        spec.lambda_adjustment,
    )?;
    let curvature = bounds::curvature_event_bound(&st, &solid, sampler(seed, CURVATURE_STREAM, spec)?)?;
    let ml_direct = scenario
        .energy_j
        .map(|e| bounds::ml_report(&k, e, t))
        .transpose()?;

    let critical_energy = regions::critical_energy(&k, r)?;
    let ml_at_critical = bounds::ml_event_bound(&k, critical_energy, t)?;
    let eq1 = bounds::qgl_bound(&k, r, t)?;
    let identity_gap = relative(ml_at_critical, eq1);

    let z = stress_energy.estimate().z_score(&curvature.estimate());
    if z >= 3.0 {
        diagnostics.push(format!("stress-energy and curvature counts differ by {z:.2} standard errors"));
    }
    let limit = bounds::curvature_limit(
        curvature.curvature_integral.expect("curvature reports carry the integral"),
        geometric.inputs.area_m_s.unwrap_or(r * t),
    )?;
    let sphere_area = 4.0 * PI * r * r;
    let entropy_bits = bounds::covariant_entropy_bound(&k, sphere_area)?;

    Ok(BoundsResults {
        region: RegionSummary {
            axis: axis_name(&solid.axis),
            covariant_radius_m: r,
            duration_s: t,
            worldsheet: regions::worldsheet_area(&solid),
            four_volume: Some(volume.volume),
            accepted_samples: Some(volume.accepted),
            horizon: Some(horizon),
        },
        geometric,
        geometric_at_horizon,
        stress_energy,
        curvature,
        ml_direct,
        critical_identity: CriticalIdentity {
            radius_m: r,
            duration_s: t,
            critical_energy_j: critical_energy,
            ml_at_critical_energy: ml_at_critical,
            geometric: eq1,
            relative_difference: identity_gap,
            holds: identity_gap <= 1e-12,
        },
        eq2_vs_eq3: Consistency {
            z_score: z,
            within_3_sigma: z < 3.0,
        },
        curvature_limit: limit,
        holographic: Holographic {
            quanta_bound: bounds::holographic_quanta_bound(&k, r)?,
            wavelength_m: 2.0 * r,
            sphere_area_m2: sphere_area,
            entropy_bits,
            events: geometric.n_max_events,
            events_exceed_bits: bounds::ops_exceed_bits(geometric.n_max_events, entropy_bits),
        },
    })
}

/// Applies one sweep value to a copy of the scenario.
fn with_parameter(scenario: &Scenario, k: &PhysicalConstants, parameter: &str, value: f64) -> Result<Scenario> {
    let mut s = scenario.clone();
    match parameter {
        "compactness" => {
            let solid = scenario::solid_spec(&s)?.clone();
            let reference = profile_radius(&solid.profile)?;
            let mass = |radius: f64| value * radius * k.c * k.c / (2.0 * k.g);
            s.metric = Some(match s.metric {
                Some(MetricField::WeakFieldDustBall { radius_m, .. }) => MetricField::WeakFieldDustBall {
                    mass_kg: mass(reference),
                    radius_m,
                },
                Some(MetricField::SchwarzschildInterior { radius_m, .. }) => MetricField::SchwarzschildInterior {
                    mass_kg: mass(radius_m),
                    radius_m,
                },
                _ => return Err(invalid("compactness sweeps need a dust ball or interior star metric")),
            });
        }
        "radius" => {
            let solid = s.solid.as_mut().ok_or_else(|| invalid("scenario has no `solid` block"))?;
            match &mut solid.profile {
                RadiusProfile::Constant { radius_m }
                | RadiusProfile::Cone { radius_m }
                | RadiusProfile::Spindle { radius_m } => *radius_m = value,
                RadiusProfile::Table { .. } => {
                    return Err(invalid("radius sweeps need a constant, cone or spindle profile"))
                }
            }
        }
        "duration" => {
            let solid = s.solid.as_mut().ok_or_else(|| invalid("scenario has no `solid` block"))?;
            solid.duration_s = value;
        }
        "omega" => {
            let mut found = false;
            for clock in &mut s.clocks {
                if let ClockSource::Qubit { omega } = &mut clock.source {
                    *omega = value;
                    found = true;
                }
            }
            if !found {
                return Err(invalid("omega sweeps need a qubit clock"));
            }
        }
        "age" => {
            let c = s.cosmology.as_mut().ok_or_else(|| invalid("scenario has no `cosmology` block"))?;
            c.age_s = value;
            c.radius_m = None;
        }
        other => return Err(invalid(format!("unknown sweep parameter `{other}`"))),
    }
    Ok(s)
}

fn profile_radius(profile: &RadiusProfile) -> Result<f64> {
    match profile {
        RadiusProfile::Constant { radius_m }
        | RadiusProfile::Cone { radius_m }
        | RadiusProfile::Spindle { radius_m } => Ok(*radius_m),
        RadiusProfile::Table { radius_m, .. } => Ok(radius_m.iter().copied().fold(0.0, f64::max)),
    }
}

fn check_parameter(command: &str, parameter: &str) -> Result<()> {
    let allowed: &[&str] = match command {
        "bounds" => &["compactness", "radius", "duration"],
        "region" => &["radius", "duration"],
        "clock" => &["omega"],
        "regge" => &["refinement"],
        "cosmo" => &["age"],
        _ => &[],
    };
    if allowed.contains(&parameter) {
        Ok(())
    } else {
        Err(invalid(format!(
            "unknown sweep parameter `{parameter}` for `{command}` (expected one of: {})",
            allowed.join(", ")
        )))
    }
}

pub fn sweep(
    command: &str,
    scenario: &Scenario,
    k: PhysicalConstants,
    seed: u64,
    spec: &SweepSpec,
) -> Result<Table> {
    spec.validate()?;
    check_parameter(command, &spec.parameter)?;
    let values = spec.values();
    match command {
        "bounds" => {
            let mut rows = Vec::with_capacity(values.len());
            for (step, v) in values.iter().enumerate() {
                let s = with_parameter(scenario, &k, &spec.parameter, *v)?;
                let mut notes = Vec::new();
                let b = bounds(&s, k, derive_seed(seed, 1000 + step as u64), &mut notes)?;
                let st = scenario::spacetime(&s, k)?;
                let compactness = st
                    .schwarzschild_radius()
                    .map_or(0.0, |rs| rs / b.region.covariant_radius_m);
                rows.push(vec![
                    *v,
                    compactness,
                    b.geometric.n_max_events,
                    b.stress_energy.n_max_events,
                    b.stress_energy.std_error,
                    b.curvature.n_max_events,
                    b.curvature.std_error,
                    b.stress_energy.saturation_ratio.unwrap_or(f64::NAN),
                    b.curvature_limit.ratio.value,
                    b.curvature_limit.ratio.std_error,
                ]);
            }
            Ok(Table {
                header: vec![
                    spec_name(&spec.parameter),
                    "compactness",
                    "eq1_events",
                    "eq2_events",
                    "eq2_std_error",
                    "eq3_events",
                    "eq3_std_error",
                    "eq2_saturation",
                    "curvature_ratio",
                    "curvature_ratio_std_error",
                ],
                rows,
            })
        }
        "region" => {
            let mut rows = Vec::with_capacity(values.len());
            for (step, v) in values.iter().enumerate() {
                let s = with_parameter(scenario, &k, &spec.parameter, *v)?;
                let mut notes = Vec::new();
                let r = region(&s, k, derive_seed(seed, 1000 + step as u64), &mut notes)?;
                let vol = r.summary.four_volume.unwrap_or(Estimate {
                    value: f64::NAN,
                    std_error: f64::NAN,
                });
                rows.push(vec![*v, vol.value, vol.std_error, r.summary.worldsheet.area]);
            }
            Ok(Table {
                header: vec![spec_name(&spec.parameter), "four_volume", "four_volume_std_error", "worldsheet_area"],
                rows,
            })
        }
        "clock" => {
            let mut rows = Vec::with_capacity(values.len());
            for v in &values {
                let s = with_parameter(scenario, &k, &spec.parameter, *v)?;
                let clocks = clock(&s, k, &mut Vec::new())?;
                let q = clocks
                    .iter()
                    .zip(&s.clocks)
                    .find(|(_, c)| matches!(c.source, ClockSource::Qubit { .. }))
                    .map(|(r, _)| r)
                    .expect("omega sweeps need a qubit clock");
                let t = q.first_orthogonal_time_s.unwrap_or(f64::NAN);
                rows.push(vec![
                    *v,
                    t,
                    PI / v,
                    relative(t, PI / v),
                    q.ml_bound_s.unwrap_or(f64::INFINITY),
                    q.heisenberg_bound_s.unwrap_or(f64::INFINITY),
                ]);
            }
            Ok(Table {
                header: vec!["omega", "t_orthogonal_s", "pi_over_omega_s", "relative_error", "ml_bound_s", "heisenberg_bound_s"],
                rows,
            })
        }
        "regge" => {
            let mut rows = Vec::with_capacity(values.len());
            for v in &values {
                let level = v.round();
                if !(0.0..=6.0).contains(&level) {
                    return Err(invalid("refinement levels must lie in 0..=6"));
                }
                let c = qgl_core::regge::icosphere(level as usize)?;
                let gb = c.gauss_bonnet_check()?;
                let b = c.bound_check();
                rows.push(vec![level, c.vertex_count() as f64, gb.sum_deficits, b.max_deficit, gb.residual]);
            }
            Ok(Table {
                header: vec!["refinement", "vertices", "sum_deficits", "max_deficit", "gauss_bonnet_residual"],
                rows,
            })
        }
        "cosmo" => {
            let mut rows = Vec::with_capacity(values.len());
            for v in &values {
                let s = with_parameter(scenario, &k, &spec.parameter, *v)?;
                let c = cosmo(&s, k)?;
                rows.push(vec![
                    *v,
                    c.ops_since_big_bang,
                    c.log10_ops,
                    c.uniform.tick_spacing_s,
                    c.uniform.spatial_resolution_m,
                    c.uniform.cells,
                    c.uniform.ticks_per_clock,
                ]);
            }
            Ok(Table {
                header: vec![
                    "age_s",
                    "ops_since_big_bang",
                    "log10_ops",
                    "tick_spacing_s",
                    "spatial_resolution_m",
                    "cells",
                    "ticks_per_clock",
                ],
                rows,
            })
        }
        _ => unreachable!("subcommands are fixed by the argument parser"),
    }
}

fn spec_name(parameter: &str) -> &'static str {
    match parameter {
        "compactness" => "compactness_input",
        "radius" => "radius_m",
        "duration" => "duration_s",
        _ => "value",
    }
}

/// `# monotone <column>: ...` lines for every column after the first.
pub fn monotonicity(table: &Table) -> Vec<String> {
    (1..table.header.len())
        .map(|j| {
            let col: Vec<f64> = table.rows.iter().map(|r| r[j]).collect();
            let up = col.windows(2).all(|w| w[1] >= w[0]);
            let down = col.windows(2).all(|w| w[1] <= w[0]);
            let label = match (up, down) {
                (true, true) => "constant",
                (true, false) => "nondecreasing",
                (false, true) => "nonincreasing",
                (false, false) => "mixed",
            };
            format!("monotone {}: {label}", table.header[j])
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ProbeResult {
    pub event: ChartPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radar: Option<RadarCoordinates>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct FlatReference {
    pub exact_four_volume: f64,
    pub z_score: f64,
}

#[derive(Debug, Serialize)]
pub struct RegionResults {
    #[serde(flatten)]
    pub summary: RegionSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat_reference: Option<FlatReference>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis_norm_drift: Option<f64>,
    pub probes: Vec<ProbeResult>,
    #[serde(skip)]
    pub axis_csv: Option<Vec<u8>>,
}

pub fn region(
    scenario: &Scenario,
    k: PhysicalConstants,
    seed: u64,
    diagnostics: &mut Vec<String>,
) -> Result<RegionResults> {
    let st = scenario::spacetime(scenario, k)?;
    let spec = scenario::solid_spec(scenario)?;
    let solid = scenario::solid(&st, spec)?;

    let (four_volume, accepted) = match regions::integrate_solid(&st, &solid, sampler(seed, VOLUME_STREAM, spec)?, 0.0) {
        Ok(r) => (Some(r.volume), Some(r.accepted)),
        Err(Error::Unsupported(msg)) => {
            diagnostics.push(format!("four-volume not computed: {msg}"));
            (None, None)
        }
        Err(e) => return Err(e.into()),
    };
    let horizon = match regions::horizon_check(&st, &solid) {
        Ok(h) => Some(h),
        Err(Error::Unsupported(msg)) => {
            diagnostics.push(format!("horizon check skipped: {msg}"));
            None
        }
        Err(e) => return Err(e.into()),
    };

    let flat_reference = match (st.field(), &solid.profile, four_volume) {
        (MetricField::Minkowski, RadiusProfile::Constant { .. }, Some(v)) => {
            let r = solid.radar_radius_at(0.0);
            let exact = 4.0 / 3.0 * PI * r.powi(3) * solid.duration;
            Some(FlatReference {
                exact_four_volume: exact,
                z_score: v.z_score(&Estimate {
                    value: exact,
                    std_error: 0.0,
                }),
            })
        }
        _ => None,
    };

    let (axis_norm_drift, axis_csv) = match &solid.axis {
        Axis::Path(path) => {
            let mut buf = Vec::new();
            path.write_csv(&mut buf)?;
            (Some(path.max_norm_error(&st)?), Some(buf))
        }
        _ => (None, None),
    };

    let probes = scenario
        .probes
        .iter()
        .map(|event| match regions::radar_coordinates(&st, &solid.axis, event) {
            Ok(radar) => ProbeResult {
                event: *event,
                contains: Some(
                    (0.0..=solid.duration).contains(&radar.tau_mid)
                        && radar.radar_distance <= solid.radar_radius_at(radar.tau_mid),
                ),
                radar: Some(radar),
                error: None,
            },
            Err(e) => ProbeResult {
                event: *event,
                radar: None,
                contains: None,
                error: Some(e.to_string()),
            },
        })
        .collect();

    Ok(RegionResults {
        summary: RegionSummary {
            axis: axis_name(&solid.axis),
            covariant_radius_m: solid.covariant_radius(),
            duration_s: solid.duration,
            worldsheet: regions::worldsheet_area(&solid),
            four_volume,
            accepted_samples: accepted,
            horizon,
        },
        flat_reference,
        axis_norm_drift,
        probes,
        axis_csv,
    })
}

#[derive(Debug, Serialize)]
pub struct ClockResult {
    pub name: String,
    pub dimension: usize,
    pub spectrum_j: Vec<f64>,
    pub energy_mean_j: f64,
    pub energy_std_j: f64,
    /// `None` for a stationary state (infinite bound).
    pub ml_bound_s: Option<f64>,
    pub heisenberg_bound_s: Option<f64>,
    pub scan: OrthogonalityScan,
    pub first_orthogonal_time_s: Option<f64>,
    pub tick_count: usize,
    pub ml_saturation: Option<f64>,
    pub heisenberg_saturation: Option<f64>,
    pub bounds_hold: bool,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn clock(scenario: &Scenario, k: PhysicalConstants, diagnostics: &mut Vec<String>) -> Result<Vec<ClockResult>> {
    if scenario.clocks.is_empty() {
        return Err(invalid("scenario has no `clocks`"));
    }
    let mut out = Vec::with_capacity(scenario.clocks.len());
    for spec in &scenario.clocks {
        let c = scenario::clock(spec, &k)?;
        let scan = scenario::scan(spec, &c);
        let t = c.first_orthogonal_time(&scan)?;
        let ticks = c.tick_count(&scan)?;
        let (ml, hb) = (c.ml_lower_bound(), c.heisenberg_lower_bound());
        let bounds_hold = t.is_none_or(|t| t >= ml * (1.0 - 1e-9) && t >= hb * (1.0 - 1e-9));
        if t.is_none() {
            diagnostics.push(format!(
                "clock `{}` does not reach an orthogonal state within {:e} s",
                spec.name, scan.t_max
            ));
        }
        out.push(ClockResult {
            name: spec.name.clone(),
            dimension: c.dimension(),
            spectrum_j: c.spectrum(),
            energy_mean_j: c.energy_mean(),
            energy_std_j: c.energy_std(),
            ml_bound_s: finite(ml),
            heisenberg_bound_s: finite(hb),
            scan,
            first_orthogonal_time_s: t,
            tick_count: ticks,
            ml_saturation: t.and_then(|t| finite(ml / t)),
            heisenberg_saturation: t.and_then(|t| finite(hb / t)),
            bounds_hold,
        });
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct ComplexResult {
    pub name: String,
    pub dimension: usize,
    pub vertices: usize,
    pub top_simplices: usize,
    pub hinges: usize,
    pub regge_sum_paper: f64,
    pub regge_sum_continuum: f64,
    pub bound_check: BoundCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauss_bonnet: Option<GaussBonnet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gauss_bonnet_skipped: Option<String>,
}

pub fn regge(scenario: &Scenario, base: &Path) -> Result<Vec<ComplexResult>> {
    if scenario.complexes.is_empty() {
        return Err(invalid("scenario has no `complexes`"));
    }
    let mut out = Vec::with_capacity(scenario.complexes.len());
    for spec in &scenario.complexes {
        let c = scenario::complex(spec, base)?;
        let (gauss_bonnet, skipped) = match c.gauss_bonnet_check() {
            Ok(gb) => (Some(gb), None),
            Err(e @ (Error::OpenSurface(_) | Error::InvalidInput(_))) => (None, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        };
        out.push(ComplexResult {
            name: spec.name.clone(),
            dimension: c.dimension(),
            vertices: c.vertex_count(),
            top_simplices: c.simplices().len(),
            hinges: c.hinges().len(),
            regge_sum_paper: c.regge_curvature_sum(ReggeConvention::Paper),
            regge_sum_continuum: c.regge_curvature_sum(ReggeConvention::Continuum),
            bound_check: c.bound_check(),
            gauss_bonnet,
            gauss_bonnet_skipped: skipped,
        });
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct CosmoResults {
    pub planck: PlanckScale,
    pub age_s: f64,
    pub radius_m: f64,
    pub ops_since_big_bang: f64,
    pub log10_ops: f64,
    pub uniform: UniformStats,
    pub cells_times_ticks: f64,
    /// Relative gap between `cells × ticks` and `(T/t_P)²`; zero up to
    /// round-off when `R = cT`.
    pub identity_relative_difference: f64,
}

pub fn cosmo(scenario: &Scenario, k: PhysicalConstants) -> Result<CosmoResults> {
    let spec = scenario
        .cosmology
        .ok_or_else(|| invalid("scenario has no `cosmology` block"))?;
    let radius = spec.radius_m.unwrap_or(k.c * spec.age_s);
    let ops = bounds::ops_since_big_bang(&k, spec.age_s).map_err(|e| invalid(format!("cosmology: {e}")))?;
    let uniform = bounds::uniform_distribution_stats(&k, radius, spec.age_s)
        .map_err(|e| invalid(format!("cosmology: {e}")))?;
    let product = uniform.cells * uniform.ticks_per_clock;
    Ok(CosmoResults {
        planck: planck_scale(&k)?,
        age_s: spec.age_s,
        radius_m: radius,
        ops_since_big_bang: ops,
        log10_ops: ops.log10(),
        uniform,
        cells_times_ticks: product,
        identity_relative_difference: relative(product, ops),
    })
}
