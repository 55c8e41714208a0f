//! Covariant spheres, cylinders and solids of rotation built by radar
//! (Einstein) synchronization around a timelike axis.
//!
//! An event has radar coordinates `(τ_mid, d)` relative to the axis when a
//! light signal leaving the axis at proper time `τ_e` reaches it and returns
//! at `τ_r`; then `τ_mid = (τ_e + τ_r)/2` and `d = c(τ_r − τ_e)/2`. A solid
//! with radius profile `ρ(τ)` and proper duration `t` is the set of events
//! with `0 ≤ τ_mid ≤ t` and `d ≤ ρ(τ_mid)`.
//!
//! Supported axes:
//!
//! * inertial worldlines in flat charts (closed form);
//! * static observers in static spherically symmetric charts, using radial
//!   light rays (any event when the observer sits at a star's center);
//! * the comoving observer at the origin of a flat FRW chart;
//! * integrated geodesic paths, solved by bisection on the emission and
//!   reception proper times.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesics::{radial_light_time, GeodesicKind, GeodesicPath};
use crate::montecarlo::{integrate_box, Bounds4, Estimate, Sampler};
use crate::spacetime::{ChartPoint, Family, Spacetime};
use crate::units::PhysicalConstants;

/// Proper-time samples used by [`horizon_check`].
const HORIZON_SAMPLES: usize = 257;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Axis {
    /// Inertial worldline through `origin` with coordinate velocity
    /// `velocity` (fraction of c), in Minkowski or the dust ball.
    Inertial {
        origin: ChartPoint,
        velocity: [f64; 3],
    },
    /// Observer at fixed `(r, θ, φ)` of a Schwarzschild chart, starting at
    /// coordinate time `start_time` (s). `r = 0` is the center of a star.
    Static { start_time: f64, position: [f64; 3] },
    /// Comoving observer at the spatial origin of a flat FRW chart.
    Comoving { start_time: f64 },
    /// Integrated timelike geodesic; `τ = 0` is its first sample.
    Path(GeodesicPath),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RadiusProfile {
    /// Cylinder: `ρ(τ) = radius_m`.
    Constant { radius_m: f64 },
    /// `ρ(τ) = radius_m · τ / t`.
    Cone { radius_m: f64 },
    /// `ρ(τ) = radius_m · sin(πτ/t)`.
    Spindle { radius_m: f64 },
    /// Piecewise-linear table; `tau_s` must be increasing and cover `[0, t]`.
    Table { tau_s: Vec<f64>, radius_m: Vec<f64> },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusConvention {
    /// A sphere of radius `x` is bounded by light cones from `τ ∓ x/c`, so
    /// it has radar radius `x`.
    #[default]
    Radar,
    /// Light cones from `τ ∓ x/2c`: the sphere labeled `x` has radar radius `x/2`.
    PaperLiteral,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovariantSolid {
    pub axis: Axis,
    /// Proper length `t` of the axis segment, s.
    pub duration: f64,
    pub profile: RadiusProfile,
    pub convention: RadiusConvention,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadarCoordinates {
    /// Proper time at the midpoint of the round trip, s from the axis start.
    pub tau_mid: f64,
    /// `c·(τ_r − τ_e)/2`, m.
    pub radar_distance: f64,
    pub tau_emit: f64,
    pub tau_receive: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorldSheet {
    /// Radius-sheet area `∫ρ dτ`, m·s.
    pub area: f64,
    pub construction: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HorizonCheck {
    Ok {
        /// Largest `E(τ)/E_crit(ρ(τ))` encountered.
        max_ratio: f64,
    },
    Trapped {
        max_energy: f64,
        effective_radius: f64,
    },
}

/// Monte Carlo integrals over a solid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionIntegrals {
    /// `∫dV`, m³·s.
    pub volume: Estimate,
    /// `∫(T^a_a − 4ρ_Λ) dV`, J·s.
    pub trace: Estimate,
    /// `∫R dV`, m·s.
    pub curvature: Estimate,
    pub accepted: usize,
    pub sampler: Sampler,
}

impl RadiusProfile {
    fn validate(&self, duration: f64) -> Result<()> {
        let check = |r: f64| {
            if r.is_finite() && r >= 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("radius must be non-negative, got {r}")))
            }
        };
        match self {
            RadiusProfile::Constant { radius_m }
            | RadiusProfile::Cone { radius_m }
            | RadiusProfile::Spindle { radius_m } => check(*radius_m),
            RadiusProfile::Table { tau_s, radius_m } => {
                if tau_s.len() < 2 || tau_s.len() != radius_m.len() {
                    return Err(Error::InvalidInput(
                        "radius table needs ≥ 2 matching tau/radius entries".into(),
                    ));
                }
                if tau_s.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidInput("tau_s must be strictly increasing".into()));
                }
                if tau_s[0] > 0.0 || *tau_s.last().unwrap() < duration {
                    return Err(Error::InvalidInput(format!(
                        "radius table [{}, {}] does not cover [0, {duration}]",
                        tau_s[0],
                        tau_s.last().unwrap()
                    )));
                }
                radius_m.iter().try_for_each(|r| check(*r))
            }
        }
    }

    /// `ρ(τ)` for a segment of length `duration`.
    pub fn radius_at(&self, tau: f64, duration: f64) -> f64 {
        match self {
            RadiusProfile::Constant { radius_m } => *radius_m,
            RadiusProfile::Cone { radius_m } => radius_m * tau / duration,
            RadiusProfile::Spindle { radius_m } => radius_m * (PI * tau / duration).sin().max(0.0),
            RadiusProfile::Table { tau_s, radius_m } => {
                let i = tau_s.partition_point(|x| *x <= tau).clamp(1, tau_s.len() - 1);
                let (t0, t1) = (tau_s[i - 1], tau_s[i]);
                let w = ((tau - t0) / (t1 - t0)).clamp(0.0, 1.0);
                radius_m[i - 1] + w * (radius_m[i] - radius_m[i - 1])
            }
        }
    }

    pub fn max_radius(&self) -> f64 {
        match self {
            RadiusProfile::Constant { radius_m }
            | RadiusProfile::Cone { radius_m }
            | RadiusProfile::Spindle { radius_m } => *radius_m,
            RadiusProfile::Table { radius_m, .. } => radius_m.iter().copied().fold(0.0, f64::max),
        }
    }
}

impl CovariantSolid {
    pub fn new(
        axis: Axis,
        duration: f64,
        profile: RadiusProfile,
        convention: RadiusConvention,
    ) -> Result<Self> {
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::InvalidInput(format!("duration must be positive, got {duration}")));
        }
        profile.validate(duration)?;
        if let Axis::Path(path) = &axis {
            if path.kind != GeodesicKind::Timelike {
                return Err(Error::InvalidInput("solid axes must be timelike".into()));
            }
            if path.length() < duration * (1.0 - 1e-12) {
                return Err(Error::InvalidInput(format!(
                    "axis path covers {} s, shorter than the duration {duration} s",
                    path.length()
                )));
            }
        }
        Ok(Self {
            axis,
            duration,
            profile,
            convention,
        })
    }

    pub fn cylinder(axis: Axis, duration: f64, radius_m: f64) -> Result<Self> {
        Self::new(
            axis,
            duration,
            RadiusProfile::Constant { radius_m },
            RadiusConvention::Radar,
        )
    }

    /// Nominal profile radius `ρ(τ)`.
    pub fn radius_at(&self, tau: f64) -> f64 {
        self.profile.radius_at(tau, self.duration)
    }

    /// Radar radius of the sphere at `τ` under the chosen cone convention.
    pub fn radar_radius_at(&self, tau: f64) -> f64 {
        let r = self.radius_at(tau);
        match self.convention {
            RadiusConvention::Radar => r,
            RadiusConvention::PaperLiteral => 0.5 * r,
        }
    }

    /// Covariant radius `max ρ`.
    pub fn covariant_radius(&self) -> f64 {
        self.profile.max_radius()
    }

    fn max_radar_radius(&self) -> f64 {
        match self.convention {
            RadiusConvention::Radar => self.covariant_radius(),
            RadiusConvention::PaperLiteral => 0.5 * self.covariant_radius(),
        }
    }
}

fn lorentz_factor(v: &[f64; 3]) -> Result<f64> {
    let v2: f64 = v.iter().map(|x| x * x).sum();
    if v2 >= 1.0 {
        return Err(Error::InvalidInput(format!("axis speed √{v2} ≥ c")));
    }
    Ok(1.0 / (1.0 - v2).sqrt())
}

/// Rest-frame coordinates `(cT, X)` of a lab displacement `(cΔt, Δx)`.
fn boost_to_rest(v: &[f64; 3], gamma: f64, d: &[f64; 4]) -> [f64; 4] {
    let v2: f64 = v.iter().map(|x| x * x).sum();
    let vdx: f64 = (0..3).map(|i| v[i] * d[i + 1]).sum();
    let ct = gamma * (d[0] - vdx);
    let k = if v2 > 0.0 { (gamma - 1.0) * vdx / v2 } else { 0.0 };
    [
        ct,
        d[1] + k * v[0] - gamma * v[0] * d[0],
        d[2] + k * v[1] - gamma * v[1] * d[0],
        d[3] + k * v[2] - gamma * v[2] * d[0],
    ]
}

/// Lab displacement of rest-frame coordinates `(cT, X)`.
fn boost_to_lab(v: &[f64; 3], gamma: f64, r: &[f64; 4]) -> [f64; 4] {
    let neg = [-v[0], -v[1], -v[2]];
    boost_to_rest(&neg, gamma, r)
}

fn flat(st: &Spacetime) -> bool {
    matches!(st.family(), Family::Minkowski | Family::DustBall { .. })
}

fn radar_from_times(tau_emit: f64, tau_receive: f64, c: f64) -> RadarCoordinates {
    RadarCoordinates {
        tau_mid: 0.5 * (tau_emit + tau_receive),
        radar_distance: 0.5 * c * (tau_receive - tau_emit),
        tau_emit,
        tau_receive,
    }
}

/// Conformal-time primitive `C(t) = ∫ c/a dt` of `a = (t/t₀)^p`.
fn frw_conformal(p: f64, t0: f64, c: f64, t: f64) -> f64 {
    if (p - 1.0).abs() < 1e-12 {
        c * t0 * t.ln()
    } else {
        c * t0.powf(p) * t.powf(1.0 - p) / (1.0 - p)
    }
}

fn frw_conformal_inverse(p: f64, t0: f64, c: f64, value: f64) -> Option<f64> {
    if (p - 1.0).abs() < 1e-12 {
        return Some((value / (c * t0)).exp());
    }
    let base = value * (1.0 - p) / (c * t0.powf(p));
    (base > 0.0).then(|| base.powf(1.0 / (1.0 - p)))
}

/// Radar coordinates of `event` relative to the axis.
pub fn radar_coordinates(
    st: &Spacetime,
    axis: &Axis,
    event: &ChartPoint,
) -> Result<RadarCoordinates> {
    let c = st.constants().c;
    match axis {
        Axis::Inertial { origin, velocity } => {
            if !flat(st) {
                return Err(Error::Unsupported(
                    "inertial axes need a flat chart (Minkowski or dust ball)".into(),
                ));
            }
            let gamma = lorentz_factor(velocity)?;
            let d = [
                c * (event.t - origin.t),
                event.x[0] - origin.x[0],
                event.x[1] - origin.x[1],
                event.x[2] - origin.x[2],
            ];
            let rest = boost_to_rest(velocity, gamma, &d);
            let dist = (rest[1] * rest[1] + rest[2] * rest[2] + rest[3] * rest[3]).sqrt();
            Ok(RadarCoordinates {
                tau_mid: rest[0] / c,
                radar_distance: dist,
                tau_emit: (rest[0] - dist) / c,
                tau_receive: (rest[0] + dist) / c,
            })
        }
        Axis::Static {
            start_time,
            position,
        } => {
            if !matches!(st.family(), Family::Schwarzschild { .. } | Family::Star { .. }) {
                return Err(Error::Unsupported(
                    "static axes need a Schwarzschild chart".into(),
                ));
            }
            let r1 = position[0];
            let lapse = st.static_lapse(r1)?;
            let r2 = event.x[0];
            if r2 < 0.0 {
                return Err(Error::InvalidInput(format!("negative areal radius {r2}")));
            }
            if r1 > 0.0 && r2 > 0.0 {
                let same_ray = (event.x[1] - position[1]).abs() < 1e-12
                    && ((event.x[2] - position[2]).rem_euclid(2.0 * PI)).min(
                        (position[2] - event.x[2]).rem_euclid(2.0 * PI),
                    ) < 1e-12;
                if !same_ray {
                    return Err(Error::Unsupported(
                        "off-center static axes only synchronize events on their radial ray".into(),
                    ));
                }
            }
            let travel = radial_light_time(st, r1, r2)?;
            let t = event.t - start_time;
            Ok(radar_from_times(lapse * (t - travel), lapse * (t + travel), c))
        }
        Axis::Comoving { start_time } => {
            let Family::Frw { p, l } = st.family() else {
                return Err(Error::Unsupported("comoving axes need an FRW chart".into()));
            };
            let t0 = l / c;
            if event.t <= 0.0 {
                return Err(Error::Horizon(format!("event at t = {} s precedes the big bang", event.t)));
            }
            let chi = (event.x[0].powi(2) + event.x[1].powi(2) + event.x[2].powi(2)).sqrt();
            let here = frw_conformal(p, t0, c, event.t);
            let emit = frw_conformal_inverse(p, t0, c, here - chi).ok_or_else(|| {
                Error::Horizon(format!(
                    "event at comoving distance {chi} m lies beyond the particle horizon"
                ))
            })?;
            let receive = frw_conformal_inverse(p, t0, c, here + chi).ok_or_else(|| {
                Error::Horizon(format!(
                    "event at comoving distance {chi} m lies beyond the event horizon"
                ))
            })?;
            Ok(radar_from_times(emit - start_time, receive - start_time, c))
        }
        Axis::Path(path) => radar_on_path(st, path, event),
    }
}

/// Coordinate light travel time (s) between two spatial positions, for the
/// charts where rays between them are known.
fn light_travel(st: &Spacetime, from: &[f64; 3], to: &[f64; 3]) -> Result<f64> {
    let c = st.constants().c;
    if flat(st) {
        let d2: f64 = (0..3).map(|i| (to[i] - from[i]).powi(2)).sum();
        return Ok(d2.sqrt() / c);
    }
    if !matches!(st.family(), Family::Schwarzschild { .. } | Family::Star { .. }) {
        return Err(Error::Unsupported("path radar needs a flat or static spherical chart".into()));
    }
    if (from[1] - to[1]).abs() > 1e-9 || (from[2] - to[2]).abs() > 1e-9 {
        return Err(Error::Unsupported(
            "path radar in curved charts uses radial rays only".into(),
        ));
    }
    radial_light_time(st, from[0], to[0])
}

fn radar_on_path(st: &Spacetime, path: &GeodesicPath, event: &ChartPoint) -> Result<RadarCoordinates> {
    let c = st.constants().c;
    let tau0 = path.start().tau;
    let tau1 = path.end().tau;
    let at = |tau: f64| -> Result<(f64, [f64; 3])> {
        let x = path
            .position_at(tau, c)
            .ok_or_else(|| Error::OutOfSegment(format!("τ = {tau} outside the path")))?;
        Ok((x[0] / c, [x[1], x[2], x[3]]))
    };
    // Signal leaving the path at τ arrives at the event's position at t_path(τ) + travel.
    let arrival = |tau: f64| -> Result<f64> {
        let (t, x) = at(tau)?;
        Ok(t + light_travel(st, &x, &event.x)? - event.t)
    };
    let departure = |tau: f64| -> Result<f64> {
        let (t, x) = at(tau)?;
        Ok(t - light_travel(st, &x, &event.x)? - event.t)
    };
    let emit = bisect(arrival, tau0, tau1, "emission")?;
    let receive = bisect(departure, tau0, tau1, "reception")?;
    Ok(radar_from_times(emit - tau0, receive - tau0, c))
}

/// Root of an increasing function on `[lo, hi]`, to floating-point resolution.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64, what: &str) -> Result<f64> {
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if flo > 0.0 || fhi < 0.0 {
        return Err(Error::OutOfSegment(format!(
            "{what} time is not bracketed by the axis segment"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Whether `event` lies inside the solid.
pub fn contains(st: &Spacetime, solid: &CovariantSolid, event: &ChartPoint) -> Result<bool> {
    let radar = radar_coordinates(st, &solid.axis, event)?;
    Ok(inside(solid, &radar))
}

fn inside(solid: &CovariantSolid, radar: &RadarCoordinates) -> bool {
    (0.0..=solid.duration).contains(&radar.tau_mid)
        && radar.radar_distance <= solid.radar_radius_at(radar.tau_mid)
}

/// Maps Monte Carlo box coordinates to a chart point and volume weight
/// `√(−g)` such that `dV = weight · dt d³x`.
struct Embedding {
    spherical: bool,
}

impl Embedding {
    fn point(&self, x: &[f64; 4]) -> ChartPoint {
        if self.spherical {
            let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
            let theta = if r > 0.0 { (x[3] / r).clamp(-1.0, 1.0).acos() } else { 0.0 };
            ChartPoint::new(x[0], [r, theta, x[2].atan2(x[1])])
        } else {
            ChartPoint::new(x[0], [x[1], x[2], x[3]])
        }
    }
}

fn volume_weight(st: &Spacetime, p: &ChartPoint) -> f64 {
    let c = st.constants().c;
    match st.family() {
        Family::Minkowski | Family::DustBall { .. } => 1.0,
        Family::Frw { p: exponent, l } => (c * p.t / l).powf(3.0 * exponent),
        Family::Schwarzschild { m } | Family::Star { m, .. } => {
            // √(−g_tt g_rr); the r² sin θ factor is absorbed by d³x.
            let r = p.x[0];
            match st.family() {
                Family::Star { radius, .. } if r < radius => {
                    let s = (1.0 - 2.0 * m / radius).sqrt();
                    let b = (1.0 - 2.0 * m * r * r / radius.powi(3)).sqrt();
                    (1.5 * s - 0.5 * b) / b
                }
                _ => 1.0,
            }
        }
    }
}

/// Bounding box (t in s, spatial in m) enclosing the solid.
fn bounding_box(st: &Spacetime, solid: &CovariantSolid) -> Result<(Bounds4, Embedding)> {
    let c = st.constants().c;
    let rho = solid.max_radar_radius();
    let t = solid.duration;
    match &solid.axis {
        Axis::Inertial { origin, velocity } => {
            let gamma = lorentz_factor(velocity)?;
            let mut lo = [f64::INFINITY; 4];
            let mut hi = [f64::NEG_INFINITY; 4];
            for corner in 0..16u32 {
                let pick = |bit: u32, a: f64, b: f64| if corner & (1 << bit) == 0 { a } else { b };
                let rest = [
                    pick(0, 0.0, c * t),
                    pick(1, -rho, rho),
                    pick(2, -rho, rho),
                    pick(3, -rho, rho),
                ];
                let lab = boost_to_lab(velocity, gamma, &rest);
                let abs = [
                    origin.t + lab[0] / c,
                    origin.x[0] + lab[1],
                    origin.x[1] + lab[2],
                    origin.x[2] + lab[3],
                ];
                for i in 0..4 {
                    lo[i] = lo[i].min(abs[i]);
                    hi[i] = hi[i].max(abs[i]);
                }
            }
            Ok((std::array::from_fn(|i| (lo[i], hi[i])), Embedding { spherical: false }))
        }
        Axis::Static {
            start_time,
            position,
        } => {
            if position[0] != 0.0 || !matches!(st.family(), Family::Star { .. }) {
                return Err(Error::Unsupported(
                    "volume sampling around static axes needs the center of a star".into(),
                ));
            }
            let lapse = st.static_lapse(0.0)?;
            // Radar distance from the center grows monotonically with r and
            // is at least lapse·r, so r ≤ ρ/lapse bounds the region.
            let radar = |r: f64| radial_light_time(st, 0.0, r).map(|tt| lapse * c * tt - rho);
            let r_max = if rho > 0.0 {
                bisect(radar, 0.0, rho / lapse, "radius")?
            } else {
                0.0
            };
            let r_max = r_max * (1.0 + 1e-9);
            Ok((
                [
                    (*start_time, start_time + t / lapse),
                    (-r_max, r_max),
                    (-r_max, r_max),
                    (-r_max, r_max),
                ],
                Embedding { spherical: true },
            ))
        }
        Axis::Comoving { start_time } => {
            let Family::Frw { p, l } = st.family() else {
                return Err(Error::Unsupported("comoving axes need an FRW chart".into()));
            };
            let t0 = l / c;
            let earliest = start_time - rho / c;
            if earliest <= 0.0 {
                return Err(Error::Horizon(
                    "covariant solid reaches back to the initial singularity".into(),
                ));
            }
            let chi = 0.5
                * (frw_conformal(p, t0, c, start_time + rho / c) - frw_conformal(p, t0, c, earliest))
                * (1.0 + 1e-9);
            Ok((
                [
                    (earliest, start_time + t + rho / c),
                    (-chi, chi),
                    (-chi, chi),
                    (-chi, chi),
                ],
                Embedding { spherical: false },
            ))
        }
        Axis::Path(_) => Err(Error::Unsupported(
            "volume sampling around integrated paths is not available".into(),
        )),
    }
}

/// Monte Carlo integrals of `1`, `T^a_a − 4ρ_Λ` and `R` over the solid.
pub fn integrate_solid(
    st: &Spacetime,
    solid: &CovariantSolid,
    sampler: Sampler,
    lambda_adjustment: f64,
) -> Result<RegionIntegrals> {
    if solid.max_radar_radius() == 0.0 {
        return Ok(RegionIntegrals {
            volume: Estimate::ZERO,
            trace: Estimate::ZERO,
            curvature: Estimate::ZERO,
            accepted: 0,
            sampler,
        });
    }
    let c = st.constants().c;
    let (bounds, embedding) = bounding_box(st, solid)?;
    let result = integrate_box(&bounds, sampler, |x| {
        let p = embedding.point(x);
        let radar = match radar_coordinates(st, &solid.axis, &p) {
            Ok(r) => r,
            Err(Error::OutOfSegment(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if !inside(solid, &radar) {
            return Ok(None);
        }
        let geometric = [c * p.t, p.x[0], p.x[1], p.x[2]];
        let w = volume_weight(st, &p);
        let trace = st.checked_trace(&geometric, lambda_adjustment)?;
        let ricci = st.ricci_scalar_geometric(&geometric);
        Ok(Some([w, w * trace, w * ricci]))
    })?;
    if result.accepted == 0 {
        return Err(Error::DegenerateRegion);
    }
    let [volume, trace, curvature] = result.estimates;
    Ok(RegionIntegrals {
        volume,
        trace,
        curvature,
        accepted: result.accepted,
        sampler,
    })
}

/// Four-volume `∫√(−g) d³x dt` of the solid, m³·s.
pub fn four_volume(st: &Spacetime, solid: &CovariantSolid, sampler: Sampler) -> Result<Estimate> {
    integrate_solid(st, solid, sampler, 0.0).map(|r| r.volume)
}

/// Area `∫₀ᵗ ρ(τ) dτ` of the radius sheet, m·s.
pub fn worldsheet_area(solid: &CovariantSolid) -> WorldSheet {
    let t = solid.duration;
    let area = match &solid.profile {
        RadiusProfile::Constant { radius_m } => radius_m * t,
        RadiusProfile::Cone { radius_m } => 0.5 * radius_m * t,
        RadiusProfile::Spindle { radius_m } => 2.0 * radius_m * t / PI,
        RadiusProfile::Table { tau_s, .. } => {
            // Exact for the piecewise-linear profile restricted to [0, t].
            let mut knots: Vec<f64> = tau_s.iter().copied().filter(|x| *x > 0.0 && *x < t).collect();
            knots.insert(0, 0.0);
            knots.push(t);
            knots
                .windows(2)
                .map(|w| 0.5 * (w[1] - w[0]) * (solid.radius_at(w[0]) + solid.radius_at(w[1])))
                .sum()
        }
    };
    WorldSheet {
        area,
        construction: "radius_sheet",
    }
}

/// Energy `r c⁴ / 2G` at which a region of radius `r` becomes a black hole, J.
pub fn critical_energy(k: &PhysicalConstants, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {r}")));
    }
    Ok(r * k.c.powi(4) / (2.0 * k.g))
}

/// Horizon radius `2GE/c⁴` of an energy `E` (J).
pub fn horizon_radius(k: &PhysicalConstants, energy: f64) -> Result<f64> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(Error::InvalidInput(format!("energy must be positive, got {energy}")));
    }
    Ok(2.0 * k.g * energy / k.c.powi(4))
}

/// Volume of the intersection of two balls with radii `a`, `b` whose centers
/// are `d` apart.
fn lens_volume(a: f64, b: f64, d: f64) -> f64 {
    if d >= a + b {
        return 0.0;
    }
    if d <= (a - b).abs() {
        let r = a.min(b);
        return 4.0 / 3.0 * PI * r.powi(3);
    }
    PI * (a + b - d).powi(2) * (d * d + 2.0 * d * (a + b) - 3.0 * (a - b).powi(2)) / (12.0 * d)
}

/// Flat-measure energy (J) inside the sphere of radar radius `radius` at
/// proper time `tau` on the axis.
pub fn enclosed_energy(st: &Spacetime, axis: &Axis, tau: f64, radius: f64) -> Result<f64> {
    let k = st.constants();
    let c = k.c;
    if radius <= 0.0 {
        return Ok(0.0);
    }
    match (st.family(), axis) {
        (Family::Minkowski | Family::Schwarzschild { .. }, _) => Ok(0.0),
        (Family::DustBall { m, radius: ball }, _) => {
            let center = match axis {
                Axis::Inertial { origin, velocity } => {
                    let gamma = lorentz_factor(velocity)?;
                    let lab = boost_to_lab(velocity, gamma, &[c * tau, 0.0, 0.0, 0.0]);
                    [origin.x[0] + lab[1], origin.x[1] + lab[2], origin.x[2] + lab[3]]
                }
                Axis::Path(path) => {
                    let x = path
                        .position_at(path.start().tau + tau, c)
                        .ok_or_else(|| Error::OutOfSegment(format!("τ = {tau}")))?;
                    [x[1], x[2], x[3]]
                }
                _ => return Err(Error::Unsupported("dust ball axes are inertial or paths".into())),
            };
            let d = center.iter().map(|x| x * x).sum::<f64>().sqrt();
            let fraction = lens_volume(radius, ball, d) / (4.0 / 3.0 * PI * ball.powi(3));
            Ok(fraction * m * c.powi(4) / k.g)
        }
        (Family::Star { m, radius: star }, Axis::Static { position, .. }) if position[0] == 0.0 => {
            let lapse = st.static_lapse(0.0)?;
            let radar = |r: f64| radial_light_time(st, 0.0, r).map(|tt| lapse * c * tt - radius);
            let r = bisect(radar, 0.0, radius / lapse, "radius")?;
            Ok((r / star).min(1.0).powi(3) * m * c.powi(4) / k.g)
        }
        (Family::Frw { p, l }, Axis::Comoving { start_time }) => {
            let t = start_time + tau;
            let rho_geom = 3.0 * p * p / (8.0 * PI * (c * t).powi(2));
            let _ = l;
            Ok(rho_geom * k.energy_density_factor() * 4.0 / 3.0 * PI * radius.powi(3))
        }
        _ => Err(Error::Unsupported(
            "enclosed energy is defined for central or comoving axes".into(),
        )),
    }
}

/// Compares the enclosed energy of each sphere with its critical energy.
pub fn horizon_check(st: &Spacetime, solid: &CovariantSolid) -> Result<HorizonCheck> {
    let k = st.constants();
    let mut max_ratio: f64 = 0.0;
    let mut max_energy: f64 = 0.0;
    let mut trapped = false;
    for i in 0..HORIZON_SAMPLES {
        let tau = solid.duration * i as f64 / (HORIZON_SAMPLES - 1) as f64;
        let rho = solid.radar_radius_at(tau);
        if rho <= 0.0 {
            continue;
        }
        let energy = enclosed_energy(st, &solid.axis, tau, rho)?;
        let ratio = energy / critical_energy(k, rho)?;
        max_ratio = max_ratio.max(ratio);
        max_energy = max_energy.max(energy);
        trapped |= ratio > 1.0;
    }
    if trapped {
        Ok(HorizonCheck::Trapped {
            max_energy,
            effective_radius: horizon_radius(k, max_energy)?,
        })
    } else {
        Ok(HorizonCheck::Ok { max_ratio })
    }
}
