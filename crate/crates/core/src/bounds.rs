//! Event-count bounds: the Margolus-Levitin count, the geometric limit
//! `rt/(πℓ_P t_P)`, its stress-energy and curvature forms, the holographic
//! and covariant-entropy comparisons and the cosmological estimates.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::montecarlo::{Estimate, Sampler};
use crate::regions::{integrate_solid, worldsheet_area, CovariantSolid};
use crate::spacetime::Spacetime;
use crate::units::PhysicalConstants;

/// Half-width of the band around 1 reported as saturated.
pub const SATURATION_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Eq1Geometric,
    Eq2StressEnergy,
    Eq3Curvature,
    MlDirect,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct BoundInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_j: Option<f64>,
    /// World-sheet area, m·s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area_m_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<Sampler>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_adjustment: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: Method,
    pub n_max_events: f64,
    /// Monte Carlo standard error of `n_max_events` (0 for closed forms).
    pub std_error: f64,
    pub inputs: BoundInputs,
    /// `n_max_events` over the geometric limit of the same world sheet.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation_ratio: Option<f64>,
    /// `∫R dV`, m·s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature_integral: Option<Estimate>,
    /// Shortest wavelength `2r` resolvable inside the region, m.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength_m: Option<f64>,
}

impl BoundReport {
    pub fn estimate(&self) -> Estimate {
        Estimate {
            value: self.n_max_events,
            std_error: self.std_error,
        }
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite and non-negative, got {v}")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite and positive, got {v}")))
    }
}

/// `2Et/(πħ)` orthogonal transitions for energy `E` (J) above the ground
/// state over time `t` (s).
pub fn ml_event_bound(k: &PhysicalConstants, energy: f64, t: f64) -> Result<f64> {
    if energy < 0.0 {
        return Err(Error::EnergyPositivity {
            trace: energy,
            tolerance: 0.0,
        });
    }
    non_negative("energy", energy)?;
    non_negative("duration", t)?;
    Ok(2.0 * energy * t / (PI * k.hbar))
}

/// `rt/(πℓ_P t_P)`.
pub fn qgl_bound(k: &PhysicalConstants, r: f64, t: f64) -> Result<f64> {
    non_negative("radius", r)?;
    non_negative("duration", t)?;
    Ok(r * t / (PI * k.planck_cell()))
}

/// `A/(πℓ_P t_P)` for a world-sheet area `A` (m·s).
pub fn qgl_bound_area(k: &PhysicalConstants, area: f64) -> Result<f64> {
    non_negative("world-sheet area", area)?;
    Ok(area / (PI * k.planck_cell()))
}

pub fn ml_report(k: &PhysicalConstants, energy: f64, t: f64) -> Result<BoundReport> {
    Ok(BoundReport {
        method: Method::MlDirect,
        n_max_events: ml_event_bound(k, energy, t)?,
        std_error: 0.0,
        inputs: BoundInputs {
            energy_j: Some(energy),
            duration_s: Some(t),
            ..BoundInputs::default()
        },
        saturation_ratio: None,
        curvature_integral: None,
        wavelength_m: None,
    })
}

/// Geometric limit for the world sheet of `solid`.
pub fn geometric_report(k: &PhysicalConstants, solid: &CovariantSolid) -> Result<BoundReport> {
    let area = worldsheet_area(solid).area;
    let r = solid.covariant_radius();
    Ok(BoundReport {
        method: Method::Eq1Geometric,
        n_max_events: qgl_bound_area(k, area)?,
        std_error: 0.0,
        inputs: BoundInputs {
            radius_m: Some(r),
            duration_s: Some(solid.duration),
            area_m_s: Some(area),
            ..BoundInputs::default()
        },
        saturation_ratio: Some(1.0),
        curvature_integral: None,
        wavelength_m: Some(2.0 * r),
    })
}

fn solid_inputs(solid: &CovariantSolid, sampler: Sampler, lambda: Option<f64>) -> BoundInputs {
    BoundInputs {
        radius_m: Some(solid.covariant_radius()),
        duration_s: Some(solid.duration),
        energy_j: None,
        area_m_s: Some(worldsheet_area(solid).area),
        sampler: Some(sampler),
        lambda_adjustment: lambda,
    }
}

fn saturation(k: &PhysicalConstants, solid: &CovariantSolid, n: f64) -> Result<Option<f64>> {
    let limit = qgl_bound_area(k, worldsheet_area(solid).area)?;
    Ok((limit > 0.0).then(|| n / limit))
}

/// `(−2/πħ)∫(T^a_a − 4ρ_Λ) dV`; `lambda_adjustment` is the vacuum-energy
/// density `ρ_Λ` in J/m³.
pub fn covariant_ml_bound(
    st: &Spacetime,
    solid: &CovariantSolid,
    sampler: Sampler,
    lambda_adjustment: f64,
) -> Result<BoundReport> {
    let k = st.constants();
    let integrals = integrate_solid(st, solid, sampler, lambda_adjustment)?;
    let n = integrals.trace.scaled(-2.0 / (PI * k.hbar));
    Ok(BoundReport {
        method: Method::Eq2StressEnergy,
        n_max_events: n.value,
        std_error: n.std_error,
        inputs: solid_inputs(solid, sampler, Some(lambda_adjustment)),
        saturation_ratio: saturation(k, solid, n.value)?,
        curvature_integral: None,
        wavelength_m: None,
    })
}

/// `(c⁴/4π²ħG)∫R dV`.
pub fn curvature_event_bound(
    st: &Spacetime,
    solid: &CovariantSolid,
    sampler: Sampler,
) -> Result<BoundReport> {
    let k = st.constants();
    let integrals = integrate_solid(st, solid, sampler, 0.0)?;
    let n = integrals
        .curvature
        .scaled(k.energy_density_factor() / (4.0 * PI * PI * k.hbar));
    Ok(BoundReport {
        method: Method::Eq3Curvature,
        n_max_events: n.value,
        std_error: n.std_error,
        inputs: solid_inputs(solid, sampler, None),
        saturation_ratio: saturation(k, solid, n.value)?,
        curvature_integral: Some(integrals.curvature),
        wavelength_m: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitStatus {
    Below,
    Saturated,
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureLimit {
    /// `∫R dV`, m·s.
    pub curvature_integral: Estimate,
    /// `4π·A`, m·s.
    pub limit: f64,
    pub ratio: Estimate,
    pub status: LimitStatus,
}

/// Compares `∫R dV` with `4π` times the world-sheet area. The status allows
/// three standard errors on top of [`SATURATION_TOLERANCE`].
pub fn curvature_limit(curvature_integral: Estimate, area: f64) -> Result<CurvatureLimit> {
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::DegenerateRegion);
    }
    let limit = 4.0 * PI * area;
    let ratio = curvature_integral.scaled(1.0 / limit);
    let slack = SATURATION_TOLERANCE + 3.0 * ratio.std_error;
    let status = if ratio.value > 1.0 + slack {
        LimitStatus::Violated
    } else if ratio.value >= 1.0 - slack {
        LimitStatus::Saturated
    } else {
        LimitStatus::Below
    };
    Ok(CurvatureLimit {
        curvature_integral,
        limit,
        ratio,
        status,
    })
}

pub fn curvature_limit_check(
    st: &Spacetime,
    solid: &CovariantSolid,
    sampler: Sampler,
) -> Result<CurvatureLimit> {
    let area = worldsheet_area(solid).area;
    if area <= 0.0 {
        return Err(Error::DegenerateRegion);
    }
    let integrals = integrate_solid(st, solid, sampler, 0.0)?;
    curvature_limit(integrals.curvature, area)
}

/// `r²/(πℓ_P²)` quanta of wavelength at most `2r`.
pub fn holographic_quanta_bound(k: &PhysicalConstants, r: f64) -> Result<f64> {
    positive("radius", r)?;
    Ok(r * r / (PI * k.planck_length.powi(2)))
}

/// `A/(4 ln2 ℓ_P²)` bits for a surface area `A` (m²).
pub fn covariant_entropy_bound(k: &PhysicalConstants, area: f64) -> Result<f64> {
    non_negative("area", area)?;
    Ok(area / (4.0 * LN_2 * k.planck_length.powi(2)))
}

/// Whether a computation's event count is at least its participating-bit
/// count. Applies to achieved counts of one scenario, not to the two bound
/// formulas.
pub fn ops_exceed_bits(events: f64, bits: f64) -> bool {
    events >= bits
}

/// `(T/t_P)²`.
pub fn ops_since_big_bang(k: &PhysicalConstants, age: f64) -> Result<f64> {
    positive("age", age)?;
    Ok((age / k.planck_time).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformStats {
    pub cells: f64,
    pub ticks_per_clock: f64,
    pub tick_spacing_s: f64,
    pub spatial_resolution_m: f64,
}

/// Events spread uniformly over a region of size `R` (m) and age `T` (s).
pub fn uniform_distribution_stats(k: &PhysicalConstants, r: f64, age: f64) -> Result<UniformStats> {
    positive("radius", r)?;
    positive("age", age)?;
    let tick_spacing = (age * k.planck_time).sqrt();
    Ok(UniformStats {
        cells: (r / k.planck_length).powf(1.5),
        ticks_per_clock: (age / k.planck_time).sqrt(),
        tick_spacing_s: tick_spacing,
        spatial_resolution_m: k.c * tick_spacing,
    })
}
