//! Physical constants, the Planck scale and SI <-> geometric conversion.
//!
//! Geometric units set `G = c = 1` and keep the meter as base unit, so times
//! become `c·t` and masses `G·m/c²`. Curvature (m⁻²) is identical in both.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 reduced Planck constant, J·s.
pub const CODATA_HBAR: f64 = 1.054_571_817e-34;
/// CODATA 2018 Newtonian constant of gravitation, m³·kg⁻¹·s⁻².
pub const CODATA_G: f64 = 6.674_30e-11;
/// Speed of light in vacuum, m/s (exact).
pub const CODATA_C: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub c: f64,
    pub planck_length: f64,
    pub planck_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlanckScale {
    pub length: f64,
    pub time: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, g: f64, c: f64) -> Result<Self> {
        let scale = planck_scale_of(hbar, g, c)?;
        Ok(Self {
            hbar,
            g,
            c,
            planck_length: scale.length,
            planck_time: scale.time,
        })
    }

    pub fn codata2018() -> Self {
        Self::new(CODATA_HBAR, CODATA_G, CODATA_C).expect("CODATA constants are positive")
    }

    /// `ħ = G = c = 1`.
    pub fn natural() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit constants are positive")
    }

    /// `ħG/c⁴ = ℓ_P·t_P`, the Planck cell of a world sheet (m·s).
    pub fn planck_cell(&self) -> f64 {
        self.planck_length * self.planck_time
    }

    /// Geometric mass `GM/c²` (m) of a mass in kg.
    pub fn geometric_mass(&self, mass_kg: f64) -> f64 {
        self.g * mass_kg / (self.c * self.c)
    }

    /// Factor turning geometric curvature (m⁻²) into an SI energy density
    /// (J/m³): `c⁴/G`.
    pub fn energy_density_factor(&self) -> f64 {
        self.c.powi(4) / self.g
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Overrides as they appear in a scenario file; missing fields fall back to CODATA.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    #[serde(default, rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
}

impl ConstantsOverride {
    pub fn apply(&self, base: &PhysicalConstants) -> Result<PhysicalConstants> {
        PhysicalConstants::new(
            self.hbar.unwrap_or(base.hbar),
            self.g.unwrap_or(base.g),
            self.c.unwrap_or(base.c),
        )
    }
}

fn planck_scale_of(hbar: f64, g: f64, c: f64) -> Result<PlanckScale> {
    for (name, v) in [("hbar", hbar), ("G", g), ("c", c)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidConstants(format!(
                "{name} must be finite and strictly positive, got {v}"
            )));
        }
    }
    let time = (hbar * g / c.powi(5)).sqrt();
    Ok(PlanckScale {
        length: c * time,
        time,
    })
}

/// `t_P = √(ħG/c⁵)`, `ℓ_P = c·t_P`.
pub fn planck_scale(constants: &PhysicalConstants) -> Result<PlanckScale> {
    planck_scale_of(constants.hbar, constants.g, constants.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    Length,
    Time,
    Energy,
    Mass,
    Curvature,
    FourVolume,
    WorldsheetArea,
}

impl Dimension {
    pub const ALL: [Dimension; 7] = [
        Dimension::Length,
        Dimension::Time,
        Dimension::Energy,
        Dimension::Mass,
        Dimension::Curvature,
        Dimension::FourVolume,
        Dimension::WorldsheetArea,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Dimension::Length => "length",
            Dimension::Time => "time",
            Dimension::Energy => "energy",
            Dimension::Mass => "mass",
            Dimension::Curvature => "curvature",
            Dimension::FourVolume => "four-volume",
            Dimension::WorldsheetArea => "worldsheet-area",
        }
    }

    /// Multiplier taking an SI value of this dimension to geometric units.
    fn si_to_geometric(&self, k: &PhysicalConstants) -> f64 {
        match self {
            Dimension::Length | Dimension::Curvature => 1.0,
            // s -> m, m³·s -> m⁴, m·s -> m²
            Dimension::Time | Dimension::FourVolume | Dimension::WorldsheetArea => k.c,
            Dimension::Mass => k.g / (k.c * k.c),
            Dimension::Energy => k.g / k.c.powi(4),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dimension::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::UnknownDimension(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystem {
    Si,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
    pub system: UnitSystem,
}

impl Quantity {
    pub fn si(value: f64, dimension: Dimension) -> Self {
        Self {
            value,
            dimension,
            system: UnitSystem::Si,
        }
    }

    pub fn geometric(value: f64, dimension: Dimension) -> Self {
        Self {
            value,
            dimension,
            system: UnitSystem::Geometric,
        }
    }
}

pub fn convert(q: Quantity, target: UnitSystem, constants: &PhysicalConstants) -> Quantity {
    let factor = q.dimension.si_to_geometric(constants);
    let value = match (q.system, target) {
        (UnitSystem::Si, UnitSystem::Geometric) => q.value * factor,
        (UnitSystem::Geometric, UnitSystem::Si) => q.value / factor,
        _ => q.value,
    };
    Quantity {
        value,
        dimension: q.dimension,
        system: target,
    }
}

/// Same as [`convert`] but with the dimension given as a textual tag.
pub fn convert_tagged(
    value: f64,
    tag: &str,
    from: UnitSystem,
    target: UnitSystem,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let dimension = tag.parse::<Dimension>()?;
    let q = Quantity {
        value,
        dimension,
        system: from,
    };
    Ok(convert(q, target, constants).value)
}
