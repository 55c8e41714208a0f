//! Scenario files: JSON schema, validation and constants resolution.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use qgl_core::clock::{OrthogonalityScan, QuantumClock, DEFAULT_GRID, DEFAULT_THRESHOLD};
use qgl_core::geodesics::{integrate_geodesic, normalize_velocity, GeodesicKind, IntegratorOptions};
use qgl_core::regge::{self, ComplexSpec, SimplicialComplex};
use qgl_core::{
    Axis, ChartPoint, ConstantsOverride, CovariantSolid, MetricField, PhysicalConstants,
    RadiusConvention, RadiusProfile, Spacetime,
};
use serde::{Deserialize, Serialize};

pub const CONSTANTS_ENV: &str = "QGL_CONSTANTS";

/// Problems with the scenario itself; these map to exit code 2.
#[derive(Debug)]
pub struct InvalidScenario(pub String);

impl fmt::Display for InvalidScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidScenario {}

pub fn invalid(msg: impl Into<String>) -> anyhow::Error {
    InvalidScenario(msg.into()).into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsOverride>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solid: Option<SolidSpec>,
    /// Energy (J) above the ground state for a direct M-L count over the
    /// solid's duration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_j: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<ChartPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clocks: Vec<ClockSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complexes: Vec<NamedComplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cosmology: Option<CosmologySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidSpec {
    pub axis: AxisSpec,
    pub duration_s: f64,
    pub profile: RadiusProfile,
    #[serde(default)]
    pub paper_literal_cones: bool,
    #[serde(default = "default_samples")]
    pub n_samples: usize,
    /// Vacuum-energy density `ρ_Λ` (J/m³) subtracted from the trace.
    #[serde(default)]
    pub lambda_adjustment: f64,
}

fn default_samples() -> usize {
    200_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AxisSpec {
    Inertial {
        origin: ChartPoint,
        #[serde(default)]
        velocity: [f64; 3],
    },
    Static {
        #[serde(default)]
        start_time: f64,
        position: [f64; 3],
    },
    Comoving {
        start_time: f64,
    },
    /// Timelike geodesic integrated from `origin` with spatial 4-velocity
    /// components `velocity`.
    Geodesic {
        origin: ChartPoint,
        #[serde(default)]
        velocity: [f64; 3],
        #[serde(default)]
        tolerance: Option<f64>,
    },
}

// `deny_unknown_fields` does not combine with `flatten`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockSpec {
    pub name: String,
    #[serde(flatten)]
    pub source: ClockSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClockSource {
    /// `H = ħω σ_z/2` with `ψ₀ = |→⟩`.
    Qubit { omega: f64 },
    /// Dense `H` (J) and `ψ₀` as `[re, im]` pairs.
    Matrix {
        hamiltonian: Vec<Vec<[f64; 2]>>,
        state: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub t_max: f64,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedComplex {
    pub name: String,
    pub source: ComplexSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexSource {
    Builtin(Builtin),
    /// OFF file, relative to the scenario file.
    Off(PathBuf),
    /// JSON complex file, relative to the scenario file.
    File(PathBuf),
    Inline(ComplexSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Builtin {
    FlatGrid { nx: usize, ny: usize, spacing: f64 },
    Icosahedron,
    Icosphere { level: usize },
    CubeSurface,
    CliffordTorus { n: usize, m: usize },
    FiveSimplexBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosmologySpec {
    pub age_s: f64,
    /// Defaults to `c·age_s`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

impl SweepSpec {
    /// Parses `param:lo:hi:steps`.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [parameter, lo, hi, steps] = parts[..] else {
            return Err(invalid(format!("sweep `{text}` is not of the form param:lo:hi:steps")));
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| invalid(format!("sweep bound `{s}` is not a number")))
        };
        Ok(Self {
            parameter: parameter.to_string(),
            lo: num(lo)?,
            hi: num(hi)?,
            steps: steps
                .parse()
                .map_err(|_| invalid(format!("sweep step count `{steps}` is not an integer")))?,
        })
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.steps == 0 {
            return Err(invalid("sweep needs at least one step"));
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(invalid("sweep range must be finite"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        (0..self.steps)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// Reads and parses a scenario, reporting JSON errors with line and column.
pub fn load(path: &Path) -> anyhow::Result<Scenario> {
    let text = fs::read_to_string(path)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        invalid(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantsSource {
    Codata2018,
    Environment,
    Scenario,
    EnvironmentAndScenario,
}

/// CODATA, then the file named by `QGL_CONSTANTS`, then the scenario block.
pub fn resolve_constants(
    scenario: &Scenario,
    env_file: Option<&Path>,
) -> anyhow::Result<(PhysicalConstants, ConstantsSource)> {
    let mut k = PhysicalConstants::codata2018();
    let mut from_env = false;
    if let Some(path) = env_file {
        let text = fs::read_to_string(path)
            .map_err(|e| invalid(format!("{CONSTANTS_ENV}={}: {e}", path.display())))?;
        let o: ConstantsOverride = serde_json::from_str(&text).map_err(|e| {
            invalid(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
        })?;
        k = o.apply(&k).map_err(|e| invalid(e.to_string()))?;
        from_env = true;
    }
    let from_scenario = scenario.constants.is_some();
    if let Some(o) = &scenario.constants {
        k = o.apply(&k).map_err(|e| invalid(format!("constants: {e}")))?;
    }
    let source = match (from_env, from_scenario) {
        (false, false) => ConstantsSource::Codata2018,
        (true, false) => ConstantsSource::Environment,
        (false, true) => ConstantsSource::Scenario,
        (true, true) => ConstantsSource::EnvironmentAndScenario,
    };
    Ok((k, source))
}

pub fn spacetime(scenario: &Scenario, k: PhysicalConstants) -> anyhow::Result<Spacetime> {
    let field = scenario.metric.ok_or_else(|| invalid("scenario has no `metric` block"))?;
    Spacetime::new(field, k).map_err(|e| invalid(format!("metric: {e}")))
}

pub fn solid_spec(scenario: &Scenario) -> anyhow::Result<&SolidSpec> {
    scenario.solid.as_ref().ok_or_else(|| invalid("scenario has no `solid` block"))
}

pub fn seed(scenario: &Scenario) -> anyhow::Result<u64> {
    scenario
        .seed
        .ok_or_else(|| invalid("Monte Carlo runs need a `seed` (scenario field or --seed)"))
}

/// Builds the solid; geodesic axes are integrated over the solid's duration.
pub fn solid(st: &Spacetime, spec: &SolidSpec) -> anyhow::Result<CovariantSolid> {
    let axis = match &spec.axis {
        AxisSpec::Inertial { origin, velocity } => Axis::Inertial {
            origin: *origin,
            velocity: *velocity,
        },
        AxisSpec::Static { start_time, position } => Axis::Static {
            start_time: *start_time,
            position: *position,
        },
        AxisSpec::Comoving { start_time } => Axis::Comoving {
            start_time: *start_time,
        },
        AxisSpec::Geodesic {
            origin,
            velocity,
            tolerance,
        } => {
            let u0 = normalize_velocity(st, origin, *velocity, GeodesicKind::Timelike)
                .map_err(|e| invalid(format!("solid.axis: {e}")))?;
            let mut options = IntegratorOptions::default();
            if let Some(tol) = tolerance {
                options.tol = *tol;
            }
            let path = integrate_geodesic(
                st,
                *origin,
                u0,
                GeodesicKind::Timelike,
                (0.0, spec.duration_s),
                options,
            )?;
            Axis::Path(path)
        }
    };
    let convention = if spec.paper_literal_cones {
        RadiusConvention::PaperLiteral
    } else {
        RadiusConvention::Radar
    };
    CovariantSolid::new(axis, spec.duration_s, spec.profile.clone(), convention)
        .map_err(|e| invalid(format!("solid: {e}")))
}

pub fn clock(spec: &ClockSpec, k: &PhysicalConstants) -> anyhow::Result<QuantumClock> {
    let clock = match &spec.source {
        ClockSource::Qubit { omega } => QuantumClock::qubit(*omega, k.hbar),
        ClockSource::Matrix { hamiltonian, state } => QuantumClock::from_rows(hamiltonian, state, k.hbar),
    };
    clock.map_err(|e| invalid(format!("clock `{}`: {e}", spec.name)))
}

pub fn scan(spec: &ClockSpec, clock: &QuantumClock) -> OrthogonalityScan {
    match spec.scan {
        Some(s) => OrthogonalityScan {
            t_max: s.t_max,
            grid: s.grid,
            threshold: s.threshold,
        },
        None => clock.default_scan(),
    }
}

pub fn complex(spec: &NamedComplex, base: &Path) -> anyhow::Result<SimplicialComplex> {
    let built = match &spec.source {
        ComplexSource::Builtin(b) => match *b {
            Builtin::FlatGrid { nx, ny, spacing } => regge::flat_grid(nx, ny, spacing),
            Builtin::Icosahedron => regge::icosahedron(),
            Builtin::Icosphere { level } => {
                if level > 6 {
                    return Err(invalid(format!("complex `{}`: icosphere level ≤ 6", spec.name)));
                }
                regge::icosphere(level)
            }
            Builtin::CubeSurface => regge::cube_surface(),
            Builtin::CliffordTorus { n, m } => regge::clifford_torus(n, m),
            Builtin::FiveSimplexBoundary => regge::five_simplex_boundary(),
        },
        ComplexSource::Off(path) => {
            let path = base.join(path);
            let text = fs::read_to_string(&path)
                .map_err(|e| invalid(format!("complex `{}`: {}: {e}", spec.name, path.display())))?;
            regge::parse_off(&text)
        }
        ComplexSource::File(path) => {
            let path = base.join(path);
            let text = fs::read_to_string(&path)
                .map_err(|e| invalid(format!("complex `{}`: {}: {e}", spec.name, path.display())))?;
            let parsed: ComplexSpec = serde_json::from_str(&text).map_err(|e| {
                invalid(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
            })?;
            SimplicialComplex::from_spec(&parsed)
        }
        ComplexSource::Inline(c) => SimplicialComplex::from_spec(c),
    };
    built.map_err(|e| invalid(format!("complex `{}`: {e}", spec.name)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s = SweepSpec::parse("compactness:0.1:0.9:9").unwrap();
        assert_eq!(s.parameter, "compactness");
        let v = s.values();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], 0.1);
        assert!((v[8] - 0.9).abs() < 1e-15);
        assert!(SweepSpec::parse("a:1:2").is_err());
        assert!(SweepSpec::parse("a:x:2:3").is_err());
        assert!(SweepSpec::parse("a:1:2:0").unwrap().validate().is_err());
    }

    #[test]
    fn json_errors_carry_line_and_column() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        fs::write(&p, "{\n  \"name\": \"x\",\n  \"seed\": oops\n}").unwrap();
        let msg = load(&p).unwrap_err().to_string();
        assert!(msg.contains(":3:"), "{msg}");
    }

    #[test]
    fn constants_precedence() {
        let dir = tempfile::tempdir().unwrap();
        let env = dir.path().join("k.json");
        fs::write(&env, r#"{"hbar": 2.0, "c": 3.0}"#).unwrap();
        let mut s: Scenario = serde_json::from_str(r#"{"name": "k", "constants": {"c": 5.0}}"#).unwrap();
        let (k, source) = resolve_constants(&s, Some(&env)).unwrap();
        assert_eq!((k.hbar, k.c, k.g), (2.0, 5.0, qgl_core::units::CODATA_G));
        assert_eq!(source, ConstantsSource::EnvironmentAndScenario);
        s.constants = None;
        let (k, _) = resolve_constants(&s, None).unwrap();
        assert_eq!(k, PhysicalConstants::codata2018());
    }
}
