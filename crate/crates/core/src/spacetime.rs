//! Metric catalog and curvature engine.
//!
//! All tensors are expressed in geometric units on the chart coordinates
//! `x = (c·t, x¹, x², x³)`, so metric components are dimensionless,
//! Christoffel symbols carry m⁻¹ and curvature m⁻². A [`ChartPoint`] keeps
//! the coordinate time in seconds; conversion happens at the boundary.
//!
//! Charts per family:
//!
//! | family                        | spatial chart           |
//! |-------------------------------|-------------------------|
//! | Minkowski                     | Cartesian               |
//! | Schwarzschild exterior        | spherical `(r, θ, φ)`   |
//! | Schwarzschild interior (star) | spherical `(r, θ, φ)`   |
//! | flat FRW, `a ∝ t^p`           | comoving Cartesian      |
//! | weak-field dust ball          | Cartesian               |
//!
//! The dust ball is a flat background carrying a prescribed uniform dust
//! source: its curvature is the one the Einstein equations assign to that
//! source, while the volume measure stays flat. It is the model in which the
//! saturation of the curvature limit is checked.

use std::f64::consts::PI;

use nalgebra::{Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::PhysicalConstants;

pub type Tensor2 = [[f64; 4]; 4];
/// `Γ^a_bc` stored as `[a][b][c]`.
pub type Christoffel = [[[f64; 4]; 4]; 4];
/// `R^a_bcd` stored as `[a][b][c][d]`.
pub type Riemann = [[[[f64; 4]; 4]; 4]; 4];

/// Default relative finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    /// Coordinate time, s.
    pub t: f64,
    /// Spatial coordinates in the family's chart (m, or rad for angles).
    pub x: [f64; 3],
}

impl ChartPoint {
    pub fn new(t: f64, x: [f64; 3]) -> Self {
        Self { t, x }
    }

    fn geometric(&self, c: f64) -> [f64; 4] {
        [c * self.t, self.x[0], self.x[1], self.x[2]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricField {
    Minkowski,
    SchwarzschildExterior {
        mass_kg: f64,
    },
    /// Constant-density star of mass `mass_kg` and areal radius `radius_m`.
    SchwarzschildInterior {
        mass_kg: f64,
        radius_m: f64,
    },
    /// Spatially flat FRW with `a(t) = (t / reference_time_s)^exponent`.
    FlatFrw {
        exponent: f64,
        reference_time_s: f64,
    },
    WeakFieldDustBall {
        mass_kg: f64,
        radius_m: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    Cartesian,
    Spherical,
}

/// Geometric-unit parameters of a catalog family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Family {
    Minkowski,
    Schwarzschild { m: f64 },
    Star { m: f64, radius: f64 },
    Frw { p: f64, l: f64 },
    DustBall { m: f64, radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChristoffelMode {
    Analytic,
    /// Central five-point differences of the metric with step
    /// `h · max(|xᶜ|, 1)` along each coordinate.
    FiniteDifference { h: f64 },
}

impl ChristoffelMode {
    pub fn finite_difference(h: f64) -> Self {
        ChristoffelMode::FiniteDifference { h }
    }
}

/// Perfect-fluid content in geometric units (densities in m⁻²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Fluid {
    pub rho: f64,
    pub pressure: f64,
    /// Covariant 4-velocity of the fluid rest frame.
    pub u_cov: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StressEnergy {
    /// `T_ab` in J/m³ on the chart coordinates `(ct, x¹, x², x³)`.
    pub components: Tensor2,
    /// `T^a_a` from the Einstein tensor, J/m³.
    pub trace: f64,
    /// Vacuum-energy density `ρ_Λ` (J/m³) added as `−ρ_Λ g_ab`.
    pub lambda_adjustment: f64,
    /// `trace − 4ρ_Λ`.
    pub adjusted_trace: f64,
    /// `T_ab uᵃ uᵇ` for the chart's rest observer after the adjustment, J/m³.
    pub energy_density: f64,
}

/// A catalog metric bound to a set of physical constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spacetime {
    field: MetricField,
    family: Family,
    constants: PhysicalConstants,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be finite and positive, got {v}"
        )))
    }
}

impl Spacetime {
    pub fn new(field: MetricField, constants: PhysicalConstants) -> Result<Self> {
        let family = match field {
            MetricField::Minkowski => Family::Minkowski,
            MetricField::SchwarzschildExterior { mass_kg } => Family::Schwarzschild {
                m: constants.geometric_mass(positive("mass_kg", mass_kg)?),
            },
            MetricField::SchwarzschildInterior { mass_kg, radius_m } => {
                let m = constants.geometric_mass(positive("mass_kg", mass_kg)?);
                let radius = positive("radius_m", radius_m)?;
                // Buchdahl: central pressure diverges at R = (9/8) r_s.
                if radius <= 2.25 * m {
                    return Err(Error::InvalidInput(format!(
                        "constant-density star needs R > 9/8 r_s (R = {radius} m, r_s = {} m)",
                        2.0 * m
                    )));
                }
                Family::Star { m, radius }
            }
            MetricField::FlatFrw {
                exponent,
                reference_time_s,
            } => Family::Frw {
                p: positive("exponent", exponent)?,
                l: constants.c * positive("reference_time_s", reference_time_s)?,
            },
            MetricField::WeakFieldDustBall { mass_kg, radius_m } => Family::DustBall {
                m: constants.geometric_mass(positive("mass_kg", mass_kg)?),
                radius: positive("radius_m", radius_m)?,
            },
        };
        Ok(Self {
            field,
            family,
            constants,
        })
    }

    pub fn minkowski(constants: PhysicalConstants) -> Self {
        Self::new(MetricField::Minkowski, constants).expect("minkowski has no parameters")
    }

    pub fn field(&self) -> &MetricField {
        &self.field
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub(crate) fn family(&self) -> Family {
        self.family
    }

    pub fn chart(&self) -> Chart {
        match self.family {
            Family::Schwarzschild { .. } | Family::Star { .. } => Chart::Spherical,
            _ => Chart::Cartesian,
        }
    }

    /// Static spacetimes admit a time-translation symmetry along `∂_t`.
    pub fn is_static(&self) -> bool {
        !matches!(self.family, Family::Frw { .. })
    }

    /// Schwarzschild radius `2GM/c²` of the central or total mass, if any.
    pub fn schwarzschild_radius(&self) -> Option<f64> {
        match self.family {
            Family::Schwarzschild { m } | Family::Star { m, .. } | Family::DustBall { m, .. } => {
                Some(2.0 * m)
            }
            _ => None,
        }
    }

    fn check_domain(&self, x: &[f64; 4]) -> Result<()> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularChart(format!("non-finite coordinates {x:?}")));
        }
        match self.family {
            Family::Minkowski | Family::DustBall { .. } => Ok(()),
            Family::Schwarzschild { m } | Family::Star { m, .. } => {
                let r = x[1];
                if r <= 0.0 {
                    return Err(Error::SingularChart(format!("r = {r} m at the origin")));
                }
                if matches!(self.family, Family::Schwarzschild { .. }) && r <= 2.0 * m {
                    return Err(Error::SingularChart(format!(
                        "r = {r} m is on or inside the horizon r_s = {} m",
                        2.0 * m
                    )));
                }
                if x[2].sin() == 0.0 {
                    return Err(Error::SingularChart(format!("θ = {} on the polar axis", x[2])));
                }
                Ok(())
            }
            Family::Frw { .. } => {
                if x[0] <= 0.0 {
                    Err(Error::SingularChart(format!(
                        "t = {} s at or before the big bang",
                        x[0] / self.constants.c
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Metric components and their first derivatives `[c][a][b] = ∂_c g_ab`
    /// in closed form.
    fn metric_and_derivatives(&self, x: &[f64; 4]) -> (Tensor2, [Tensor2; 4]) {
        let mut g = [[0.0; 4]; 4];
        let mut dg = [[[0.0; 4]; 4]; 4];
        match self.family {
            Family::Minkowski | Family::DustBall { .. } => {
                g[0][0] = -1.0;
                g[1][1] = 1.0;
                g[2][2] = 1.0;
                g[3][3] = 1.0;
            }
            Family::Schwarzschild { m } => {
                schwarzschild_exterior(m, x, &mut g, &mut dg);
            }
            Family::Star { m, radius } => {
                if x[1] >= radius {
                    schwarzschild_exterior(m, x, &mut g, &mut dg);
                } else {
                    let r = x[1];
                    let (s, c) = x[2].sin_cos();
                    let k = 2.0 * m / radius.powi(3);
                    let b = (1.0 - k * r * r).sqrt();
                    let a = 1.5 * (1.0 - 2.0 * m / radius).sqrt() - 0.5 * b;
                    let da = 0.5 * k * r / b;
                    g[0][0] = -a * a;
                    g[1][1] = 1.0 / (b * b);
                    g[2][2] = r * r;
                    g[3][3] = r * r * s * s;
                    dg[1][0][0] = -2.0 * a * da;
                    dg[1][1][1] = 2.0 * k * r / (b * b * b * b);
                    dg[1][2][2] = 2.0 * r;
                    dg[1][3][3] = 2.0 * r * s * s;
                    dg[2][3][3] = 2.0 * r * r * s * c;
                }
            }
            Family::Frw { p, l } => {
                let a = (x[0] / l).powf(p);
                let adot = p * a / x[0];
                g[0][0] = -1.0;
                for i in 1..4 {
                    g[i][i] = a * a;
                    dg[0][i][i] = 2.0 * a * adot;
                }
            }
        }
        (g, dg)
    }

    fn metric_geometric(&self, x: &[f64; 4]) -> Result<Tensor2> {
        self.check_domain(x)?;
        Ok(self.metric_and_derivatives(x).0)
    }

    /// `g_ab` at a chart point (dimensionless, signature −+++).
    pub fn metric_at(&self, p: &ChartPoint) -> Result<Tensor2> {
        self.metric_geometric(&p.geometric(self.constants.c))
    }

    /// `√(−det g)` on the geometric chart.
    pub fn volume_density_at(&self, p: &ChartPoint) -> Result<f64> {
        let g = self.metric_at(p)?;
        let det = Matrix4::from_fn(|i, j| g[i][j]).determinant();
        if det >= 0.0 {
            return Err(Error::SingularChart(format!("det g = {det} is not negative")));
        }
        Ok((-det).sqrt())
    }

    pub(crate) fn christoffel_geometric(
        &self,
        x: &[f64; 4],
        mode: ChristoffelMode,
    ) -> Result<Christoffel> {
        self.check_domain(x)?;
        let (g, dg_analytic) = self.metric_and_derivatives(x);
        let dg = match mode {
            ChristoffelMode::Analytic => dg_analytic,
            ChristoffelMode::FiniteDifference { h } => {
                if !(h.is_finite() && h > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "finite-difference step must be positive, got {h}"
                    )));
                }
                let mut dg = [[[0.0; 4]; 4]; 4];
                for (c, slot) in dg.iter_mut().enumerate() {
                    let step = h * x[c].abs().max(1.0);
                    *slot = five_point(x, c, step, |y| self.metric_geometric(y))?;
                }
                dg
            }
        };
        let ginv = inverse(&g)?;
        let mut gamma = [[[0.0; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in b..4 {
                    let mut sum = 0.0;
                    for d in 0..4 {
                        if ginv[a][d] != 0.0 {
                            sum += ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
                        }
                    }
                    gamma[a][b][c] = 0.5 * sum;
                    gamma[a][c][b] = 0.5 * sum;
                }
            }
        }
        Ok(gamma)
    }

    /// `Γ^a_bc` at a chart point.
    pub fn christoffel_at(&self, p: &ChartPoint, mode: ChristoffelMode) -> Result<Christoffel> {
        self.christoffel_geometric(&p.geometric(self.constants.c), mode)
    }

    /// `R^a_bcd` from five-point differences of the analytic connection.
    ///
    /// This is the curvature of the metric itself; for the dust ball it is
    /// identically zero because the background is flat.
    pub fn riemann_at(&self, p: &ChartPoint, h: f64) -> Result<Riemann> {
        let x = p.geometric(self.constants.c);
        let gamma = self.christoffel_geometric(&x, ChristoffelMode::Analytic)?;
        let mut dgamma = [[[[0.0; 4]; 4]; 4]; 4]; // [d][a][b][c] = ∂_d Γ^a_bc
        for (d, slot) in dgamma.iter_mut().enumerate() {
            let step = h * x[d].abs().max(1.0);
            *slot = five_point(&x, d, step, |y| {
                self.christoffel_geometric(y, ChristoffelMode::Analytic)
            })?;
        }
        let mut riemann = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let mut v = dgamma[c][a][d][b] - dgamma[d][a][c][b];
                        for e in 0..4 {
                            v += gamma[a][c][e] * gamma[e][d][b] - gamma[a][d][e] * gamma[e][c][b];
                        }
                        riemann[a][b][c][d] = v;
                    }
                }
            }
        }
        Ok(riemann)
    }

    /// `R_bd = R^a_bad` contracted from the finite-difference Riemann tensor.
    pub fn ricci_tensor_numeric(&self, p: &ChartPoint, h: f64) -> Result<Tensor2> {
        let riemann = self.riemann_at(p, h)?;
        let mut ricci = [[0.0; 4]; 4];
        for b in 0..4 {
            for d in 0..4 {
                ricci[b][d] = (0..4).map(|a| riemann[a][b][a][d]).sum();
            }
        }
        Ok(ricci)
    }

    /// Ricci scalar from the finite-difference Riemann tensor.
    pub fn ricci_scalar_numeric(&self, p: &ChartPoint, h: f64) -> Result<f64> {
        let ricci = self.ricci_tensor_numeric(p, h)?;
        let ginv = inverse(&self.metric_at(p)?)?;
        Ok(contract(&ginv, &ricci))
    }

    pub(crate) fn fluid_geometric(&self, x: &[f64; 4]) -> Option<Fluid> {
        match self.family {
            Family::Minkowski | Family::Schwarzschild { .. } => None,
            Family::Star { m, radius } => {
                let r = x[1];
                if r >= radius {
                    return None;
                }
                let rho = 3.0 * m / (4.0 * PI * radius.powi(3));
                let s = (1.0 - 2.0 * m / radius).sqrt();
                let b = (1.0 - 2.0 * m * r * r / radius.powi(3)).sqrt();
                let a = 1.5 * s - 0.5 * b;
                Some(Fluid {
                    rho,
                    pressure: rho * (b - s) / (2.0 * a),
                    u_cov: [-a, 0.0, 0.0, 0.0],
                })
            }
            Family::Frw { p, .. } => {
                let t2 = x[0] * x[0];
                Some(Fluid {
                    rho: 3.0 * p * p / (8.0 * PI * t2),
                    pressure: -p * (3.0 * p - 2.0) / (8.0 * PI * t2),
                    u_cov: [-1.0, 0.0, 0.0, 0.0],
                })
            }
            Family::DustBall { m, radius } => {
                let r2 = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
                (r2 <= radius * radius).then(|| Fluid {
                    rho: 3.0 * m / (4.0 * PI * radius.powi(3)),
                    pressure: 0.0,
                    u_cov: [-1.0, 0.0, 0.0, 0.0],
                })
            }
        }
    }

    fn fluid_stress_geometric(&self, x: &[f64; 4], g: &Tensor2) -> Tensor2 {
        let mut t = [[0.0; 4]; 4];
        if let Some(f) = self.fluid_geometric(x) {
            for a in 0..4 {
                for b in 0..4 {
                    t[a][b] = (f.rho + f.pressure) * f.u_cov[a] * f.u_cov[b] + f.pressure * g[a][b];
                }
            }
        }
        t
    }

    /// `R_ab` in closed form (m⁻²), via the trace-reversed Einstein equations
    /// applied to the family's matter content.
    pub fn ricci_tensor_at(&self, p: &ChartPoint) -> Result<Tensor2> {
        let x = p.geometric(self.constants.c);
        let g = self.metric_geometric(&x)?;
        let t = self.fluid_stress_geometric(&x, &g);
        let trace = contract(&inverse(&g)?, &t);
        let mut ricci = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                ricci[a][b] = 8.0 * PI * (t[a][b] - 0.5 * trace * g[a][b]);
            }
        }
        Ok(ricci)
    }

    /// Ricci scalar `R` (m⁻²) in closed form.
    pub fn ricci_scalar_at(&self, p: &ChartPoint) -> Result<f64> {
        let x = p.geometric(self.constants.c);
        self.check_domain(&x)?;
        Ok(self.ricci_scalar_geometric(&x))
    }

    /// Closed-form `R` without the chart-domain check, for Monte Carlo
    /// integrands that may land on coordinate singularities of measure zero.
    pub(crate) fn ricci_scalar_geometric(&self, x: &[f64; 4]) -> f64 {
        self.fluid_geometric(x)
            .map_or(0.0, |f| 8.0 * PI * (f.rho - 3.0 * f.pressure))
    }

    /// Adjusted trace `T^a_a − 4ρ_Λ` (J/m³) at a geometric point, failing when
    /// it is positive beyond round-off.
    pub(crate) fn checked_trace(&self, x: &[f64; 4], lambda_adjustment: f64) -> Result<f64> {
        let k = self.constants.energy_density_factor();
        let (raw, scale) = self.fluid_geometric(x).map_or((0.0, 0.0), |f| {
            ((3.0 * f.pressure - f.rho) * k, (f.rho + 3.0 * f.pressure.abs()) * k)
        });
        let adjusted = raw - 4.0 * lambda_adjustment;
        let tolerance = 1e-8 * (scale + 4.0 * lambda_adjustment.abs());
        if adjusted > tolerance {
            return Err(Error::EnergyPositivity {
                trace: adjusted,
                tolerance,
            });
        }
        Ok(adjusted)
    }

    /// `√(−g_tt)` of a static spherically symmetric chart at areal radius `r`
    /// (`r = 0` allowed inside a star).
    pub fn static_lapse(&self, r: f64) -> Result<f64> {
        let exterior = |m: f64| {
            if r <= 2.0 * m {
                Err(Error::Horizon(format!(
                    "static observers need r > r_s = {} m, got r = {r} m",
                    2.0 * m
                )))
            } else {
                Ok((1.0 - 2.0 * m / r).sqrt())
            }
        };
        match self.family {
            Family::Schwarzschild { m } => exterior(m),
            Family::Star { m, radius } if r >= radius => exterior(m),
            Family::Star { m, radius } if r >= 0.0 => {
                let s = (1.0 - 2.0 * m / radius).sqrt();
                let b = (1.0 - 2.0 * m * r * r / radius.powi(3)).sqrt();
                Ok(1.5 * s - 0.5 * b)
            }
            Family::Minkowski | Family::DustBall { .. } => Ok(1.0),
            _ => Err(Error::Unsupported(format!(
                "no static lapse at r = {r} for {:?}",
                self.field
            ))),
        }
    }

    /// `T_ab = (c⁴/8πG)(R_ab − ½ g_ab R)` with an optional vacuum-energy
    /// adjustment `ρ_Λ` (J/m³). Fails if the adjusted trace is positive.
    pub fn stress_energy_at(&self, p: &ChartPoint, lambda_adjustment: f64) -> Result<StressEnergy> {
        let g = self.metric_at(p)?;
        let ginv = inverse(&g)?;
        let ricci = self.ricci_tensor_at(p)?;
        let scalar = contract(&ginv, &ricci);
        let k = self.constants.energy_density_factor() / (8.0 * PI);
        let mut components = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                components[a][b] = k * (ricci[a][b] - 0.5 * g[a][b] * scalar);
            }
        }
        let trace = contract(&ginv, &components);
        let adjusted_trace = trace - 4.0 * lambda_adjustment;
        let u0 = 1.0 / (-g[0][0]).sqrt();
        let energy_density = components[0][0] * u0 * u0 + lambda_adjustment;

        let scale = components
            .iter()
            .flatten()
            .fold(lambda_adjustment.abs(), |m, v| m.max(v.abs()));
        let tolerance = 1e-8 * scale;
        if adjusted_trace > tolerance {
            return Err(Error::EnergyPositivity {
                trace: adjusted_trace,
                tolerance,
            });
        }
        Ok(StressEnergy {
            components,
            trace,
            lambda_adjustment,
            adjusted_trace,
            energy_density,
        })
    }
}

fn schwarzschild_exterior(m: f64, x: &[f64; 4], g: &mut Tensor2, dg: &mut [Tensor2; 4]) {
    let r = x[1];
    let (s, c) = x[2].sin_cos();
    let f = 1.0 - 2.0 * m / r;
    let df = 2.0 * m / (r * r);
    g[0][0] = -f;
    g[1][1] = 1.0 / f;
    g[2][2] = r * r;
    g[3][3] = r * r * s * s;
    dg[1][0][0] = -df;
    dg[1][1][1] = -df / (f * f);
    dg[1][2][2] = 2.0 * r;
    dg[1][3][3] = 2.0 * r * s * s;
    dg[2][3][3] = 2.0 * r * r * s * c;
}

/// Five-point central derivative of a tensor-valued function along `axis`.
fn five_point<T, F>(x: &[f64; 4], axis: usize, h: f64, f: F) -> Result<T>
where
    T: TensorLike,
    F: Fn(&[f64; 4]) -> Result<T>,
{
    let shifted = |k: f64| {
        let mut y = *x;
        y[axis] += k * h;
        f(&y)
    };
    let (m2, m1, p1, p2) = (shifted(-2.0)?, shifted(-1.0)?, shifted(1.0)?, shifted(2.0)?);
    Ok(T::stencil(&m2, &m1, &p1, &p2, 1.0 / (12.0 * h)))
}

/// Differences are taken before weighting so coordinate-independent
/// components cancel exactly.
fn stencil_value(m2: f64, m1: f64, p1: f64, p2: f64, scale: f64) -> f64 {
    (8.0 * (p1 - m1) - (p2 - m2)) * scale
}

trait TensorLike: Sized {
    fn stencil(m2: &Self, m1: &Self, p1: &Self, p2: &Self, scale: f64) -> Self;
}

impl TensorLike for Tensor2 {
    fn stencil(m2: &Self, m1: &Self, p1: &Self, p2: &Self, scale: f64) -> Self {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| stencil_value(m2[a][b], m1[a][b], p1[a][b], p2[a][b], scale))
        })
    }
}

impl TensorLike for Christoffel {
    fn stencil(m2: &Self, m1: &Self, p1: &Self, p2: &Self, scale: f64) -> Self {
        std::array::from_fn(|a| Tensor2::stencil(&m2[a], &m1[a], &p1[a], &p2[a], scale))
    }
}

pub(crate) fn inverse(g: &Tensor2) -> Result<Tensor2> {
    let m = Matrix4::from_fn(|i, j| g[i][j]);
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::SingularChart("metric is not invertible".into()))?;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| inv[(i, j)])))
}

/// `Aᵃᵇ B_ab`.
pub(crate) fn contract(upper: &Tensor2, lower: &Tensor2) -> f64 {
    let mut s = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            s += upper[a][b] * lower[a][b];
        }
    }
    s
}

/// Numbers of negative and positive eigenvalues of a symmetric 4×4 matrix.
pub fn signature(g: &Tensor2) -> (usize, usize) {
    let eig = SymmetricEigen::new(Matrix4::from_fn(|i, j| g[i][j]));
    let neg = eig.eigenvalues.iter().filter(|v| **v < 0.0).count();
    let pos = eig.eigenvalues.iter().filter(|v| **v > 0.0).count();
    (neg, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    /// Mass (kg) whose geometric mass GM/c² equals `m` meters.
    fn mass_for(m: f64) -> f64 {
        let k = k();
        m * k.c * k.c / k.g
    }

    fn schwarzschild(m: f64) -> Spacetime {
        Spacetime::new(MetricField::SchwarzschildExterior { mass_kg: mass_for(m) }, k()).unwrap()
    }

    fn dust_frw() -> Spacetime {
        Spacetime::new(
            MetricField::FlatFrw {
                exponent: 2.0 / 3.0,
                reference_time_s: 1.0,
            },
            k(),
        )
        .unwrap()
    }

    fn star(m: f64, radius: f64) -> Spacetime {
        Spacetime::new(
            MetricField::SchwarzschildInterior {
                mass_kg: mass_for(m),
                radius_m: radius,
            },
            k(),
        )
        .unwrap()
    }

    fn max_abs_diff3(a: &Christoffel, b: &Christoffel) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for l in 0..4 {
                    m = m.max((a[i][j][l] - b[i][j][l]).abs());
                }
            }
        }
        m
    }

    #[test]
    fn minkowski_is_diagonal_and_flat() {
        let st = Spacetime::minkowski(k());
        let p = ChartPoint::new(3.0, [1.0, -2.0, 5.0]);
        let g = st.metric_at(&p).unwrap();
        assert_eq!(g[0][0], -1.0);
        assert_eq!(g[3][3], 1.0);
        assert_eq!(g[0][1], 0.0);
        let gamma = st.christoffel_at(&p, ChristoffelMode::Analytic).unwrap();
        assert!(gamma.iter().flatten().flatten().all(|v| *v == 0.0));
        assert_eq!(st.ricci_scalar_at(&p).unwrap(), 0.0);
        let t = st.stress_energy_at(&p, 0.0).unwrap();
        assert!(t.components.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn schwarzschild_gtt_closed_form() {
        let m = 1000.0;
        let st = schwarzschild(m);
        let rs = st.schwarzschild_radius().unwrap();
        assert!(((rs - 2.0 * m) / rs).abs() < 1e-12);
        let r = 7.5 * rs;
        let g = st.metric_at(&ChartPoint::new(0.0, [r, 1.0, 0.3])).unwrap();
        assert!((g[0][0] + (1.0 - rs / r)).abs() < 1e-14);
        assert!((g[1][1] - 1.0 / (1.0 - rs / r)).abs() < 1e-14);
    }

    #[test]
    fn horizon_and_origin_are_singular() {
        let st = schwarzschild(10.0);
        for r in [20.0, 0.0, 5.0] {
            let err = st.metric_at(&ChartPoint::new(0.0, [r, 1.0, 0.0])).unwrap_err();
            assert!(matches!(err, Error::SingularChart(_)), "{err}");
        }
        let frw = dust_frw();
        assert!(frw.metric_at(&ChartPoint::new(0.0, [0.0; 3])).is_err());
    }

    #[test]
    fn frw_spatial_components_follow_scale_factor() {
        let st = dust_frw();
        let t = 8.0;
        let g = st.metric_at(&ChartPoint::new(t, [1.0, 2.0, 3.0])).unwrap();
        let a = t.powf(2.0 / 3.0);
        assert!((g[1][1] - a * a).abs() < 1e-12 * a * a);
        assert_eq!(g[0][0], -1.0);
    }

    #[test]
    fn frw_christoffel_time_space_space() {
        // Oracle: a(x0) = (x0/L)^p, d/dx0 a = p a / x0, Γ^0_xx = a·ȧ.
        let st = dust_frw();
        let c = k().c;
        let t = 5.0;
        let x0 = c * t;
        let a = (x0 / c).powf(2.0 / 3.0);
        let adot = (2.0 / 3.0) * a / x0;
        let gamma = st
            .christoffel_at(&ChartPoint::new(t, [0.0; 3]), ChristoffelMode::Analytic)
            .unwrap();
        assert!(((gamma[0][1][1] - a * adot) / (a * adot)).abs() < 1e-12);
        assert!(((gamma[1][0][1] - adot / a) / (adot / a)).abs() < 1e-12);
    }

    #[test]
    fn finite_difference_christoffel_matches_analytic() {
        let m = 1500.0;
        let st = schwarzschild(m);
        let p = ChartPoint::new(0.0, [20.0 * m, 1.1, 0.4]);
        let exact = st.christoffel_at(&p, ChristoffelMode::Analytic).unwrap();
        let fd = st
            .christoffel_at(&p, ChristoffelMode::finite_difference(DEFAULT_FD_STEP))
            .unwrap();
        let d = max_abs_diff3(&exact, &fd);
        assert!(d < 1e-8, "{d}");
    }

    #[test]
    fn finite_difference_converges_at_fourth_order() {
        let st = schwarzschild(1.0);
        let p = ChartPoint::new(0.0, [8.0, 1.0, 0.0]);
        let exact = st.christoffel_at(&p, ChristoffelMode::Analytic).unwrap();
        let err = |h: f64| {
            let fd = st
                .christoffel_at(&p, ChristoffelMode::finite_difference(h))
                .unwrap();
            max_abs_diff3(&exact, &fd)
        };
        let (coarse, fine) = (err(0.04), err(0.02));
        let ratio = coarse / fine;
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn frw_ricci_scalar_closed_form() {
        // R = 6(ä/a + (ȧ/a)²) = 4/(3 x0²) for p = 2/3.
        let st = dust_frw();
        let t = 2.0;
        let x0 = k().c * t;
        let p = ChartPoint::new(t, [1.0, 0.0, 0.0]);
        let r = st.ricci_scalar_at(&p).unwrap();
        let expected = 4.0 / (3.0 * x0 * x0);
        assert!(((r - expected) / expected).abs() < 1e-12);
        let numeric = st.ricci_scalar_numeric(&p, 1e-3).unwrap();
        assert!(((numeric - expected) / expected).abs() < 1e-6, "{numeric} vs {expected}");
    }

    #[test]
    fn schwarzschild_is_vacuum() {
        let st = schwarzschild(1.0);
        for r in [6.0, 20.0, 60.0, 200.0] {
            let p = ChartPoint::new(0.0, [r, 0.9, 2.0]);
            let ricci = st.ricci_tensor_numeric(&p, 1e-3).unwrap();
            let max = ricci.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(max < 1e-8, "r={r}: {max}");
            assert!(st.ricci_scalar_numeric(&p, 1e-3).unwrap().abs() < 1e-8);
            let t = st.stress_energy_at(&p, 0.0).unwrap();
            assert!(t.trace.abs() < 1e-8);
        }
    }

    #[test]
    fn star_interior_closed_form_matches_metric_curvature() {
        let m = 1.0;
        let st = star(m, 5.0);
        let p = ChartPoint::new(0.0, [2.0, 1.2, 0.3]);
        let closed = st.ricci_tensor_at(&p).unwrap();
        let numeric = st.ricci_tensor_numeric(&p, 1e-3).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let scale = closed[a][b].abs().max(1e-3);
                assert!(
                    (closed[a][b] - numeric[a][b]).abs() < 1e-6 * scale,
                    "R_{a}{b}: {} vs {}",
                    closed[a][b],
                    numeric[a][b]
                );
            }
        }
    }

    #[test]
    fn frw_trace_is_minus_rho_c2() {
        // Friedmann: H = p/t, ρ = 3H²/(8πG); dust has T = −ρc².
        let st = dust_frw();
        let k = k();
        let t = 3.0;
        let h = (2.0 / 3.0) / t;
        let rho = 3.0 * h * h / (8.0 * PI * k.g);
        let se = st.stress_energy_at(&ChartPoint::new(t, [0.0; 3]), 0.0).unwrap();
        let expected = -rho * k.c * k.c;
        assert!(((se.trace - expected) / expected).abs() < 1e-10);
        assert!(((se.energy_density - rho * k.c * k.c) / expected).abs() < 1e-10);
    }

    #[test]
    fn stiff_fluid_needs_lambda() {
        // p < 1/2 gives w > 1/3 and a positive trace.
        let st = Spacetime::new(
            MetricField::FlatFrw {
                exponent: 0.4,
                reference_time_s: 1.0,
            },
            k(),
        )
        .unwrap();
        let p = ChartPoint::new(1.0, [0.0; 3]);
        assert!(matches!(
            st.stress_energy_at(&p, 0.0),
            Err(Error::EnergyPositivity { .. })
        ));
        let raw = st
            .stress_energy_at(&p, 1e30)
            .map(|s| s.trace)
            .unwrap();
        assert!(st.checked_trace(&[k().c, 0.0, 0.0, 0.0], 0.0).is_err());
        let fixed = st.stress_energy_at(&p, raw / 4.0 * 1.01).unwrap();
        assert!(fixed.adjusted_trace <= 0.0);
        assert!(fixed.energy_density >= 0.0);
    }

    #[test]
    fn compact_star_center_violates_positivity() {
        // p_c > ρc²/3 once compactness exceeds 5/9.
        let st = star(1.0, 2.0 / 0.7);
        let p = ChartPoint::new(0.0, [1e-3, 1.0, 0.0]);
        assert!(matches!(
            st.stress_energy_at(&p, 0.0),
            Err(Error::EnergyPositivity { .. })
        ));
        let mild = star(1.0, 2.0 / 0.3);
        assert!(mild.stress_energy_at(&p, 0.0).is_ok());
    }

    #[test]
    fn buchdahl_limit_is_enforced() {
        let r = Spacetime::new(
            MetricField::SchwarzschildInterior {
                mass_kg: mass_for(1.0),
                radius_m: 2.2,
            },
            k(),
        );
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    fn sample_point(st: &Spacetime, u: [f64; 4]) -> ChartPoint {
        match st.family() {
            Family::Schwarzschild { m } => {
                ChartPoint::new(u[0], [m * (3.0 + 97.0 * u[1]), 0.1 + 2.9 * u[2], 6.0 * u[3]])
            }
            Family::Star { radius, .. } => {
                ChartPoint::new(u[0], [radius * (0.05 + 1.9 * u[1]), 0.1 + 2.9 * u[2], 6.0 * u[3]])
            }
            Family::Frw { .. } => ChartPoint::new(0.5 + 10.0 * u[0], [u[1], u[2], u[3]]),
            _ => ChartPoint::new(u[0], [u[1], u[2], u[3]]),
        }
    }

    proptest! {
        #[test]
        fn metric_is_symmetric_lorentzian(
            which in 0usize..5,
            u in proptest::array::uniform4(0.0f64..1.0),
        ) {
            let catalog = [
                Spacetime::minkowski(k()),
                schwarzschild(2.0),
                star(1.0, 4.0),
                dust_frw(),
                Spacetime::new(MetricField::WeakFieldDustBall { mass_kg: 1e20, radius_m: 0.5 }, k()).unwrap(),
            ];
            let st = &catalog[which];
            let p = sample_point(st, u);
            let g = st.metric_at(&p).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    prop_assert_eq!(g[a][b], g[b][a]);
                }
            }
            prop_assert_eq!(signature(&g), (1, 3));
        }

        #[test]
        fn trace_identity_holds(
            which in 0usize..4,
            u in proptest::array::uniform4(0.0f64..1.0),
        ) {
            let catalog = [
                schwarzschild(2.0),
                star(1.0, 10.0),
                dust_frw(),
                Spacetime::new(MetricField::WeakFieldDustBall { mass_kg: 1e20, radius_m: 1.0 }, k()).unwrap(),
            ];
            let st = &catalog[which];
            let p = sample_point(st, u);
            let se = st.stress_energy_at(&p, 0.0).unwrap();
            let r = st.ricci_scalar_at(&p).unwrap();
            let expected = -k().energy_density_factor() / (8.0 * PI) * r;
            let tol = 1e-8 * expected.abs().max(1e-300);
            prop_assert!((se.trace - expected).abs() <= tol, "{} vs {}", se.trace, expected);
        }
    }
}
