//! Timelike and null geodesics on catalog metrics.
//!
//! The geodesic equation `ẍᵃ + Γᵃ_bc ẋᵇ ẋᶜ = 0` is integrated in geometric
//! units with an adaptive Dormand-Prince 5(4) pair. The velocity is never
//! re-projected onto the mass shell, so the drift of `g(u, u)` measures the
//! integrator error directly.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;
use crate::spacetime::{inverse, ChartPoint, ChristoffelMode, Family, Spacetime, Tensor2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodesicKind {
    Timelike,
    Null,
}

impl GeodesicKind {
    /// Target value of `g(u, u)` in geometric units.
    pub fn norm(&self) -> f64 {
        match self {
            GeodesicKind::Timelike => -1.0,
            GeodesicKind::Null => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    /// Affine parameter in seconds (proper time for timelike paths).
    pub tau: f64,
    pub point: ChartPoint,
    /// `dxᵃ/d(cτ)` on the geometric chart.
    pub velocity: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    pub kind: GeodesicKind,
    pub samples: Vec<PathSample>,
}

impl GeodesicPath {
    pub fn start(&self) -> &PathSample {
        &self.samples[0]
    }

    pub fn end(&self) -> &PathSample {
        self.samples.last().expect("paths hold at least one sample")
    }

    /// Parameter length `τ_end − τ_start`, s.
    pub fn length(&self) -> f64 {
        self.end().tau - self.start().tau
    }

    /// Largest `|g(u,u) − norm|` over all samples.
    pub fn max_norm_error(&self, st: &Spacetime) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in &self.samples {
            let g = st.metric_at(&s.point)?;
            worst = worst.max((norm(&g, &s.velocity) - self.kind.norm()).abs());
        }
        Ok(worst)
    }

    /// Cubic Hermite interpolation of the chart position at parameter `tau`.
    pub fn position_at(&self, tau: f64, c: f64) -> Option<[f64; 4]> {
        let s = &self.samples;
        if tau < s[0].tau || tau > self.end().tau {
            return None;
        }
        let i = s.partition_point(|x| x.tau <= tau).clamp(1, s.len().max(2) - 1);
        if s.len() == 1 {
            return Some(geometric(&s[0].point, c));
        }
        let (a, b) = (&s[i - 1], &s[i]);
        let h = c * (b.tau - a.tau);
        if h == 0.0 {
            return Some(geometric(&a.point, c));
        }
        let u = (tau - a.tau) / (b.tau - a.tau);
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        let (pa, pb) = (geometric(&a.point, c), geometric(&b.point, c));
        Some(std::array::from_fn(|k| {
            h00 * pa[k] + h10 * h * a.velocity[k] + h01 * pb[k] + h11 * h * b.velocity[k]
        }))
    }

    /// Writes `tau,t,x1,x2,x3,u0,u1,u2,u3` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "tau_s,t_s,x1,x2,x3,u0,u1,u2,u3")?;
        for s in &self.samples {
            let u = s.velocity;
            writeln!(
                out,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                s.tau, s.point.t, s.point.x[0], s.point.x[1], s.point.x[2], u[0], u[1], u[2], u[3]
            )?;
        }
        Ok(())
    }
}

fn geometric(p: &ChartPoint, c: f64) -> [f64; 4] {
    [c * p.t, p.x[0], p.x[1], p.x[2]]
}

pub(crate) fn norm(g: &Tensor2, u: &[f64; 4]) -> f64 {
    let mut s = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            s += g[a][b] * u[a] * u[b];
        }
    }
    s
}

/// Completes a spatial velocity `direction = (u¹, u², u³)` to a
/// future-directed 4-velocity with `g(u,u) = −1` (timelike) or `0` (null).
pub fn normalize_velocity(
    st: &Spacetime,
    p: &ChartPoint,
    direction: [f64; 3],
    kind: GeodesicKind,
) -> Result<[f64; 4]> {
    if kind == GeodesicKind::Null && direction.iter().all(|d| *d == 0.0) {
        return Err(Error::InvalidInput("null direction must be non-zero".into()));
    }
    let g = st.metric_at(p)?;
    inverse(&g)?;
    let a = g[0][0];
    if a >= 0.0 {
        return Err(Error::Unsupported(format!(
            "∂_t is not timelike at {p:?} (g_tt = {a})"
        )));
    }
    let b: f64 = (1..4).map(|i| g[0][i] * direction[i - 1]).sum();
    let mut c = -kind.norm();
    for i in 1..4 {
        for j in 1..4 {
            c += g[i][j] * direction[i - 1] * direction[j - 1];
        }
    }
    let disc = b * b - a * c;
    if disc < 0.0 {
        return Err(Error::Numeric(format!("no real time component (discriminant {disc})")));
    }
    let u0 = (-b - disc.sqrt()) / a;
    Ok([u0, direction[0], direction[1], direction[2]])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    /// Relative/absolute local error tolerance per step.
    pub tol: f64,
    /// Give up after this many accepted + rejected steps.
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_steps: 2_000_000,
        }
    }
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

type State = [f64; 8];

fn rhs(st: &Spacetime, y: &State) -> Result<State> {
    let x = [y[0], y[1], y[2], y[3]];
    let gamma = st.christoffel_geometric(&x, ChristoffelMode::Analytic)?;
    let mut out = [0.0; 8];
    out[..4].copy_from_slice(&y[4..]);
    for a in 0..4 {
        let mut acc = 0.0;
        for b in 0..4 {
            for c in 0..4 {
                acc += gamma[a][b][c] * y[4 + b] * y[4 + c];
            }
        }
        out[4 + a] = -acc;
    }
    Ok(out)
}

/// Integrates a geodesic from `p0` with initial velocity `u0` over the
/// affine interval `span = (τ_start, τ_end)` in seconds.
pub fn integrate_geodesic(
    st: &Spacetime,
    p0: ChartPoint,
    u0: [f64; 4],
    kind: GeodesicKind,
    span: (f64, f64),
    options: IntegratorOptions,
) -> Result<GeodesicPath> {
    let c = st.constants().c;
    let g0 = st.metric_at(&p0)?;
    let n0 = norm(&g0, &u0);
    let scale = u0.iter().fold(1.0f64, |m, v| m.max(v * v));
    if (n0 - kind.norm()).abs() > 1e-9 * scale {
        return Err(Error::InvalidInput(format!(
            "initial velocity has g(u,u) = {n0}, expected {} for a {kind:?} geodesic",
            kind.norm()
        )));
    }
    let (tau0, tau1) = span;
    if !(tau1 > tau0) {
        return Err(Error::InvalidInput(format!("empty span {span:?}")));
    }
    let tol = options.tol;
    let start = c * tau0;
    let end = c * tau1;

    let mut samples = vec![PathSample {
        tau: tau0,
        point: p0,
        velocity: u0,
    }];
    let mut y: State = [
        c * p0.t, p0.x[0], p0.x[1], p0.x[2], u0[0], u0[1], u0[2], u0[3],
    ];
    let mut lambda = start;
    let partial = |reason: String, samples: Vec<PathSample>| Error::PartialPath {
        reason,
        path: samples,
    };

    let mut k1 = match rhs(st, &y) {
        Ok(k) => k,
        Err(e) => return Err(partial(e.to_string(), samples)),
    };
    let ymag = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let fmag = k1.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
    let mut h = (0.01 * ymag / fmag).min(end - start) * tol.powf(0.2).max(1e-3);
    let mut steps = 0usize;

    while lambda < end {
        steps += 1;
        if steps > options.max_steps {
            return Err(partial(format!("exceeded {} steps", options.max_steps), samples));
        }
        let last = lambda + h >= end;
        if last {
            h = end - lambda;
        }
        if h <= 1e-14 * lambda.abs().max(1.0) {
            return Err(Error::Stiffness { at: lambda / c });
        }

        let mut k = [[0.0; 8]; 7];
        k[0] = k1;
        let mut failed = None;
        for s in 1..7 {
            let mut ys = y;
            for (i, v) in ys.iter_mut().enumerate() {
                *v += h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
            }
            match rhs(st, &ys) {
                Ok(f) => k[s] = f,
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failed {
            // Shrink towards the chart boundary before declaring the path partial.
            if h > 1e-10 * (end - start) {
                h *= 0.25;
                continue;
            }
            return Err(partial(e.to_string(), samples));
        }

        let mut y5 = y;
        let mut err: f64 = 0.0;
        for i in 0..8 {
            let d5: f64 = (0..7).map(|s| B5[s] * k[s][i]).sum();
            let d4: f64 = (0..7).map(|s| B4[s] * k[s][i]).sum();
            y5[i] += h * d5;
            let sc = tol * (1.0 + y[i].abs().max(y5[i].abs()));
            err = err.max((h * (d5 - d4)).abs() / sc);
        }

        if err <= 1.0 {
            lambda = if last { end } else { lambda + h };
            y = y5;
            k1 = k[6];
            samples.push(PathSample {
                tau: lambda / c,
                point: ChartPoint::new(y[0] / c, [y[1], y[2], y[3]]),
                velocity: [y[4], y[5], y[6], y[7]],
            });
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= grow;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
    }
    Ok(GeodesicPath { kind, samples })
}

/// Coordinate time (s) taken by a radial light ray between areal radii
/// `r_from` and `r_to` in a static spherically symmetric chart, or between
/// two points at distance `|r_to − r_from|` in flat charts.
pub fn radial_light_time(st: &Spacetime, r_from: f64, r_to: f64) -> Result<f64> {
    let c = st.constants().c;
    let (lo, hi) = if r_from <= r_to { (r_from, r_to) } else { (r_to, r_from) };
    let meters = match st.family() {
        Family::Minkowski | Family::DustBall { .. } => hi - lo,
        Family::Schwarzschild { m } => {
            check_outside(lo, 2.0 * m)?;
            tortoise(hi, m) - tortoise(lo, m)
        }
        Family::Star { m, radius } => {
            if lo < 0.0 {
                return Err(Error::InvalidInput(format!("negative radius {lo}")));
            }
            let inner_hi = hi.min(radius);
            let mut t = 0.0;
            if lo < radius {
                t += star_interior_light_time(m, radius, lo, inner_hi);
            }
            if hi > radius {
                let outer_lo = lo.max(radius);
                t += tortoise(hi, m) - tortoise(outer_lo, m);
            }
            t
        }
        Family::Frw { .. } => {
            return Err(Error::Unsupported(
                "radial light time needs a static chart; FRW uses comoving distances".into(),
            ))
        }
    };
    Ok(meters / c)
}

fn check_outside(r: f64, rs: f64) -> Result<()> {
    if r <= rs {
        Err(Error::Horizon(format!(
            "radius {r} m is not outside the horizon r_s = {rs} m"
        )))
    } else {
        Ok(())
    }
}

/// `r* = r + 2m ln(r/2m − 1)`.
fn tortoise(r: f64, m: f64) -> f64 {
    r + 2.0 * m * (r / (2.0 * m) - 1.0).ln()
}

/// `∫ √(g_rr / −g_tt) dr` inside a constant-density star.
fn star_interior_light_time(m: f64, radius: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let s = (1.0 - 2.0 * m / radius).sqrt();
    let k = 2.0 * m / radius.powi(3);
    let integrand = |r: f64| {
        let b = (1.0 - k * r * r).sqrt();
        let a = 1.5 * s - 0.5 * b;
        1.0 / (a * b)
    };
    let panels = (((hi - lo) / radius) * 4.0).ceil().max(1.0) as usize;
    quadrature::integrate(integrand, lo, hi, panels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::MetricField;
    use crate::units::PhysicalConstants;

    fn k() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    fn schwarzschild(m: f64) -> Spacetime {
        let k = k();
        Spacetime::new(
            MetricField::SchwarzschildExterior {
                mass_kg: m * k.c * k.c / k.g,
            },
            k,
        )
        .unwrap()
    }

    #[test]
    fn static_minkowski_worldline() {
        let st = Spacetime::minkowski(k());
        let p0 = ChartPoint::new(0.0, [1.0, 2.0, 3.0]);
        let u0 = normalize_velocity(&st, &p0, [0.0; 3], GeodesicKind::Timelike).unwrap();
        assert_eq!(u0, [1.0, 0.0, 0.0, 0.0]);
        let path = integrate_geodesic(
            &st, p0, u0, GeodesicKind::Timelike, (0.0, 1e-6), IntegratorOptions::default(),
        )
        .unwrap();
        let end = path.end();
        assert_eq!(end.point.x, [1.0, 2.0, 3.0]);
        assert!((end.point.t - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn boosted_minkowski_is_straight() {
        let st = Spacetime::minkowski(k());
        let c = k().c;
        let p0 = ChartPoint::new(0.0, [0.0; 3]);
        let u0 = normalize_velocity(&st, &p0, [0.75, 0.0, 0.0], GeodesicKind::Timelike).unwrap();
        assert!((u0[0] - 1.25).abs() < 1e-15);
        let path = integrate_geodesic(
            &st, p0, u0, GeodesicKind::Timelike, (0.0, 2e-6), IntegratorOptions::default(),
        )
        .unwrap();
        for s in &path.samples {
            let v = s.point.x[0] / (c * s.point.t).max(1e-300);
            if s.point.t > 0.0 {
                assert!((v - 0.6).abs() < 1e-12);
            }
            assert!((s.point.t - 1.25 * s.tau).abs() < 1e-18);
        }
    }

    #[test]
    fn null_normalization() {
        let st = Spacetime::minkowski(k());
        let p = ChartPoint::new(0.0, [0.0; 3]);
        assert_eq!(
            normalize_velocity(&st, &p, [1.0, 0.0, 0.0], GeodesicKind::Null).unwrap(),
            [1.0, 1.0, 0.0, 0.0]
        );
        assert!(normalize_velocity(&st, &p, [0.0; 3], GeodesicKind::Null).is_err());

        let m = 100.0;
        let st = schwarzschild(m);
        let r = 20.0 * m; // 10 r_s
        let p = ChartPoint::new(0.0, [r, 1.0, 0.0]);
        let k = normalize_velocity(&st, &p, [1.0, 0.0, 0.0], GeodesicKind::Null).unwrap();
        // g_tt k0² + g_rr = 0 -> k0 = 1/(1 − r_s/r)
        let f = 1.0 - 2.0 * m / r;
        assert!((k[0] - 1.0 / f).abs() < 1e-12);
        let g = st.metric_at(&p).unwrap();
        assert!(norm(&g, &k).abs() < 1e-12);
    }

    fn circular_orbit(m: f64, r: f64) -> (Spacetime, ChartPoint, [f64; 4]) {
        let st = schwarzschild(m);
        let p0 = ChartPoint::new(0.0, [r, std::f64::consts::FRAC_PI_2, 0.0]);
        let omega = (m / r.powi(3)).sqrt(); // dφ/d(ct)
        let ut = 1.0 / (1.0 - 3.0 * m / r).sqrt();
        (st, p0, [ut, 0.0, 0.0, omega * ut])
    }

    #[test]
    fn circular_orbit_angular_velocity() {
        let m = 1.0;
        let r = 6.0 * m;
        let (st, p0, u0) = circular_orbit(m, r);
        let c = k().c;
        let period = 2.0 * std::f64::consts::PI * (r.powi(3) / m).sqrt() / c;
        let path = integrate_geodesic(
            &st, p0, u0, GeodesicKind::Timelike, (0.0, 3.0 * period), IntegratorOptions::default(),
        )
        .unwrap();
        let end = path.end();
        let omega = end.point.x[2] / (c * end.point.t);
        let expected = (m / r.powi(3)).sqrt();
        assert!(((omega - expected) / expected).abs() < 1e-6);
        assert!((end.point.x[0] - r).abs() < 1e-6 * r);
    }

    #[test]
    fn norm_is_conserved_over_many_dynamical_times() {
        let m = 1.0;
        let r = 6.0 * m;
        let (st, p0, u0) = circular_orbit(m, r);
        let c = k().c;
        let dynamical = (r.powi(3) / m).sqrt() / c;
        let path = integrate_geodesic(
            &st, p0, u0, GeodesicKind::Timelike, (0.0, 100.0 * dynamical), IntegratorOptions::default(),
        )
        .unwrap();
        let drift = path.max_norm_error(&st).unwrap();
        assert!(drift <= 1e-9, "drift {drift}");
        assert!(path.samples.windows(2).all(|w| w[1].tau > w[0].tau));
    }

    #[test]
    fn time_reversal_returns_to_start() {
        let m = 1.0;
        let st = schwarzschild(m);
        let c = k().c;
        let p0 = ChartPoint::new(0.0, [12.0, std::f64::consts::FRAC_PI_2, 0.3]);
        let u0 = normalize_velocity(&st, &p0, [0.01, 0.0, 0.025], GeodesicKind::Timelike).unwrap();
        let span = 200.0 / c;
        let opts = IntegratorOptions::default();
        let fwd = integrate_geodesic(&st, p0, u0, GeodesicKind::Timelike, (0.0, span), opts).unwrap();
        let end = fwd.end();
        let back_u = end.velocity.map(|v| -v);
        let back =
            integrate_geodesic(&st, end.point, back_u, GeodesicKind::Timelike, (0.0, span), opts).unwrap();
        let q = back.end().point;
        let dist = ((c * (q.t - p0.t)).powi(2)
            + (0..3).map(|i| (q.x[i] - p0.x[i]).powi(2)).sum::<f64>())
        .sqrt();
        assert!(dist < 1e-8 * 200.0, "distance {dist}");
    }

    #[test]
    fn radial_null_round_trip_is_stationary() {
        // Radial null rays have dr/dλ constant, so an affine span of (r2 − r1)/k_r
        // lands exactly on r2.
        let m = 1.0;
        let st = schwarzschild(m);
        let c = k().c;
        let (r1, r2) = (40.0, 50.0);
        let opts = IntegratorOptions::default();
        let round_trip = |t1: f64| {
            let p = ChartPoint::new(t1, [r1, 1.0, 0.5]);
            let out = normalize_velocity(&st, &p, [1.0, 0.0, 0.0], GeodesicKind::Null).unwrap();
            let up = integrate_geodesic(&st, p, out, GeodesicKind::Null, (0.0, (r2 - r1) / c), opts)
                .unwrap();
            let bounce = up.end().point;
            assert!((bounce.x[0] - r2).abs() < 1e-9);
            let back = normalize_velocity(&st, &bounce, [-1.0, 0.0, 0.0], GeodesicKind::Null).unwrap();
            let down =
                integrate_geodesic(&st, bounce, back, GeodesicKind::Null, (0.0, (r2 - r1) / c), opts)
                    .unwrap();
            down.end().point.t - t1
        };
        let a = round_trip(0.0);
        let b = round_trip(3e-6);
        assert!(((a - b) / a).abs() < 1e-8);
        let closed = 2.0 * radial_light_time(&st, r1, r2).unwrap();
        assert!(((a - closed) / closed).abs() < 1e-8, "{a} vs {closed}");
    }

    #[test]
    fn radial_light_time_matches_quadrature() {
        let m = 3.0;
        let st = schwarzschild(m);
        let c = k().c;
        let (r1, r2) = (20.0 * 2.0 * m, 25.0 * 2.0 * m);
        // Independent oracle: trapezoid on dt/dr = 1/(1 − r_s/r).
        let n = 200_000;
        let h = (r2 - r1) / n as f64;
        let f = |r: f64| 1.0 / (1.0 - 2.0 * m / r);
        let mut s = 0.5 * (f(r1) + f(r2));
        for i in 1..n {
            s += f(r1 + i as f64 * h);
        }
        let oracle = s * h / c;
        let t = radial_light_time(&st, r1, r2).unwrap();
        assert!(((t - oracle) / oracle).abs() < 1e-9);
        assert!(c * t > r2 - r1);
        assert!(matches!(radial_light_time(&st, 5.0, 50.0), Err(Error::Horizon(_))));
    }

    #[test]
    fn star_light_time_is_continuous_across_surface() {
        let kk = k();
        let st = Spacetime::new(
            MetricField::SchwarzschildInterior {
                mass_kg: kk.c * kk.c / kk.g,
                radius_m: 6.0,
            },
            kk,
        )
        .unwrap();
        let whole = radial_light_time(&st, 0.0, 9.0).unwrap();
        let split = radial_light_time(&st, 0.0, 6.0).unwrap() + radial_light_time(&st, 6.0, 9.0).unwrap();
        assert!(((whole - split) / whole).abs() < 1e-13);
    }

    #[test]
    fn singular_start_is_reported() {
        let st = schwarzschild(1.0);
        let p0 = ChartPoint::new(0.0, [1.0, 1.0, 0.0]);
        assert!(matches!(
            integrate_geodesic(&st, p0, [1.0, 0.0, 0.0, 0.0], GeodesicKind::Timelike, (0.0, 1.0), IntegratorOptions::default()),
            Err(Error::SingularChart(_))
        ));
    }

    #[test]
    fn infall_reports_partial_path() {
        let m = 1.0;
        let st = schwarzschild(m);
        let c = k().c;
        let p0 = ChartPoint::new(0.0, [6.0, 1.0, 0.0]);
        let u0 = normalize_velocity(&st, &p0, [0.0; 3], GeodesicKind::Timelike).unwrap();
        let err = integrate_geodesic(
            &st, p0, u0, GeodesicKind::Timelike, (0.0, 100.0 / c), IntegratorOptions::default(),
        )
        .unwrap_err();
        match err {
            Error::PartialPath { path, .. } => {
                let last = path.last().unwrap();
                assert!(last.point.x[0] > 2.0 * m && last.point.x[0] < 6.0);
            }
            Error::Stiffness { .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_export_has_one_row_per_sample() {
        let st = Spacetime::minkowski(k());
        let p0 = ChartPoint::new(0.0, [0.0; 3]);
        let path = integrate_geodesic(
            &st, p0, [1.0, 0.0, 0.0, 0.0], GeodesicKind::Timelike, (0.0, 1.0), IntegratorOptions::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        path.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), path.samples.len() + 1);
    }
}
