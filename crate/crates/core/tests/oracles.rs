//! Closed-form checks through the public API.

use std::f64::consts::PI;

use proptest::prelude::*;
use qgl_core::geodesics::{integrate_geodesic, normalize_velocity};
use qgl_core::regions::radar_coordinates;
use qgl_core::{
    regge, Axis, ChartPoint, GeodesicKind, IntegratorOptions, MetricField, PhysicalConstants,
    Spacetime,
};

fn k() -> PhysicalConstants {
    PhysicalConstants::codata2018()
}

#[test]
fn frw_ricci_scalar_matches_power_law() {
    // a = (t/t0)^p gives R = 6p(2p − 1)/(ct)².
    for p in [0.5, 2.0 / 3.0, 1.0, 1.5] {
        let st = Spacetime::new(
            MetricField::FlatFrw {
                exponent: p,
                reference_time_s: 1.0,
            },
            k(),
        )
        .unwrap();
        let t = 3.0;
        let x = ChartPoint::new(t, [1e8, -2e8, 5e7]);
        let expected = 6.0 * p * (2.0 * p - 1.0) / (k().c * t).powi(2);
        let analytic = st.ricci_scalar_at(&x).unwrap();
        let numeric = st.ricci_scalar_numeric(&x, 1e-3).unwrap();
        let scale = 6.0 * p * p / (k().c * t).powi(2);
        assert!((analytic - expected).abs() <= 1e-12 * scale, "p = {p}: {analytic} vs {expected}");
        assert!((numeric - expected).abs() <= 1e-5 * scale, "p = {p}: {numeric} vs {expected}");
    }
}

#[test]
fn schwarzschild_exterior_is_ricci_flat() {
    let st = Spacetime::new(MetricField::SchwarzschildExterior { mass_kg: 2e30 }, k()).unwrap();
    let m = k().g * 2e30 / (k().c * k().c);
    for r in [5.0 * m, 20.0 * m, 1e3 * m] {
        let x = ChartPoint::new(0.0, [r, 1.0, 0.4]);
        let numeric = st.ricci_scalar_numeric(&x, 1e-4).unwrap();
        assert!(numeric.abs() < 1e-6 * m / r.powi(3), "r = {r}: R = {numeric}");
        assert_eq!(st.ricci_scalar_at(&x).unwrap(), 0.0);
    }
}

#[test]
fn circular_orbit_keeps_its_radius_and_kepler_rate() {
    let st = Spacetime::new(MetricField::SchwarzschildExterior { mass_kg: 2e30 }, k()).unwrap();
    let c = k().c;
    let m = k().g * 2e30 / (c * c);
    let r = 20.0 * m;
    // dφ/d(ct) = √(M/r³) on a circular geodesic.
    let omega = (m / r.powi(3)).sqrt();
    let u_phi = omega / (1.0 - 3.0 * m / r).sqrt();
    let p0 = ChartPoint::new(0.0, [r, PI / 2.0, 0.0]);
    let u0 = normalize_velocity(&st, &p0, [0.0, 0.0, u_phi], GeodesicKind::Timelike).unwrap();
    assert!((u0[0] - 1.0 / (1.0 - 3.0 * m / r).sqrt()).abs() < 1e-12);

    let period = 2.0 * PI / (omega * c);
    let path = integrate_geodesic(&st, p0, u0, GeodesicKind::Timelike, (0.0, period), IntegratorOptions::default())
        .unwrap();
    let end = path.end();
    assert!((end.point.x[0] - r).abs() < 1e-7 * r, "r drifted to {}", end.point.x[0]);
    let phi_rate = end.point.x[2] / (c * end.point.t);
    assert!((phi_rate - omega).abs() < 1e-8 * omega);
    assert!(path.max_norm_error(&st).unwrap() < 1e-8);
}

#[test]
fn icosahedron_vertices_carry_pi_over_three() {
    let ico = regge::icosahedron().unwrap();
    let hinges = ico.hinges();
    assert_eq!(hinges.len(), 12);
    for h in hinges {
        assert!((h.deficit.unwrap() - PI / 3.0).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn moving_observer_radar_matches_proper_time(
        vx in -0.9f64..0.9, vy in -0.4f64..0.4, t in -1e-6f64..1e-6,
    ) {
        // Events on the worldline itself: zero distance, τ = t/γ.
        let st = Spacetime::minkowski(k());
        let v = [vx, vy, 0.0];
        let axis = Axis::Inertial { origin: ChartPoint::new(0.0, [0.0; 3]), velocity: v };
        let c = k().c;
        let event = ChartPoint::new(t, [vx * c * t, vy * c * t, 0.0]);
        let radar = radar_coordinates(&st, &axis, &event).unwrap();
        let gamma = 1.0 / (1.0 - vx * vx - vy * vy).sqrt();
        prop_assert!(radar.radar_distance <= 1e-9 * c * t.abs().max(1e-12));
        prop_assert!((radar.tau_mid - t / gamma).abs() <= 1e-12 * t.abs().max(1e-18));
    }

    #[test]
    fn planck_units_scale_with_constants(hbar in 0.1f64..10.0, g in 0.1f64..10.0, c in 0.1f64..10.0) {
        let k = PhysicalConstants::new(hbar, g, c).unwrap();
        prop_assert!((k.planck_length - (hbar * g / c.powi(3)).sqrt()).abs() <= 1e-14 * k.planck_length);
        prop_assert!((k.planck_length / k.planck_time - c).abs() <= 1e-14 * c);
    }
}
