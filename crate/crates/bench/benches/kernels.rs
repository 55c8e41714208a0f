use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qgl_core::clock::random_ticking_clock;
use qgl_core::regions;
use qgl_core::spacetime::ChristoffelMode;
use qgl_core::{
    regge, Axis, ChartPoint, CovariantSolid, MetricField, PhysicalConstants, Sampler, Spacetime,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn survival_amplitude(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k = PhysicalConstants::codata2018();
    let clock = random_ticking_clock(8, 1e9, k.hbar, &mut rng).unwrap();
    let scan = clock.default_scan();
    c.bench_function("survival_amplitude d=8", |b| b.iter(|| clock.survival_amplitude(black_box(1.3e-9))));
    c.bench_function("first_orthogonal_time d=8", |b| b.iter(|| clock.first_orthogonal_time(black_box(&scan))));
}

fn christoffel(c: &mut Criterion) {
    let k = PhysicalConstants::codata2018();
    let st = Spacetime::new(MetricField::SchwarzschildExterior { mass_kg: 2e30 }, k).unwrap();
    let p = ChartPoint::new(0.0, [1e5, 1.2, 0.3]);
    c.bench_function("christoffel analytic", |b| b.iter(|| st.christoffel_at(black_box(&p), ChristoffelMode::Analytic)));
    c.bench_function("christoffel finite difference", |b| {
        b.iter(|| st.christoffel_at(black_box(&p), ChristoffelMode::finite_difference(1e-4)))
    });
}

fn four_volume(c: &mut Criterion) {
    let k = PhysicalConstants::codata2018();
    let st = Spacetime::new(
        MetricField::FlatFrw {
            exponent: 2.0 / 3.0,
            reference_time_s: 1e9,
        },
        k,
    )
    .unwrap();
    let solid = CovariantSolid::cylinder(Axis::Comoving { start_time: 1e9 }, 1e8, 1e16).unwrap();
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(20);
    group.bench_function("frw cylinder 1e5 samples", |b| {
        b.iter(|| regions::integrate_solid(&st, &solid, Sampler::new(3, 100_000), 0.0))
    });
    group.finish();

    let mink = Spacetime::minkowski(k);
    let axis = Axis::Inertial {
        origin: ChartPoint::new(0.0, [0.0; 3]),
        velocity: [0.3, 0.0, 0.0],
    };
    let event = ChartPoint::new(1e-8, [1.0, 2.0, -0.5]);
    c.bench_function("radar inertial", |b| b.iter(|| regions::radar_coordinates(&mink, &axis, black_box(&event))));
}

fn hinges(c: &mut Criterion) {
    let sphere = regge::icosphere(3).unwrap();
    let five = regge::five_simplex_boundary().unwrap();
    c.bench_function("hinges icosphere(3)", |b| b.iter(|| sphere.hinges()));
    c.bench_function("hinges 5-simplex boundary", |b| b.iter(|| five.hinges()));
}

criterion_group!(benches, survival_amplitude, christoffel, four_volume, hinges);
criterion_main!(benches);
