//! Quantum geometric limit toolkit: spacetime catalog, geodesics, covariant
//! regions built by radar synchronization, event-count bounds, quantum
//! clocks and Regge geometry.
//!
//! Everything is SI at the API boundary (seconds, meters, joules).
//! Internally metrics use geometric units with `x⁰ = c·t`.

pub mod bounds;
pub mod clock;
pub mod error;
pub mod geodesics;
pub mod montecarlo;
pub mod quadrature;
pub mod regge;
pub mod regions;
pub mod spacetime;
pub mod units;

pub use bounds::{BoundReport, Method};
pub use clock::{OrthogonalityScan, QuantumClock};
pub use error::{Error, Result};
pub use geodesics::{GeodesicKind, GeodesicPath, IntegratorOptions};
pub use montecarlo::{Estimate, Sampler};
pub use regge::{ReggeConvention, SimplicialComplex};
pub use regions::{Axis, CovariantSolid, RadiusConvention, RadiusProfile};
pub use spacetime::{ChartPoint, MetricField, Spacetime};
pub use units::{ConstantsOverride, PhysicalConstants};
