use thiserror::Error;

use crate::geodesics::PathSample;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure a computation in this crate can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid constants: {0}")]
    InvalidConstants(String),

    #[error("unknown dimension tag `{0}`")]
    UnknownDimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular chart point: {0}")]
    SingularChart(String),

    /// The stress-energy trace is positive, i.e. the energy above the ground
    /// state would be negative. Supply a vacuum-energy (Λ) adjustment.
    #[error("energy positivity violated: trace {trace:e} J/m^3 exceeds tolerance {tolerance:e}; the ground-state energy must be zero or positive (apply a cosmological-constant adjustment)")]
    EnergyPositivity { trace: f64, tolerance: f64 },

    #[error("geodesic left the chart domain after {} samples: {reason}", .path.len())]
    PartialPath {
        reason: String,
        path: Vec<PathSample>,
    },

    #[error("step size underflow at affine parameter {at:e}")]
    Stiffness { at: f64 },

    #[error("event is not connected to the axis segment by light signals: {0}")]
    OutOfSegment(String),

    #[error("trapped region: {0}")]
    Horizon(String),

    #[error("region is degenerate: no Monte Carlo sample was accepted")]
    DegenerateRegion,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NonUnitary(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("degenerate simplex #{index} {vertices:?}")]
    DegenerateSimplex { index: usize, vertices: Vec<usize> },

    #[error("hinge {0:?} lies on the boundary")]
    BoundaryHinge(Vec<usize>),

    #[error("surface is not closed ({0} boundary hinges)")]
    OpenSurface(usize),
}
