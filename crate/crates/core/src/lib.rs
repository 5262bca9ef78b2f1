//! Geometry of inscribed square-like quadrilaterals on polygonal curves in
//! R^n: total curvature, cusps, pi-distance, approximation by inscribed and
//! smoothed polygons, and a numerical search for inscribed quadrilaterals
//! with four equal sides and equal diagonals.
//!
//! Everything is generic over a [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`, which is what the experiments use.

pub mod approx;
pub mod curve;
pub mod error;
pub mod io;
pub mod motion;
pub mod pidist;
pub mod point;
pub mod quad;
pub mod scalar;
pub mod shapes;
pub mod solver;

pub use error::{GeomError, Result};
pub use scalar::Scalar;

pub type Point = point::Point<f64>;
pub type PolyCurve = curve::PolyCurve<f64>;
pub type Quad = quad::Quad<f64>;
pub type QuadMetrics = quad::QuadMetrics<f64>;
pub type RigidMotion = motion::RigidMotion<f64>;
pub type CurvatureWindow = pidist::CurvatureWindow<f64>;
pub type PiDistanceResult = pidist::PiDistanceResult<f64>;
pub type SmoothedCurve = approx::SmoothedCurve<f64>;
pub type ConvergenceReport = approx::ConvergenceReport<f64>;
pub type QuadParams = solver::QuadParams<f64>;
pub type SolverConfig = solver::SolverConfig<f64>;
pub type SolutionSet = solver::SolutionSet<f64>;

pub type PolyCurve32 = curve::PolyCurve<f32>;
pub type Quad32 = quad::Quad<f32>;
