//! Geodesic bicombings on planar metric spaces and on a space of monotone
//! functions, with sampling-based checks of their defining properties.
//!
//! * [`spaces`]: norms, points and regions of the plane.
//! * [`bicombings`]: linear, perturbed and folded bicombings.
//! * [`midpoint`]: the midpoint map and reversibilization.
//! * [`funcspace`]: piecewise-linear monotone functions under the L¹ metric.
//! * [`verify`]: property checks, the expected matrix and rigidity tools.
//! * [`suite`] and [`figures`]: the command-line campaigns and CSV exports.

pub mod bicombings;
pub mod error;
pub mod figures;
pub mod funcspace;
pub mod midpoint;
pub mod spaces;
pub mod suite;
pub mod verify;

pub use bicombings::{Bicombing, Delta, FoldedX1, Linear, PlanarBicombing, SigmaDelta};
pub use error::{Error, Result};
pub use funcspace::{FunctionBicombing, MonotoneFn};
pub use midpoint::{midpoint, reversibilize, MidpointConfig};
pub use spaces::{Point2, Region, SpaceId};
pub use verify::{PropertyReport, SampleConfig};
