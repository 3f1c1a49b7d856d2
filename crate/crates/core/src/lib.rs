//! Numerical integration of functions with central hyperplane discontinuities
//! over all of R^N.
//!
//! The integrand is a product of factors, each discontinuous on a hyperplane
//! through the origin. The hyperplane normals form the rows of a
//! discontinuity matrix `C`. The pipeline:
//!
//! 1. [`arrangement`] enumerates the polyhedral cones into which the
//!    hyperplanes cut R^N; the integrand is smooth on each cone.
//! 2. [`triangulation`] splits every cone into simplicial cones (N
//!    linearly independent rays each).
//! 3. [`mapping`] carries the unit hypercube onto each simplicial cone via
//!    the positive orthant, with the Jacobian weight.
//! 4. [`cubature`] integrates over hypercubes with an embedded degree-7
//!    rule and a globally adaptive subdivision driver.
//! 5. [`orchestrator`] runs all simplices under a two-pass precision
//!    controller and aggregates the result, or runs the unpartitioned
//!    whole-space baseline for comparison.
//!
//! [`oracle`] provides a seeded Monte Carlo estimator for validation and
//! [`registry`] the built-in benchmark matrices.

pub mod arrangement;
pub mod cubature;
pub mod error;
pub mod integrands;
pub mod mapping;
pub mod oracle;
pub mod orchestrator;
pub mod registry;
pub mod report;
pub mod triangulation;

pub use arrangement::{
    candidate_rays, enumerate_cones, pad_matrix, region_count_oracle, Cone, DiscontinuityMatrix,
    Ray, SignPattern,
};
pub use cubature::{integrate_adaptive, CubatureResult, CubatureStatus};
pub use error::{ArrangementError, CubatureError, MapError, RunError, TriangulationError};
pub use integrands::{Family, IntegrandSpec};
pub use oracle::{mc_estimate, OracleResult};
pub use orchestrator::{run_baseline, run_partitioned, ErrorAggregation, Mode, RunConfig, RunReport};
pub use triangulation::{build_partition_dump, decompose_cone, SimplicialCone};
