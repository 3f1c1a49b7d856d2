//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while validating or partitioning a discontinuity matrix.
#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("row {row} of the discontinuity matrix is zero")]
    ZeroRow { row: usize },
    #[error("rows {row_a} and {row_b} of the discontinuity matrix are parallel")]
    ParallelRows { row_a: usize, row_b: usize },
    #[error("matrix dimension must be at least 2, got {n}")]
    DimensionTooSmall { n: usize },
    #[error("arrangement is degenerate: no full-dimensional cones found (rank deficient matrix?)")]
    DegenerateArrangement,
    #[error("failed to generate a padding row not parallel to existing rows")]
    PaddingFailed,
}

/// Errors raised while decomposing a cone into simplicial cones.
#[derive(Debug, Error)]
pub enum TriangulationError {
    #[error("cone {cone} has no axis direction with positive dot against all skeleton rays")]
    NoAxis { cone: usize },
    #[error("base points of cone {cone} do not span the base dimension")]
    DegenerateBase { cone: usize },
    #[error("simplex {tuple:?} of cone {cone} is degenerate (|det| = {det:.3e})")]
    DegenerateSimplex {
        cone: usize,
        tuple: Vec<usize>,
        det: f64,
    },
}

/// Errors raised by the hypercube and whole-space maps.
#[derive(Debug, Error)]
pub enum MapError {
    #[error("point component {index} = {value} is outside the open map domain")]
    OutsideDomain { index: usize, value: f64 },
    #[error("mapped integrand value is not finite")]
    NonFinite,
}

/// Errors raised by the cubature driver.
#[derive(Debug, Error)]
pub enum CubatureError {
    #[error("Genz-Malik rule requires dimension >= 2, got {n}")]
    DimensionTooSmall { n: usize },
    #[error("integration domain side {index} is empty or inverted")]
    EmptyDomain { index: usize },
    #[error("absolute and relative tolerances cannot both be zero")]
    NoTolerance,
    #[error("evaluation budget {budget} is below the cost of one rule application ({rule_points})")]
    BudgetTooSmall { budget: u64, rule_points: u64 },
    #[error("integrand returned a non-finite value near {point:?} even after one extra subdivision")]
    NonFiniteIntegrand { point: Vec<f64> },
}

/// Errors raised by run configuration validation and the pipeline driver.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("requested relative precision must lie in (0, 1), got {value}")]
    BadPrecision { value: f64 },
    #[error("pass-1 relative precision {pass1} must be >= requested precision {requested}")]
    BadPassOrder { pass1: f64, requested: f64 },
    #[error("integrand width beta must be nonzero")]
    ZeroBeta,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Cubature(#[from] CubatureError),
}
