//! Constructive upper bounds: fits from clique covers, orthogonal and
//! unit-distance representations, touching spheres, and bilinear
//! factorizations of low-degree polynomials.
//!
//! Float constructions come with exact twins over any [`Field`] so rank
//! bounds can be checked without tolerances on rational data.
//!
//! [`Field`]: crate::algebra::Field

mod coloring;
mod pgraph;
mod points;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::graph::GraphError;
use crate::pattern::PatternError;

pub use coloring::{fit_from_coloring, orthogonal_rep_from_cover};
pub use pgraph::{pgraph_factorize, pgraph_matrix, BilinearFactorization};
pub use points::{
    regular_simplex, touching_spheres_matrix, touching_spheres_matrix_exact, unit_distance_matrix,
    unit_distance_matrix_exact, unit_distance_points, PointConfig, SphereConfig, SphereParts,
    UnitDistanceParts,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("degree too high: {0} > 3")]
    DegreeTooHigh(u32),
    #[error("not symmetric: P(x, y) != P(y, x)")]
    NotSymmetric,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("bilinear identity failed")]
    IdentityFailed,
}
