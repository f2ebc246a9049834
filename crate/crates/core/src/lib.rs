//! Exact rational models for polyhedral products and homogeneous spaces.

pub mod cdga;
pub mod cli;
pub mod gcalg;
pub mod linalg;
pub mod minimal;
pub mod models;
pub mod regularity;
pub mod simplicial;
pub mod toric;

use thiserror::Error;

pub use cdga::{BettiTable, BigradedTable, Cdga, CdgaError};
pub use gcalg::{AlgebraError, AlgebraPresentation, Generator, HilbertSeries, Monomial, Polynomial};
pub use linalg::{Rational, SparseMatrix};
pub use simplicial::{SimplicialComplex, SimplicialError};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cdga(#[from] CdgaError),
    #[error(transparent)]
    Model(#[from] models::ModelError),
    #[error(transparent)]
    Toric(#[from] toric::ToricError),
    #[error(transparent)]
    Minimal(#[from] minimal::MinimalError),
    #[error(transparent)]
    Regularity(#[from] regularity::RegularityError),
}
