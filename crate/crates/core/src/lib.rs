//! Exact Schur-basis computation of Thom polynomials of the second order
//! Thom-Boardman singularities `Σ^{i,j}`.

pub mod alphabets;
pub mod cli;
pub mod detforms;
pub mod error;
pub mod exec;
pub mod partitions;
mod ring;
pub mod schur;
pub mod thom;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{straighten, Partition, SignedIndex};
pub use alphabets::{AlphabetPoly, BivariateSchurExpr};
pub use schur::SchurExpr;
pub use thom::{Route, SingularityParams, ThomSeriesExpr};
