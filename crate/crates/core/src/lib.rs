//! Exact relative homological algebra from monads and comonads.

pub mod cli;
pub mod complex;
pub mod cosimplicial;
pub mod dga;
pub mod error;
pub mod exterior;
pub mod gmodule;
pub mod io;
pub mod group;
pub mod group_cohomology;
pub mod groupoid;
pub mod lie;
pub mod lie_rinehart;
pub mod linalg;
pub mod matrix;
pub mod monad;
pub mod scalar;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{SparseMatrix, SparseVec};
pub use scalar::{Field, Rat, Scalar};
