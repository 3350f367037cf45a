//! Third-rank tensors in three dimensions: decompositions, generalized
//! eigenpairs, critical-point topology of the octupolar potential and the
//! separatrices that organize it in parameter space.

pub mod cli;
pub mod critical_points;
pub mod eigen_solver;
pub mod error;
pub mod lc_distortion;
pub mod linalg;
pub mod potential;
pub mod separatrix;
pub mod tensor_core;
pub mod trace_extension;

pub use error::{Error, Result};
