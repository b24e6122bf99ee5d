//! Exact computations for the q-deformed and Jordanian osp(2|1) superalgebras.

pub mod contraction;
pub mod error;
pub mod fixtures;
pub mod hopf;
pub mod r1;
pub mod linalg;
pub mod report;
pub mod reps;
pub mod rmatrix;
pub mod scalar;

pub use error::{Error, Result};
pub use report::{Status, VerificationReport, SUITES};
pub use scalar::{HalfInt, PowerSeries, Scalar};
