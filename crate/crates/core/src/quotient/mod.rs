//! Quotient algebras: degree-capped graded algebras `S/I` and truncated
//! artinian local algebras, with ideals, annihilators, socles and the
//! associated graded ring.

mod file;
mod graded;
mod local;

pub use file::{parse_algebra_file, AlgebraFile, DEFAULT_CAP};
pub use graded::{build_graded, from_ideal_components, GradedAlgebra};
pub use local::{build_local, Ideal, LocalAlgebra};
