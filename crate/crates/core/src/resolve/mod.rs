//! Graded modules, minimal free resolutions, Betti tables, and explicit
//! complexes built from pairs of zero divisors.

mod betti;
mod complex;
mod module;
mod resolution;

use serde::Serialize;

use crate::error::Result;
use crate::quotient::GradedAlgebra;

pub use betti::{poincare_truncation, BettiTable};
pub use complex::{build_periodic_complex, homology_vanishes, ComplexWindow};
pub use module::{present_module, residue_field, GradedModule, ModulePresentation};
pub use resolution::{check_complex, looks_like_quadric_ci, minimal_resolution, resolve_module, Resolution};

/// Outcome of a linearity test of the resolution of `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KoszulVerdict {
    /// `β_{i,j}(k) ≠ 0` with `j ≠ i`: `R` is not Koszul.
    OffDiagonal { i: usize, j: usize },
    /// No off-diagonal entry through homological degree `n`. Evidence
    /// only, not a proof.
    CleanTo { n: usize },
}

impl KoszulVerdict {
    pub fn is_clean(&self) -> bool {
        matches!(self, KoszulVerdict::CleanTo { .. })
    }
}

/// Resolves `k` over `r` with caps `N` and `J = N + 4`.
pub fn is_koszul_to(r: &GradedAlgebra, n: usize) -> Result<KoszulVerdict> {
    let jcap = if r.is_artinian() { n + 4 } else { (n + 4).min(r.cap()) };
    let k = residue_field(r);
    let b = minimal_resolution(r, &k, n, jcap)?;
    Ok(match b.first_off_diagonal(0) {
        Some((i, j)) => KoszulVerdict::OffDiagonal { i, j },
        None => KoszulVerdict::CleanTo { n },
    })
}
