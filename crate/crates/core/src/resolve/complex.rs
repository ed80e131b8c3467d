use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::quotient::LocalAlgebra;

/// A finite complex `C_L -> ... -> C_1 -> C_0` of finite-dimensional
/// spaces; `maps[i]` is the differential `C_{i+1} -> C_i`.
#[derive(Clone, Debug)]
pub struct ComplexWindow {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    labels: Vec<String>,
}

impl ComplexWindow {
    /// Validates shapes and that consecutive maps compose to zero.
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>, labels: Vec<String>, field: &PrimeField) -> Result<Self> {
        assert_eq!(dims.len(), maps.len() + 1);
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != dims[i] || m.cols() != dims[i + 1] {
                return Err(Error::Internal(format!("differential {} has the wrong shape", i + 1)));
            }
        }
        for i in 1..maps.len() {
            if !maps[i - 1].mul(field, &maps[i]).is_zero() {
                return Err(Error::NotAComplex(i));
            }
        }
        Ok(ComplexWindow { dims, maps, labels })
    }

    /// Number of differentials.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Differential `C_i -> C_{i-1}`, `i ≥ 1`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.maps[i - 1]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `dim H_i = dim ker d_i - rank d_{i+1}` for `1 ≤ i < len`.
    pub fn homology_dim(&self, i: usize, field: &PrimeField) -> usize {
        let ker = self.dims[i] - self.maps[i - 1].rank(field);
        ker - self.maps[i].rank(field)
    }
}

/// `R --a--> R` preceded by alternating `b`, `a`: `L + 1` differentials
/// with `a` last (`d_1 = a`, `d_2 = b`, ...).
pub fn build_periodic_complex(r: &LocalAlgebra, a: &[u32], b: &[u32], len: usize) -> Result<ComplexWindow> {
    let ma = r.mult_matrix(a);
    let mb = r.mult_matrix(b);
    let la = r.lift(a).to_text();
    let lb = r.lift(b).to_text();
    let mut maps = Vec::with_capacity(len + 1);
    let mut labels = Vec::with_capacity(len + 1);
    for i in 0..=len {
        if i % 2 == 0 {
            maps.push(ma.clone());
            labels.push(la.clone());
        } else {
            maps.push(mb.clone());
            labels.push(lb.clone());
        }
    }
    ComplexWindow::new(vec![r.dim(); len + 2], maps, labels, r.field())
}

/// Whether `H_i(C) = 0` for every `i` in `positions` (each must be an
/// interior position `1 ≤ i < len`).
pub fn homology_vanishes(
    c: &ComplexWindow,
    positions: std::ops::RangeInclusive<usize>,
    field: &PrimeField,
) -> Result<bool> {
    for i in positions {
        if i == 0 || i >= c.len() {
            return Err(Error::BeyondCap {
                cap: c.len().saturating_sub(1),
                needed: i,
            });
        }
        if c.homology_dim(i, field) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
