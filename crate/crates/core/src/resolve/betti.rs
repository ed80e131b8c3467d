use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::series::IntPoly;

/// Bigraded Betti numbers `β_{i,j}` for `i ≤ N`, `j ≤ J`, with a
/// completeness flag per homological degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    j: usize,
    entries: BTreeMap<(usize, usize), usize>,
    complete: Vec<bool>,
}

impl BettiTable {
    pub fn new(n: usize, j: usize, entries: BTreeMap<(usize, usize), usize>, complete: Vec<bool>) -> Self {
        assert_eq!(complete.len(), n + 1);
        let entries = entries.into_iter().filter(|&(_, b)| b > 0).collect();
        BettiTable {
            n,
            j,
            entries,
            complete,
        }
    }

    /// `(N, J)`.
    pub fn caps(&self) -> (usize, usize) {
        (self.n, self.j)
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(i, j, β_{i,j})`, ordered by `i` then `j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Whether every syzygy of homological degree `i` lies in degree `≤ J`.
    pub fn is_complete(&self, i: usize) -> bool {
        self.complete.get(i).copied().unwrap_or(false)
    }

    pub fn completeness(&self) -> &[bool] {
        &self.complete
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, &b)| b).sum()
    }

    /// `Σ_{i ≤ n} (Σ_j β_{i,j}) t^i`; refuses when a row up to `n` is
    /// incomplete.
    pub fn poincare_to(&self, n: usize) -> Result<IntPoly> {
        if n > self.n {
            return Err(Error::BeyondCap { cap: self.n, needed: n });
        }
        if let Some(i) = (0..=n).find(|&i| !self.complete[i]) {
            return Err(Error::Incomplete(i));
        }
        Ok(IntPoly::from_usize(&(0..=n).map(|i| self.total(i)).collect::<Vec<_>>()))
    }

    pub fn poincare(&self) -> Result<IntPoly> {
        self.poincare_to(self.n)
    }

    /// `table[i][j] = β_{i,j}`, the coefficients of `Σ β_{i,j} s^i t^j`.
    pub fn bigraded(&self) -> Vec<Vec<usize>> {
        (0..=self.n)
            .map(|i| (0..=self.j).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// First nonzero `β_{i,j}` with `j ≠ i + shift`.
    pub fn first_off_diagonal(&self, shift: usize) -> Option<(usize, usize)> {
        self.entries().find(|&(i, j, _)| j != i + shift).map(|(i, j, _)| (i, j))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("Betti tables serialize")
    }
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<[usize; 3]> = self.entries().map(|(i, j, b)| [i, j, b]).collect();
        let mut st = s.serialize_struct("BettiTable", 3)?;
        st.serialize_field("caps", &[self.n, self.j])?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("complete", &self.complete)?;
        st.end()
    }
}

/// Rows are `j - i`, columns `i`; a `?` marks an incomplete column.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maxrow = self.entries().map(|(i, j, _)| j.saturating_sub(i)).max().unwrap_or(0);
        let width = self
            .entries()
            .map(|(_, _, b)| b.to_string().len())
            .max()
            .unwrap_or(1)
            .max(self.n.to_string().len())
            + 1;
        write!(f, "{:>4}:", "")?;
        for i in 0..=self.n {
            let mark = if self.complete[i] { ' ' } else { '?' };
            write!(f, "{:>width$}{mark}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>4}:", "total")?;
        for i in 0..=self.n {
            write!(f, "{:>width$} ", self.total(i))?;
        }
        writeln!(f)?;
        for row in 0..=maxrow {
            write!(f, "{row:>4}:")?;
            for i in 0..=self.n {
                match self.get(i, i + row) {
                    0 => write!(f, "{:>width$} ", ".")?,
                    b => write!(f, "{b:>width$} ")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Truncated Poincaré series and the bigraded table `β_{i,j}`.
pub fn poincare_truncation(b: &BettiTable) -> Result<(IntPoly, Vec<Vec<usize>>)> {
    Ok((b.poincare()?, b.bigraded()))
}
