use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial in `k[x_1..x_e]`.
///
/// Ordering is graded-lexicographic with `x_1 > x_2 > ... > x_e`: higher
/// total degree first, ties broken by comparing exponents from `x_1` on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Index of the first variable with positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (name, &e) in names.iter().zip(&self.0) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `e` variables, largest first.
pub fn monomial_basis(e: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; e];
    fill(&mut out, &mut cur, 0, d);
    out
}

fn fill(out: &mut Vec<Monomial>, cur: &mut [u16], pos: usize, left: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u16;
        out.push(Monomial(cur.to_vec()));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k as u16;
        fill(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Monomial bases of `S_0..S_cap` with reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    nvars: usize,
    by_degree: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl MonomialTable {
    pub fn new(nvars: usize, cap: usize) -> Self {
        let by_degree: Vec<Vec<Monomial>> = (0..=cap).map(|d| monomial_basis(nvars, d)).collect();
        let index = by_degree
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        MonomialTable {
            nvars,
            by_degree,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.by_degree[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.by_degree[d].len()
    }

    pub fn index_of(&self, m: &Monomial) -> usize {
        self.index[m.degree()][m]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(1, 5), vec![Monomial(vec![5])]);
        assert_eq!(monomial_basis(4, 3).len(), 20);
        for e in 1..5 {
            for d in 0..6 {
                assert_eq!(monomial_basis(e, d).len(), binomial(e + d - 1, d));
            }
        }
    }

    #[test]
    fn basis_is_strictly_descending() {
        let b = monomial_basis(3, 3);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(b[0], Monomial(vec![3, 0, 0]));
        assert_eq!(b[1], Monomial(vec![2, 1, 0]));
    }
}
