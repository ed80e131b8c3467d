//! Integer polynomials and truncated power series for Hilbert and Poincaré
//! bookkeeping. Coefficients are arbitrary precision.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial in `t` with integer coefficients; trailing zeros are stripped.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn strip(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn coeff_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly {
            coeffs: strip(c.iter().map(|&x| BigInt::from(x)).collect()),
        }
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        IntPoly { coeffs: strip(c) }
    }

    pub fn from_usize(c: &[usize]) -> Self {
        IntPoly {
            coeffs: strip(c.iter().map(|&x| BigInt::from(x)).collect()),
        }
    }

    /// `(1 + c t)^n` style helper: `(a + b t)^n`.
    pub fn binomial_power(a: i64, b: i64, n: u32) -> Self {
        let base = IntPoly::from_i64(&[a, b]);
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    /// `p(t) -> p(-t)`.
    pub fn eval_neg_t(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Value at `t = 1`.
    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `H(-1) = 0`.
    pub fn is_balanced(&self) -> bool {
        self.eval(-1).is_zero()
    }

    /// Exact quotient by `divisor`, when it exists in `Z[t]`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(IntPoly::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            if !(c % lead).is_zero() {
                return None;
            }
            let f = c / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &f * d;
            }
            q[k] = f;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::from_coeffs(q))
        } else {
            None
        }
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match (i, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (1, true) => f.write_str("t")?,
            (1, false) => write!(f, "{a}t")?,
            (_, true) => write!(f, "t^{i}")?,
            (_, false) => write!(f, "{a}t^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.coeffs.iter().map(coeff_json).collect();
        v.serialize(s)
    }
}

/// Power series known exactly through `t^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn from_i64(c: &[i64], order: usize) -> Self {
        TruncSeries::from_poly(&IntPoly::from_i64(c), order)
    }

    /// Series whose known coefficients are exactly `c`; the order is
    /// `c.len() - 1`.
    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        assert!(!c.is_empty(), "a truncated series needs at least one coefficient");
        TruncSeries { coeffs: c }
    }

    pub fn from_usize(c: &[usize]) -> Self {
        TruncSeries::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        TruncSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        TruncSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn mul_poly(&self, p: &IntPoly) -> TruncSeries {
        self.mul(&TruncSeries::from_poly(p, self.order()))
    }

    /// Multiplication by `t^k`; the known order grows by `k`.
    pub fn shift(&self, k: usize) -> TruncSeries {
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs: c }
    }

    pub fn eval_neg_t(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplicative inverse to the same order; the constant term must be
    /// `1` or `-1`.
    pub fn invert(&self) -> Result<TruncSeries> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonUnitConstant);
        }
        let n = self.order();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n + 1);
        inv.push(c0.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            // c0 * inv[k] = -acc and c0 = 1/c0
            inv.push(-acc * c0);
        }
        Ok(TruncSeries { coeffs: inv })
    }

    /// Whether every coefficient with index in `[start, end]` vanishes.
    ///
    /// This is finite-window evidence only: vanishing inside the window says
    /// nothing about higher coefficients.
    pub fn window_polynomiality(&self, start: usize, end: usize) -> Result<bool> {
        if start > end {
            return Ok(true);
        }
        if end > self.order() {
            return Err(Error::WindowExceedsOrder {
                end,
                order: self.order(),
            });
        }
        Ok(self.coeffs[start..=end].iter().all(Zero::is_zero))
    }

    /// First index at which two series differ, up to the smaller order.
    pub fn first_difference(&self, other: &TruncSeries) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)?;
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self})")
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<serde_json::Value> = self.coeffs.iter().map(coeff_json).collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_hilbert_factors() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[1, 1, 1]);
        assert_eq!(a.mul(&b), IntPoly::from_i64(&[1, 2, 2, 1]));
    }

    #[test]
    fn negation_and_shift() {
        let h = IntPoly::from_i64(&[1, 3, 3, 1]);
        assert_eq!(h.eval_neg_t(), IntPoly::from_i64(&[1, -3, 3, -1]));
        assert_eq!(IntPoly::one().shift(1), IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn geometric_inverse() {
        let s = TruncSeries::from_i64(&[1, -1], 8);
        assert_eq!(s.invert().unwrap(), TruncSeries::from_i64(&[1; 9], 8));
    }

    #[test]
    fn cube_inverse_gives_triangular_numbers() {
        let s = TruncSeries::from_i64(&[1, -3, 3, -1], 6);
        let expected: Vec<i64> = (0..7).map(|i| (i + 1) * (i + 2) / 2).collect();
        assert_eq!(s.invert().unwrap(), TruncSeries::from_i64(&expected, 6));
    }

    #[test]
    fn non_unit_constant_rejected() {
        let s = TruncSeries::from_i64(&[2, 1], 3);
        assert_eq!(s.invert(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn windows() {
        let s = TruncSeries::from_i64(&[1, 2, 0, 0], 3);
        assert_eq!(s.window_polynomiality(2, 3), Ok(true));
        assert_eq!(s.window_polynomiality(1, 3), Ok(false));
        assert_eq!(s.window_polynomiality(1, 0), Ok(true));
        assert!(s.window_polynomiality(2, 4).is_err());
    }

    #[test]
    fn exact_division() {
        let h = IntPoly::from_i64(&[1, 2, 2, 1]);
        let q = h.div_exact(&IntPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[1, 1, 1]));
        assert!(IntPoly::from_i64(&[1, 2, 1, 1])
            .div_exact(&IntPoly::from_i64(&[1, 1]))
            .is_none());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[1, -2, 0, 1]).to_string(), "1 - 2t + t^3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
