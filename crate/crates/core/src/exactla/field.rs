use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_p` with word-sized modulus.
///
/// Residues are stored as `u32` in `[0, p)`. The modulus is bounded by
/// `2^31` so that sums of two residues never overflow and products fit a
/// `u64` with room left for lazy accumulation in the elimination kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

pub const DEFAULT_PRIME: u32 = 101;

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero, which is a caller bug.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    #[inline]
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// How many products `(p-1)^2` can be added to a value below `p`
    /// before a `u64` accumulator could overflow.
    pub(crate) fn lazy_budget(&self) -> u64 {
        let sq = (self.p as u64 - 1).pow(2).max(1);
        (u64::MAX - self.p as u64) / sq
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(2_147_483_659).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn inverses_exist_for_all_nonzero() {
        for p in [2u32, 3, 5, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn signed_representative() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.signed(100), -1);
        assert_eq!(f.signed(50), 50);
        assert_eq!(f.from_i64(-2), 99);
    }
}
