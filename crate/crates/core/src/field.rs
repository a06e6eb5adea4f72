//! Arithmetic in the prime field GF(p).
//!
//! Coefficients are stored as raw `u32` residues in `[0, p)`; the field
//! object carries the modulus so that every polynomial in a session shares
//! one characteristic.

use crate::error::{Error, Result};

/// A coefficient residue. Always reduced modulo the active prime.
pub type Scalar = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_PRIME: u32 = 101;

    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not an odd prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn pow(&self, a: Scalar, mut e: u32) -> Scalar {
        let mut base = a as u64 % self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Representative in `(-p/2, p/2]`, used for printing.
    pub fn to_symmetric(&self, a: Scalar) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: Self::DEFAULT_PRIME }
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
