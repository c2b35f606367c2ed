//! Arithmetic in the prime field `F_p`.
//!
//! Scalars are plain `u32` values kept in `[0, p)`; the field only carries
//! the modulus. Products go through `u64`, so any prime below `2^31` works.

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, k: usize) -> u32 {
        if k % 2 == 0 {
            1 % self.p
        } else {
            self.neg(1 % self.p)
        }
    }

    /// Generalized binomial coefficient `C(n, k) mod p` for any integer `n`.
    ///
    /// Uses `C(-n, k) = (-1)^k C(n + k - 1, k)` for negative `n` and Lucas'
    /// theorem for the rest, so `n` can be far larger than `p`.
    pub fn binomial(self, n: i64, k: usize) -> u32 {
        if n >= 0 {
            self.lucas(n as u64, k as u64)
        } else {
            let m = (-(n as i128)) as u64 + k as u64 - 1;
            self.mul(self.sign(k), self.lucas(m, k as u64))
        }
    }

    fn lucas(self, mut n: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1 % self.p;
        while k > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return 0;
            }
            acc = self.mul(acc, self.small_binomial(ni as u32, ki as u32));
            n /= p;
            k /= p;
        }
        acc
    }

    // a, b < p, so b! is invertible.
    fn small_binomial(self, a: u32, b: u32) -> u32 {
        let b = b.min(a - b);
        let (mut num, mut den) = (1 % self.p, 1 % self.p);
        for t in 0..b {
            num = self.mul(num, a - t);
            den = self.mul(den, t + 1);
        }
        self.mul(num, self.inv(den).expect("b < p"))
    }
}
