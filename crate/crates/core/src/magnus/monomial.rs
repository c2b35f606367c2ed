use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::context::{MAX_RANK, MAX_TRUNC};
use crate::error::{Error, Result};

/// A monomial `X_{i_1} X_{i_2} ... X_{i_m}` with `m <= 16` and indices in `1..=16`.
///
/// Letters are packed four bits each, first letter in the most significant
/// nibble, so the derived ordering (degree first, then the packed bits) is
/// length-lex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    len: u8,
    bits: u64,
}

const SLOT: u32 = 4;

impl Monomial {
    pub const EMPTY: Monomial = Monomial { len: 0, bits: 0 };

    pub fn new(indices: &[usize]) -> Result<Self> {
        if indices.len() > MAX_TRUNC {
            return Err(Error::InvalidMonomial(String::from("degree exceeds 16")));
        }
        let mut bits = 0u64;
        for (k, &i) in indices.iter().enumerate() {
            if i == 0 || i > MAX_RANK {
                return Err(Error::GeneratorOutOfRange { index: i, max: MAX_RANK });
            }
            bits |= ((i - 1) as u64) << (SLOT * (15 - k as u32));
        }
        Ok(Monomial { len: indices.len() as u8, bits })
    }

    /// The degree-one monomial `X_j`.
    pub fn generator(j: usize) -> Self {
        debug_assert!((1..=MAX_RANK).contains(&j));
        Monomial { len: 1, bits: ((j - 1) as u64) << (SLOT * 15) }
    }

    /// `X_j^k`.
    pub fn power(j: usize, k: usize) -> Self {
        let mut m = Monomial::EMPTY;
        for _ in 0..k {
            m = m.concat(&Monomial::generator(j));
        }
        m
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.len as usize
    }

    /// The `k`-th letter (0-based) as a generator index in `1..=16`.
    #[inline]
    pub fn letter(&self, k: usize) -> usize {
        debug_assert!(k < self.degree());
        (((self.bits >> (SLOT * (15 - k as u32))) & 0xf) + 1) as usize
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).map(move |k| self.letter(k))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.letters().collect()
    }

    pub fn max_index(&self) -> usize {
        self.letters().max().unwrap_or(0)
    }

    /// Concatenation; the caller keeps the total degree within 16.
    #[inline]
    pub fn concat(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.degree() + other.degree() <= MAX_TRUNC);
        if other.len == 0 {
            return *self;
        }
        Monomial {
            len: self.len + other.len,
            bits: self.bits | (other.bits >> (SLOT * self.len as u32)),
        }
    }

    /// Splits `X_i * rest`.
    #[inline]
    pub fn split_first(&self) -> Option<(usize, Monomial)> {
        if self.len == 0 {
            return None;
        }
        let first = ((self.bits >> (SLOT * 15)) + 1) as usize;
        let rest = if self.len == 1 { 0 } else { self.bits << SLOT };
        Some((first, Monomial { len: self.len - 1, bits: rest }))
    }

    /// All monomials of the given degree in `X_1..X_rank`, in length-lex order.
    pub fn all_of_degree(rank: usize, degree: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut idx = alloc::vec![1usize; degree];
        loop {
            out.push(Monomial::new(&idx).expect("valid indices"));
            let mut k = degree;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] < rank {
                    idx[k] += 1;
                    for slot in idx.iter_mut().skip(k + 1) {
                        *slot = 1;
                    }
                    break;
                }
            }
        }
    }

    /// All monomials of degree `0..=max_degree`.
    pub fn all_up_to(rank: usize, max_degree: usize) -> Vec<Monomial> {
        (0..=max_degree).flat_map(|d| Monomial::all_of_degree(rank, d)).collect()
    }
}

/// Digits concatenated (`12` for `X1X2`) when every index is below 10,
/// comma-separated otherwise; the empty monomial prints as `()`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("()");
        }
        let wide = self.max_index() > 9;
        for (k, i) in self.letters().enumerate() {
            if wide && k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(Monomial::EMPTY);
        }
        let bad = || Error::InvalidMonomial(String::from(s));
        let indices: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Monomial::new(&indices)
    }
}
