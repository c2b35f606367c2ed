//! p-periods of `F_p[[X]]`-modules given by their degree data, and the
//! monodromy sequences `d(m)`, `m(d)` of an iterated automorphism.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::autom::{AutDepth, GroupEndo, Iterate};
use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::magnus::zassenhaus_degree;
use crate::words::Word;

/// `(+) F_p[[X]]/(X^{deg_i})`, recorded by the multiset of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModuleDesc {
    p: u32,
    degrees: Vec<u32>,
}

impl LambdaModuleDesc {
    pub fn new(p: u32, degrees: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::OddPrimeRequired(p));
        }
        if degrees.is_empty() {
            return Err(Error::EmptyDegrees);
        }
        if let Some(&d) = degrees.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidDegree(d));
        }
        let mut degrees = degrees;
        degrees.sort_unstable();
        Ok(LambdaModuleDesc { p, degrees })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Sorted ascending.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        *self.degrees.last().expect("nonempty")
    }

    /// `sum deg_i`.
    pub fn lambda(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }
}

/// The smallest `d` with `p^d >= max deg_i`.
pub fn p_period(desc: &LambdaModuleDesc) -> u32 {
    let target = desc.max_degree() as u64;
    let mut d = 0;
    let mut power = 1u64;
    while power < target {
        power *= desc.p as u64;
        d += 1;
    }
    d
}

/// Whether `(1+X)^{p^d} - 1` kills every summand `F_p[X]/(X^{deg_i})`.
///
/// The power is formed by `d` successive p-th powers of a polynomial
/// truncated at the largest degree, with no appeal to binomial identities.
pub fn lambda_action_check(desc: &LambdaModuleDesc, d: u32) -> bool {
    let f = PrimeField::new(desc.p).expect("validated prime");
    let top = desc.max_degree() as usize;
    let mut poly = vec![0u32; top];
    poly[0] = 1;
    if top > 1 {
        poly[1] = 1;
    }
    let one = {
        let mut v = vec![0u32; top];
        v[0] = 1;
        v
    };
    for _ in 0..d {
        if poly == one {
            break;
        }
        let base = poly.clone();
        for _ in 1..desc.p {
            poly = mul_truncated(f, &poly, &base);
        }
    }
    // (1+X)^{p^d} - 1 lies in every (X^{deg_i}) iff it vanishes mod X^{max}
    poly == one
}

fn mul_truncated(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len();
    let mut out = vec![0u32; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(n - i).enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// `d(m)` for `m = 1..=m_max` and `m(d)` for `d = 0..=d_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromySequences {
    /// `d_seq[m - 1] = d(m)`, or `None` when no `d <= d_max` works.
    pub d_seq: Vec<Option<u32>>,
    /// `m_seq[d] = m(d)`.
    pub m_seq: Vec<AutDepth>,
}

impl MonodromySequences {
    pub fn m_max(&self) -> usize {
        self.d_seq.len()
    }

    pub fn d_max(&self) -> u32 {
        self.m_seq.len() as u32 - 1
    }

    /// `d(m+1) - d(m)` is 0 or 1 wherever both are known.
    pub fn steps_ok(&self) -> bool {
        self.d_seq.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => b == a || b == a + 1,
            _ => true,
        })
    }

    /// `m(d+1) >= m(d) + 1` wherever both lie below the horizon.
    pub fn growth_ok(&self) -> bool {
        self.m_seq.windows(2).all(|w| match (w[0], w[1]) {
            (AutDepth::Level(a), AutDepth::Level(b)) => b > a,
            (AutDepth::BeyondHorizon, AutDepth::Level(_)) => false,
            _ => true,
        })
    }

    /// `d(m) <= d` iff `m(d) >= m` on the whole grid.
    pub fn consistent(&self) -> bool {
        (1..=self.m_max()).all(|m| {
            (0..=self.d_max()).all(|d| {
                let by_d = self.d_seq[m - 1].is_some_and(|dm| dm <= d);
                by_d == self.m_seq[d as usize].at_least(m)
            })
        })
    }
}

impl fmt::Display for MonodromySequences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.d_seq.iter().enumerate() {
            match d {
                Some(d) => writeln!(f, "m={}\td(m)={}", k + 1, d)?,
                None => writeln!(f, "m={}\td(m)=not found <= {}", k + 1, self.d_max())?,
            }
        }
        for (d, m) in self.m_seq.iter().enumerate() {
            writeln!(f, "d={d}\tm(d)={m}")?;
        }
        Ok(())
    }
}

pub const DEFAULT_D_MAX: u32 = 4;

pub fn monodromy_sequences(phi: &GroupEndo, m_max: usize, d_max: u32) -> Result<MonodromySequences> {
    let ctx = phi.ctx();
    if m_max == 0 || m_max + 1 > ctx.trunc() {
        return Err(Error::LevelOutOfRange { level: m_max, max: ctx.trunc() - 1 });
    }
    let m_seq = (0..=d_max)
        .map(|d| Iterate::p_power(phi, d)?.aj_depth())
        .collect::<Result<Vec<_>>>()?;
    let d_seq = (1..=m_max)
        .map(|m| m_seq.iter().position(|depth| depth.at_least(m)).map(|d| d as u32))
        .collect();
    Ok(MonodromySequences { d_seq, m_seq })
}

/// Compares `phi^e` with `(Inn(x) o phi)^e`, the iterate for another lift.
///
/// For every `m` up to the depth of `x` (and below `N`), both iterates must
/// lie in `A(m)` or both outside it. When `x` is one level deeper and the
/// iterates lie in `A(m)`, their `tau_m` tables must also agree.
pub fn lift_independence_check(phi: &GroupEndo, x: &Word, e: u64) -> Result<bool> {
    let ctx = *phi.ctx();
    let depth_x = zassenhaus_degree(x, &ctx)?;
    let lifted = GroupEndo::inner(x, ctx)?.compose(phi)?;
    let a = Iterate::power(phi, e)?;
    let b = Iterate::power(&lifted, e)?;
    let (da, db) = (a.aj_depth()?, b.aj_depth()?);
    for m in 1..ctx.trunc() {
        if !depth_x.at_least(m) {
            break;
        }
        if da.at_least(m) != db.at_least(m) {
            return Ok(false);
        }
        if depth_x.at_least(m + 1) && da.at_least(m) && a.johnson_hom(m)? != b.johnson_hom(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}
