//! The truncated Magnus algebra `F_p<<X_1..X_r>>`, the Magnus embedding
//! `theta(x_j) = 1 + X_j`, Magnus coefficients and Zassenhaus degrees.

mod monomial;
mod series;

use alloc::vec::Vec;
use core::fmt;

pub use monomial::Monomial;
pub use series::TruncSeries;

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::words::Word;

/// `theta(w)` truncated at degree `N`.
pub fn magnus_embed(w: &Word, ctx: &GroupContext) -> Result<TruncSeries> {
    w.check_context(ctx)?;
    let f = ctx.field();
    let n = ctx.trunc();
    let mut acc = TruncSeries::one(*ctx);
    for l in w.letters() {
        // (1 + X_j)^e = sum_k C(e, k) X_j^k, valid for negative e too
        let poly: Vec<u32> = (0..=n).map(|k| f.binomial(l.exponent, k)).collect();
        acc = acc.mul_right_univariate(l.generator(), &poly);
    }
    Ok(acc)
}

/// `epsilon(mono; w)`: the coefficient of `mono` in `theta(w)`.
pub fn magnus_coefficient(mono: &Monomial, w: &Word, ctx: &GroupContext) -> Result<u32> {
    if mono.degree() > ctx.trunc() {
        return Err(Error::LevelOutOfRange { level: mono.degree(), max: ctx.trunc() });
    }
    Ok(magnus_embed(w, ctx)?.coefficient(mono))
}

pub fn series_multiply(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.try_mul(b)
}

pub fn series_invert(a: &TruncSeries) -> Result<TruncSeries> {
    a.try_invert()
}

/// Position of a word in the Zassenhaus filtration, as far as degree `N` can see.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiltrationDepth {
    /// The word reduces to 1.
    Identity,
    /// `w` lies in `F_n` but not in `F_{n+1}`.
    Degree(usize),
    /// `theta(w) - 1` vanishes through degree `N` although `w != 1`.
    BeyondHorizon,
}

impl FiltrationDepth {
    /// Whether `w` is known to lie in `F_level`.
    pub fn at_least(&self, level: usize) -> bool {
        match *self {
            FiltrationDepth::Identity | FiltrationDepth::BeyondHorizon => true,
            FiltrationDepth::Degree(n) => n >= level,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match *self {
            FiltrationDepth::Degree(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for FiltrationDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDepth::Identity => f.write_str("identity"),
            FiltrationDepth::Degree(n) => write!(f, "{n}"),
            FiltrationDepth::BeyondHorizon => f.write_str("exceeds N"),
        }
    }
}

pub fn zassenhaus_degree(w: &Word, ctx: &GroupContext) -> Result<FiltrationDepth> {
    if w.is_identity() {
        w.check_context(ctx)?;
        return Ok(FiltrationDepth::Identity);
    }
    Ok(depth_of_series(&magnus_embed(w, ctx)?))
}

/// Depth read off a series `theta(w)` of a nontrivial word.
pub(crate) fn depth_of_series(theta: &TruncSeries) -> FiltrationDepth {
    match theta.without_constant().lowest_degree() {
        Some(n) => FiltrationDepth::Degree(n),
        None => FiltrationDepth::BeyondHorizon,
    }
}

/// A homogeneous element of `H^{(x)m}`, the image of `gr_m(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: usize,
    pub value: TruncSeries,
}

impl GradedComponent {
    pub fn new(degree: usize, value: TruncSeries) -> Self {
        debug_assert!(value.terms().all(|(m, _)| m.degree() == degree));
        GradedComponent { degree, value }
    }

    /// `[a, b] = ab - ba`, of degree `deg a + deg b`; zero past the horizon.
    pub fn bracket(&self, other: &GradedComponent) -> GradedComponent {
        GradedComponent::new(self.degree + other.degree, self.value.bracket(&other.value))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for GradedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

/// `theta_m(w)`, the degree-`m` part of `theta(w) - 1`, for `w` in `F_m`.
pub fn graded_component(w: &Word, m: usize, ctx: &GroupContext) -> Result<GradedComponent> {
    if m == 0 || m > ctx.trunc() {
        return Err(Error::LevelOutOfRange { level: m, max: ctx.trunc() });
    }
    let theta = magnus_embed(w, ctx)?;
    graded_part(&theta, m)
}

/// Degree-`m` part of `theta - 1`, checking that the lower degrees vanish.
pub(crate) fn graded_part(theta: &TruncSeries, m: usize) -> Result<GradedComponent> {
    let rest = theta.without_constant();
    if let Some(low) = rest.lowest_degree() {
        if low < m {
            return Err(Error::NotInFiltration { level: m });
        }
    }
    Ok(GradedComponent::new(m, rest.homogeneous_part(m)))
}
