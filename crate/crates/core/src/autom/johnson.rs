use alloc::vec::Vec;
use core::fmt;

use super::{algebra_endo_of, AlgebraEndo, GroupEndo, LinearMapH};
use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::magnus::{graded_part, magnus_embed, Monomial, TruncSeries};

/// The matrix of the map induced on `H`; column `j` holds the exponent sums
/// of `phi(x_j)` mod p, which is the degree-one part of `theta(phi(x_j))`.
pub fn induced_matrix(phi: &GroupEndo) -> LinearMapH {
    let ctx = phi.ctx();
    let r = ctx.rank();
    let mut rows = alloc::vec![alloc::vec![0i64; r]; r];
    for (j, w) in phi.images().iter().enumerate() {
        for l in w.letters() {
            let slot = &mut rows[l.generator() - 1][j];
            *slot = (*slot + l.exponent).rem_euclid(ctx.p() as i64);
        }
    }
    LinearMapH::from_rows(ctx.field(), rows)
}

/// A finitely generated pro-p group endomorphism is an automorphism exactly
/// when it induces an isomorphism on the Frattini quotient.
pub fn is_automorphism(phi: &GroupEndo) -> bool {
    induced_matrix(phi).is_invertible()
}

/// Position in the Andreadakis-Johnson filtration as far as degree `N` sees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutDepth {
    /// In `A(m)` but not in `A(m+1)`.
    Level(usize),
    /// In `A(N-1)` and indistinguishable from the identity through degree `N`.
    BeyondHorizon,
}

impl AutDepth {
    pub fn at_least(&self, m: usize) -> bool {
        match *self {
            AutDepth::Level(k) => k >= m,
            AutDepth::BeyondHorizon => true,
        }
    }

    pub fn level(&self) -> Option<usize> {
        match *self {
            AutDepth::Level(k) => Some(k),
            AutDepth::BeyondHorizon => None,
        }
    }

    /// Depth from the lowest degree of the displacements `theta(phi(x_j)) - theta(x_j)`.
    pub(crate) fn from_lowest(lowest: impl Iterator<Item = Option<usize>>) -> AutDepth {
        match lowest.flatten().min() {
            Some(n) => AutDepth::Level(n - 1),
            None => AutDepth::BeyondHorizon,
        }
    }
}

impl fmt::Display for AutDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutDepth::Level(m) => write!(f, "{m}"),
            AutDepth::BeyondHorizon => f.write_str("exceeds N-1"),
        }
    }
}

fn displacement_series(phi: &GroupEndo) -> Result<Vec<TruncSeries>> {
    let ctx = phi.ctx();
    (1..=ctx.rank()).map(|j| magnus_embed(&phi.displacement(j), ctx)).collect()
}

/// The largest `m <= N-1` with `phi(x_j) x_j^-1` in `F_{m+1}` for every `j`.
pub fn aj_depth(phi: &GroupEndo) -> Result<AutDepth> {
    if !is_automorphism(phi) {
        return Err(Error::NotAutomorphism);
    }
    let thetas = displacement_series(phi)?;
    Ok(AutDepth::from_lowest(thetas.iter().map(|s| s.without_constant().lowest_degree())))
}

/// Rows `X_j -> ` a homogeneous element of `H^{(x)(m+1)}`: the values of a
/// p-Johnson homomorphism or of a p-Johnson map at level `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonTable {
    ctx: GroupContext,
    level: usize,
    rows: Vec<TruncSeries>,
}

impl JohnsonTable {
    /// Keeps only the degree `level + 1` part of each row.
    pub fn new(ctx: GroupContext, level: usize, rows: Vec<TruncSeries>) -> Self {
        let rows = rows.into_iter().map(|s| s.homogeneous_part(level + 1)).collect();
        JohnsonTable { ctx, level, rows }
    }

    pub fn zero(ctx: GroupContext, level: usize) -> Self {
        JohnsonTable { ctx, level, rows: alloc::vec![TruncSeries::zero(ctx); ctx.rank()] }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The row for `X_j`.
    pub fn row(&self, j: usize) -> &TruncSeries {
        &self.rows[j - 1]
    }

    pub fn rows(&self) -> &[TruncSeries] {
        &self.rows
    }

    /// `tau(i_1...i_{m+1}; X_j)`.
    pub fn coefficient(&self, j: usize, mono: &Monomial) -> u32 {
        self.rows[j - 1].coefficient(mono)
    }

    /// Nonzero entries `(j, monomial, value)`, generators ascending and
    /// monomials length-lex.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u32)> + '_ {
        self.rows.iter().enumerate().flat_map(|(k, s)| s.terms().map(move |(m, c)| (k + 1, m, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(TruncSeries::is_zero)
    }

    pub fn add(&self, other: &JohnsonTable) -> Result<JohnsonTable> {
        if self.ctx != other.ctx || self.level != other.level {
            return Err(Error::ContextMismatch);
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect();
        Ok(JohnsonTable { ctx: self.ctx, level: self.level, rows })
    }
}

pub(crate) fn check_level(m: usize, ctx: &GroupContext) -> Result<()> {
    if m == 0 || m + 1 > ctx.trunc() {
        Err(Error::LevelOutOfRange { level: m, max: ctx.trunc() - 1 })
    } else {
        Ok(())
    }
}

/// `tau_m(phi)`: `X_j -> theta_{m+1}(phi(x_j) x_j^-1)`, for `phi` in `A(m)`.
pub fn johnson_hom(phi: &GroupEndo, m: usize) -> Result<JohnsonTable> {
    let ctx = *phi.ctx();
    check_level(m, &ctx)?;
    if !is_automorphism(phi) {
        return Err(Error::NotAutomorphism);
    }
    let thetas = displacement_series(phi)?;
    let depth = AutDepth::from_lowest(thetas.iter().map(|s| s.without_constant().lowest_degree()));
    if let AutDepth::Level(d) = depth {
        if d < m {
            return Err(Error::NotInAndreadakis { level: m, depth: d });
        }
    }
    let rows = thetas
        .iter()
        .map(|s| graded_part(s, m + 1).map(|g| g.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(JohnsonTable::new(ctx, m, rows))
}

/// `kappa(phi) = (theta o phi o theta^-1) o s([phi]^-1)`; its linear part is the identity.
pub fn kappa_theta(phi: &GroupEndo) -> Result<AlgebraEndo> {
    let p_inv = induced_matrix(phi).inverse().ok_or(Error::NotAutomorphism)?;
    let ctx = *phi.ctx();
    algebra_endo_of(phi)?.compose(&AlgebraEndo::linear(&p_inv, ctx))
}

/// `tau^theta_m(phi)`: the degree `m+1` part of `kappa(phi)(X_j) - X_j`.
pub fn johnson_map(phi: &GroupEndo, m: usize) -> Result<JohnsonTable> {
    check_level(m, phi.ctx())?;
    Ok(johnson_map_of_kappa(&kappa_theta(phi)?, m))
}

/// The Johnson-map table read off an IA algebra endomorphism.
pub fn johnson_map_of_kappa(kappa: &AlgebraEndo, m: usize) -> JohnsonTable {
    let ctx = *kappa.ctx();
    let rows = (1..=ctx.rank()).map(|j| kappa.image(j).homogeneous_part(m + 1)).collect();
    JohnsonTable::new(ctx, m, rows)
}
