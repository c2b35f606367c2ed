use super::johnson::{check_level, is_automorphism, AutDepth, JohnsonTable};
use super::{algebra_endo_of, AlgebraEndo, GroupEndo};
use crate::error::{Error, Result};
use crate::magnus::TruncSeries;

/// Word length at which iterates move to the algebra side. Expanding a
/// word costs time linear in its length, and the algebra route is exact
/// through degree `N`, so long words buy nothing.
pub const ITERATE_WORD_LIMIT: usize = 4_096;

/// An iterate `phi^k`, held as words when they stay short and otherwise as
/// the algebra endomorphism `theta o phi^k o theta^-1`.
///
/// Both forms agree through degree `N`: `theta(phi^k(x_j)) - 1` is the image
/// of `X_j` under the `k`-th power of `theta o phi o theta^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Iterate {
    Word(GroupEndo),
    Algebra(AlgebraEndo),
}

impl Iterate {
    /// `phi^k`, switching to the algebra side once words pass
    /// [`ITERATE_WORD_LIMIT`] letters.
    pub fn power(phi: &GroupEndo, k: u64) -> Result<Iterate> {
        Iterate::power_bounded(phi, k, ITERATE_WORD_LIMIT)
    }

    pub fn power_bounded(phi: &GroupEndo, k: u64, limit: usize) -> Result<Iterate> {
        if !is_automorphism(phi) {
            return Err(Error::NotAutomorphism);
        }
        match phi.power_bounded(k, limit) {
            Ok(endo) => Ok(Iterate::Word(endo)),
            Err(Error::WordTooLong { .. }) => Ok(Iterate::Algebra(algebra_endo_of(phi)?.power(k))),
            Err(e) => Err(e),
        }
    }

    /// `phi^(p^d)`.
    pub fn p_power(phi: &GroupEndo, d: u32) -> Result<Iterate> {
        let p = phi.ctx().p() as u64;
        let k = p.checked_pow(d).ok_or(Error::ExponentOverflow)?;
        Iterate::power(phi, k)
    }

    pub fn algebra(&self) -> Result<AlgebraEndo> {
        match self {
            Iterate::Word(e) => algebra_endo_of(e),
            Iterate::Algebra(a) => Ok(a.clone()),
        }
    }

    pub fn as_word(&self) -> Option<&GroupEndo> {
        match self {
            Iterate::Word(e) => Some(e),
            Iterate::Algebra(_) => None,
        }
    }

    /// `theta(phi^k(x_j)) - theta(x_j)` for each `j`. Its lowest degree and
    /// leading part agree with those of `theta(phi^k(x_j) x_j^-1) - 1`.
    fn differences(&self) -> Result<alloc::vec::Vec<TruncSeries>> {
        let a = self.algebra()?;
        let ctx = *a.ctx();
        Ok((1..=ctx.rank()).map(|j| a.image(j) - &TruncSeries::generator(ctx, j)).collect())
    }

    pub fn aj_depth(&self) -> Result<AutDepth> {
        match self {
            Iterate::Word(e) => super::aj_depth(e),
            Iterate::Algebra(_) => {
                let diffs = self.differences()?;
                Ok(AutDepth::from_lowest(diffs.iter().map(TruncSeries::lowest_degree)))
            }
        }
    }

    /// `tau_m` of the iterate.
    pub fn johnson_hom(&self, m: usize) -> Result<JohnsonTable> {
        match self {
            Iterate::Word(e) => super::johnson_hom(e, m),
            Iterate::Algebra(a) => {
                let ctx = *a.ctx();
                check_level(m, &ctx)?;
                if let AutDepth::Level(d) = self.aj_depth()? {
                    if d < m {
                        return Err(Error::NotInAndreadakis { level: m, depth: d });
                    }
                }
                Ok(JohnsonTable::new(ctx, m, self.differences()?))
            }
        }
    }
}
