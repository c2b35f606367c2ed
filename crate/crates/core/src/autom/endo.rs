use alloc::vec::Vec;
use core::fmt;

use super::DEFAULT_WORD_LIMIT;
use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::words::Word;

/// An endomorphism of the free pro-p group, given by the images of `x_1..x_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupEndo {
    ctx: GroupContext,
    images: Vec<Word>,
}

impl GroupEndo {
    pub fn identity(ctx: GroupContext) -> Self {
        GroupEndo { ctx, images: (1..=ctx.rank()).map(Word::generator).collect() }
    }

    pub fn from_images(ctx: GroupContext, images: Vec<Word>) -> Result<Self> {
        if images.len() != ctx.rank() {
            return Err(Error::RankOutOfRange(images.len()));
        }
        for w in &images {
            w.check_context(&ctx)?;
        }
        Ok(GroupEndo { ctx, images })
    }

    /// `Inn(x): g -> x g x^-1`.
    pub fn inner(x: &Word, ctx: GroupContext) -> Result<Self> {
        x.check_context(&ctx)?;
        let inv = x.inverse();
        let images = (1..=ctx.rank()).map(|j| x.mul(&Word::generator(j)).mul(&inv)).collect();
        Ok(GroupEndo { ctx, images })
    }

    /// Sends `x_j` to `x_j w` and fixes the other generators.
    pub fn transvection(j: usize, w: &Word, ctx: GroupContext) -> Result<Self> {
        ctx.check_generator(j)?;
        w.check_context(&ctx)?;
        let mut e = GroupEndo::identity(ctx);
        e.images[j - 1] = Word::generator(j).mul(w);
        Ok(e)
    }

    #[inline]
    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// `phi(x_j)`.
    pub fn image(&self, j: usize) -> &Word {
        &self.images[j - 1]
    }

    /// The same endomorphism read in another context of equal rank.
    pub fn in_context(&self, ctx: GroupContext) -> Result<Self> {
        GroupEndo::from_images(ctx, self.images.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| *w == Word::generator(k + 1))
    }

    /// `phi(w)`, with no length guard.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images, None).expect("unbounded substitution")
    }

    pub fn apply_bounded(&self, w: &Word, limit: usize) -> Result<Word> {
        w.substitute(&self.images, Some(limit as u64)).ok_or(Error::WordTooLong { limit })
    }

    /// `phi(x_j) x_j^-1`.
    pub fn displacement(&self, j: usize) -> Word {
        let mut w = self.images[j - 1].clone();
        w.push(crate::words::Letter::new(j, -1));
        w
    }

    /// `self o other`, i.e. `x -> self(other(x))`, under the default guard.
    pub fn compose(&self, other: &GroupEndo) -> Result<GroupEndo> {
        self.compose_bounded(other, DEFAULT_WORD_LIMIT)
    }

    pub fn compose_bounded(&self, other: &GroupEndo, limit: usize) -> Result<GroupEndo> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply_bounded(w, limit))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupEndo { ctx: self.ctx, images })
    }

    /// The `k`-fold composite, by repeated squaring.
    pub fn power(&self, k: u64) -> Result<GroupEndo> {
        self.power_bounded(k, DEFAULT_WORD_LIMIT)
    }

    pub fn power_bounded(&self, mut k: u64, limit: usize) -> Result<GroupEndo> {
        let mut acc = GroupEndo::identity(self.ctx);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_bounded(&base, limit)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose_bounded(&base, limit)?;
            }
        }
        Ok(acc)
    }

    /// Whether `self o claimed` is the identity on generators, exactly.
    pub fn verify_inverse(&self, claimed: &GroupEndo) -> Result<bool> {
        Ok(self.compose(claimed)?.is_identity())
    }
}

/// One line per generator, `x1 -> <word>`.
impl fmt::Display for GroupEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "x{} -> {}", k + 1, w)?;
        }
        Ok(())
    }
}

/// `phi(w)`.
pub fn apply_endo(phi: &GroupEndo, w: &Word) -> Word {
    phi.apply(w)
}

/// `phi o psi`.
pub fn compose(phi: &GroupEndo, psi: &GroupEndo) -> Result<GroupEndo> {
    phi.compose(psi)
}

/// `phi^k` for `k >= 1`, failing with [`Error::WordTooLong`] past the default guard.
pub fn power_endo(phi: &GroupEndo, k: u64) -> Result<GroupEndo> {
    phi.power(k)
}
