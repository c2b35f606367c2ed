use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Largest supported truncation order `N`.
pub const MAX_TRUNC: usize = 16;
/// Largest supported number of generators (monomial letters are packed in 4 bits).
pub const MAX_RANK: usize = 16;

/// The prime `p`, the rank `r` of the free group and the truncation order `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupContext {
    field: PrimeField,
    rank: usize,
    trunc: usize,
}

impl GroupContext {
    pub fn new(p: u32, rank: usize, trunc: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankOutOfRange(rank));
        }
        if !(2..=MAX_TRUNC).contains(&trunc) {
            return Err(Error::TruncationOutOfRange(trunc));
        }
        Ok(GroupContext { field, rank, trunc })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        GroupContext::new(self.p(), rank, self.trunc)
    }

    pub fn with_trunc(&self, trunc: usize) -> Result<Self> {
        GroupContext::new(self.p(), self.rank, trunc)
    }

    /// The context with one extra generator `x_{r+1}`, used for relators of
    /// the semidirect presentation.
    pub fn extended(&self) -> Result<Self> {
        self.with_rank(self.rank + 1)
    }

    pub fn require_odd(&self) -> Result<()> {
        if self.p() == 2 {
            Err(Error::OddPrimeRequired(2))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_generator(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.rank {
            Err(Error::GeneratorOutOfRange { index, max: self.rank })
        } else {
            Ok(())
        }
    }
}
