use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::LinearMapH;
use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::magnus::{magnus_embed, Monomial, TruncSeries};

use super::GroupEndo;

/// A continuous `F_p`-algebra endomorphism of the truncated Magnus algebra,
/// given by the images of `X_1..X_r`. Images have zero constant term, so
/// every filtration step `U_n` maps into itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraEndo {
    ctx: GroupContext,
    images: Vec<TruncSeries>,
}

impl AlgebraEndo {
    pub fn identity(ctx: GroupContext) -> Self {
        AlgebraEndo { ctx, images: (1..=ctx.rank()).map(|j| TruncSeries::generator(ctx, j)).collect() }
    }

    pub fn from_images(ctx: GroupContext, images: Vec<TruncSeries>) -> Result<Self> {
        if images.len() != ctx.rank() {
            return Err(Error::RankOutOfRange(images.len()));
        }
        for (k, s) in images.iter().enumerate() {
            if *s.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if s.constant_term() != 0 {
                return Err(Error::ConstantTermInImage { generator: k + 1 });
            }
        }
        Ok(AlgebraEndo { ctx, images })
    }

    /// The linear extension `s(P)` of a map of `H`: `X_j -> sum_i P_ij X_i`.
    pub fn linear(map: &LinearMapH, ctx: GroupContext) -> Self {
        let images = (1..=ctx.rank())
            .map(|j| {
                TruncSeries::from_terms(
                    ctx,
                    (1..=ctx.rank()).map(|i| (Monomial::generator(i), map.entry(i, j) as i64)),
                )
            })
            .collect();
        AlgebraEndo { ctx, images }
    }

    #[inline]
    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn images(&self) -> &[TruncSeries] {
        &self.images
    }

    /// The image of `X_j`.
    pub fn image(&self, j: usize) -> &TruncSeries {
        &self.images[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == AlgebraEndo::identity(self.ctx)
    }

    /// The degree-one part, as a map of `H`.
    pub fn linear_part(&self) -> LinearMapH {
        let r = self.ctx.rank();
        let rows = (1..=r)
            .map(|i| (1..=r).map(|j| self.image(j).coefficient(&Monomial::generator(i)) as i64).collect())
            .collect();
        LinearMapH::from_rows(self.ctx.field(), rows)
    }

    /// Substitutes `X_j -> e(X_j)` in `s`.
    pub fn apply(&self, s: &TruncSeries) -> Result<TruncSeries> {
        if *s.ctx() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        let terms: Vec<(Monomial, u32)> = s.terms().map(|(m, c)| (*m, c)).collect();
        Ok(self.eval(&terms, self.ctx.trunc()))
    }

    // Horner scheme on the first letter: s = c + sum_i X_i s_i, so
    // e(s) = c + sum_i e(X_i) e(s_i), and e(s_i) is only needed below the
    // horizon because every e(X_i) starts in degree 1.
    fn eval(&self, terms: &[(Monomial, u32)], horizon: usize) -> TruncSeries {
        let mut out = TruncSeries::zero(self.ctx);
        let mut groups: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.ctx.rank()];
        for &(m, c) in terms {
            if m.degree() > horizon {
                continue;
            }
            match m.split_first() {
                None => out.add_term(Monomial::EMPTY, c),
                Some((i, rest)) => groups[i - 1].push((rest, c)),
            }
        }
        if horizon == 0 {
            return out;
        }
        for (k, group) in groups.iter().enumerate() {
            if group.is_empty() {
                continue;
            }
            let inner = self.eval(group, horizon - 1);
            out.add_assign_scaled(&self.images[k].mul_truncated(&inner, horizon), 1);
        }
        out
    }

    /// `self o other`: `X_j -> self(other(X_j))`.
    pub fn compose(&self, other: &AlgebraEndo) -> Result<AlgebraEndo> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let images = other.images.iter().map(|s| self.apply(s)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraEndo { ctx: self.ctx, images })
    }

    /// The `k`-fold composite, by repeated squaring.
    pub fn power(&self, mut k: u64) -> AlgebraEndo {
        let mut acc = AlgebraEndo::identity(self.ctx);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base).expect("same context");
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base).expect("same context");
            }
        }
        acc
    }

    /// The inverse through degree `N`.
    ///
    /// Solved degree by degree: starting from the inverse of the linear
    /// part, the lowest-degree residual of `e(f(X_j)) - X_j` is cancelled by
    /// subtracting its preimage under the linear part. Each step fixes one
    /// more degree, which is the triangular structure of the system.
    pub fn inverse(&self) -> Result<AlgebraEndo> {
        let l_inv = self.linear_part().inverse().ok_or(Error::SingularLinearPart)?;
        let back = AlgebraEndo::linear(&l_inv, self.ctx);
        let mut f = back.clone();
        for degree in 2..=self.ctx.trunc() {
            for j in 1..=self.ctx.rank() {
                let residual = self.apply(f.image(j))?.homogeneous_part(degree);
                if residual.is_zero() {
                    continue;
                }
                let correction = back.apply(&residual)?;
                f.images[j - 1] = &f.images[j - 1] - &correction;
            }
        }
        Ok(f)
    }

    /// Re-homes the images in a context with the same prime and rank.
    pub fn in_context(&self, ctx: GroupContext) -> Result<AlgebraEndo> {
        if ctx.rank() != self.ctx.rank() {
            return Err(Error::ContextMismatch);
        }
        let images = self.images.iter().map(|s| s.in_context(ctx)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraEndo { ctx, images })
    }
}

impl fmt::Display for AlgebraEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "X{} -> {}", k + 1, s)?;
        }
        Ok(())
    }
}

/// `theta o phi o theta^-1`: `X_j -> theta(phi(x_j)) - 1`.
pub fn algebra_endo_of(phi: &GroupEndo) -> Result<AlgebraEndo> {
    let ctx = *phi.ctx();
    let one = TruncSeries::one(ctx);
    let images = phi
        .images()
        .iter()
        .map(|w| Ok(&magnus_embed(w, &ctx)? - &one))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraEndo { ctx, images })
}

pub fn algebra_endo_apply(e: &AlgebraEndo, s: &TruncSeries) -> Result<TruncSeries> {
    e.apply(s)
}

pub fn algebra_endo_inverse(e: &AlgebraEndo) -> Result<AlgebraEndo> {
    e.inverse()
}

/// A family `X_j -> eta(X_j)` of series supported in degrees `>= 2`; the
/// data of an IA endomorphism of the Magnus algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTable {
    ctx: GroupContext,
    rows: Vec<TruncSeries>,
}

impl HomTable {
    pub fn new(ctx: GroupContext, rows: Vec<TruncSeries>) -> Result<Self> {
        if rows.len() != ctx.rank() {
            return Err(Error::RankOutOfRange(rows.len()));
        }
        for (k, s) in rows.iter().enumerate() {
            if *s.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if s.lowest_degree().is_some_and(|d| d < 2) {
                return Err(Error::LowDegreeSupport { generator: k + 1 });
            }
        }
        Ok(HomTable { ctx, rows })
    }

    pub fn zero(ctx: GroupContext) -> Self {
        HomTable { ctx, rows: vec![TruncSeries::zero(ctx); ctx.rank()] }
    }

    pub fn row(&self, j: usize) -> &TruncSeries {
        &self.rows[j - 1]
    }

    pub fn rows(&self) -> &[TruncSeries] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(TruncSeries::is_zero)
    }
}

/// `E(e) = e|_H - id_H`, defined for `e` whose linear part is the identity.
pub fn ia_to_hom(e: &AlgebraEndo) -> Result<HomTable> {
    if !e.linear_part().is_identity() {
        return Err(Error::LinearPartNotIdentity);
    }
    let ctx = *e.ctx();
    let rows = (1..=ctx.rank()).map(|j| e.image(j) - &TruncSeries::generator(ctx, j)).collect();
    HomTable::new(ctx, rows)
}

/// The unique algebra endomorphism `X_j -> X_j + t(X_j)`.
pub fn hom_to_ia(t: &HomTable) -> AlgebraEndo {
    let ctx = t.ctx;
    let images = (1..=ctx.rank()).map(|j| &TruncSeries::generator(ctx, j) + t.row(j)).collect();
    AlgebraEndo { ctx, images }
}
