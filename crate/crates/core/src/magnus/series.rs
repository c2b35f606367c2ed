use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::Monomial;
use crate::context::GroupContext;
use crate::error::{Error, Result};

/// An element of `F_p<<X_1..X_r>>` truncated at total degree `N`.
///
/// Sparse: only nonzero coefficients are stored, every stored monomial has
/// degree `<= N`, and iteration is in length-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    ctx: GroupContext,
    terms: BTreeMap<Monomial, u32>,
}

impl TruncSeries {
    pub fn zero(ctx: GroupContext) -> Self {
        TruncSeries { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: GroupContext) -> Self {
        TruncSeries::constant(ctx, 1)
    }

    pub fn constant(ctx: GroupContext, c: i64) -> Self {
        let mut s = TruncSeries::zero(ctx);
        s.add_term(Monomial::EMPTY, ctx.field().reduce(c));
        s
    }

    /// The variable `X_j`.
    pub fn generator(ctx: GroupContext, j: usize) -> Self {
        TruncSeries::monomial(ctx, Monomial::generator(j), 1)
    }

    pub fn monomial(ctx: GroupContext, m: Monomial, c: i64) -> Self {
        let mut s = TruncSeries::zero(ctx);
        s.add_term(m, ctx.field().reduce(c));
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(ctx: GroupContext, terms: I) -> Self {
        let mut s = TruncSeries::zero(ctx);
        for (m, c) in terms {
            s.add_term(m, ctx.field().reduce(c));
        }
        s
    }

    #[inline]
    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    /// Adds `c * m`, dropping it if it lies beyond the truncation.
    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 || m.degree() > self.ctx.trunc() {
            return;
        }
        debug_assert!(m.max_index() <= self.ctx.rank());
        let f = self.ctx.field();
        let slot = self.terms.entry(m).or_insert(0);
        *slot = f.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::EMPTY)
    }

    /// Nonzero terms in length-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn highest_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn homogeneous_part(&self, degree: usize) -> TruncSeries {
        self.filtered(|m| m.degree() == degree)
    }

    /// Drops every term of degree above `n`.
    pub fn truncated(&self, n: usize) -> TruncSeries {
        self.filtered(|m| m.degree() <= n)
    }

    pub fn without_constant(&self) -> TruncSeries {
        self.filtered(|m| m.degree() > 0)
    }

    fn filtered(&self, keep: impl Fn(&Monomial) -> bool) -> TruncSeries {
        TruncSeries {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, *c)).collect(),
        }
    }

    /// Re-homes the series in another context with the same prime, dropping
    /// terms above the new truncation.
    pub fn in_context(&self, ctx: GroupContext) -> Result<TruncSeries> {
        if ctx.p() != self.ctx.p() {
            return Err(Error::ContextMismatch);
        }
        let mut out = TruncSeries::zero(ctx);
        for (m, c) in self.terms() {
            if m.max_index() > ctx.rank() {
                return Err(Error::GeneratorOutOfRange { index: m.max_index(), max: ctx.rank() });
            }
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> TruncSeries {
        let f = self.ctx.field();
        let mut out = TruncSeries::zero(self.ctx);
        for (m, a) in self.terms() {
            out.add_term(*m, f.mul(a, c));
        }
        out
    }

    pub fn add_assign_scaled(&mut self, other: &TruncSeries, c: u32) {
        debug_assert_eq!(self.ctx, other.ctx);
        let f = self.ctx.field();
        for (m, a) in other.terms() {
            self.add_term(*m, f.mul(a, c));
        }
    }

    fn check_same(&self, other: &TruncSeries) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Product, discarding every term of degree above `N`.
    pub fn try_mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_same(other)?;
        Ok(self.mul_truncated(other, self.ctx.trunc()))
    }

    /// Product keeping only degrees `<= horizon`.
    pub fn mul_truncated(&self, other: &TruncSeries, horizon: usize) -> TruncSeries {
        let f = self.ctx.field();
        let mut out = TruncSeries::zero(self.ctx);
        for (ma, ca) in self.terms() {
            if ma.degree() > horizon {
                break;
            }
            let room = horizon - ma.degree();
            for (mb, cb) in other.terms() {
                if mb.degree() > room {
                    break;
                }
                out.add_term(ma.concat(mb), f.mul(ca, cb));
            }
        }
        out
    }

    /// Multiplies on the right by the one-variable polynomial `sum_k poly[k] X_j^k`.
    pub(crate) fn mul_right_univariate(&self, j: usize, poly: &[u32]) -> TruncSeries {
        let f = self.ctx.field();
        let n = self.ctx.trunc();
        let powers: alloc::vec::Vec<Monomial> =
            (0..poly.len()).map(|k| Monomial::power(j, k)).collect();
        let mut out = TruncSeries::zero(self.ctx);
        for (m, c) in self.terms() {
            for (k, &a) in poly.iter().enumerate() {
                if m.degree() + k > n {
                    break;
                }
                if a != 0 {
                    out.add_term(m.concat(&powers[k]), f.mul(c, a));
                }
            }
        }
        out
    }

    /// Inverse in the truncated algebra; requires a nonzero constant term.
    pub fn try_invert(&self) -> Result<TruncSeries> {
        let f = self.ctx.field();
        let c0_inv = f.inv(self.constant_term()).ok_or(Error::NotAUnit)?;
        // a = c0 (1 + u) with u in U_1, a^-1 = c0^-1 sum_k (-u)^k
        let minus_u = self.without_constant().scale(f.neg(c0_inv));
        let mut acc = TruncSeries::one(self.ctx);
        let mut power = TruncSeries::one(self.ctx);
        for _ in 0..self.ctx.trunc() {
            power = &power * &minus_u;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(c0_inv))
    }

    /// `a b - b a`.
    pub fn bracket(&self, other: &TruncSeries) -> TruncSeries {
        &(self * other) - &(other * self)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, 1);
        out
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, self.ctx.field().neg(1));
        out
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;

    fn neg(self) -> TruncSeries {
        self.scale(self.ctx.field().neg(1))
    }
}

/// Panics when the operands live in different contexts; use
/// [`TruncSeries::try_mul`] for a checked product.
impl Mul for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_mul(rhs).expect("series context mismatch")
    }
}

/// Sum of `c*Xi1Xi2...` terms in length-lex order; the constant term is a
/// bare number and the zero series prints as `0`.
impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*")?;
                for i in m.letters() {
                    write!(f, "X{i}")?;
                }
            }
        }
        Ok(())
    }
}
