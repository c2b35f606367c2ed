//! Fox free derivatives, computed mod p.
//!
//! Two separate routes are provided. [`fox_derivative`] gives the image of
//! `dw/dx_j` in the truncated Magnus algebra via the product rule, and
//! [`epsilon_via_fox`] works entirely in the group ring `F_p[F]`: it
//! differentiates words letter by letter and then augments. Neither touches
//! [`magnus_embed`](crate::magnus::magnus_embed), so they serve as an
//! independent check on Magnus coefficients.

use alloc::collections::BTreeMap;

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::magnus::{Monomial, TruncSeries};
use crate::words::{Letter, Word};

/// A finite `F_p`-linear combination of free-group words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    field: PrimeField,
    terms: BTreeMap<Word, u32>,
}

impl GroupRingElement {
    pub fn from_word(field: PrimeField, w: &Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.clone(), 1 % field.modulus());
        let mut e = GroupRingElement { field, terms };
        e.terms.retain(|_, c| *c != 0);
        e
    }

    fn add_term(&mut self, w: Word, c: u32) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(w).or_insert(0);
        *slot = self.field.add(*slot, c);
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// The Fox derivative `d/dx_j`, extended linearly.
    ///
    /// On a word it expands every syllable into unit steps:
    /// `d(x^e) = 1 + x + ... + x^{e-1}` and `d(x^-e) = -(x^-1 + ... + x^-e)`
    /// for `e > 0`, each multiplied on the left by the preceding prefix.
    pub fn derivative(&self, j: usize) -> GroupRingElement {
        let f = self.field;
        let mut out = GroupRingElement { field: f, terms: BTreeMap::new() };
        for (w, c) in self.terms() {
            let mut prefix = Word::identity();
            for l in w.letters() {
                if l.generator() == j {
                    let step = if l.exponent > 0 { 1 } else { -1 };
                    let coeff = if l.exponent > 0 { c } else { f.neg(c) };
                    let mut cur = prefix.clone();
                    if step < 0 {
                        cur.push(Letter::new(j, -1));
                    }
                    for _ in 0..l.exponent.unsigned_abs() {
                        out.add_term(cur.clone(), coeff);
                        cur.push(Letter::new(j, step));
                    }
                }
                prefix.push(*l);
            }
        }
        out
    }

    /// The augmentation `F_p[F] -> F_p`, sending every word to 1.
    pub fn augmentation(&self) -> u32 {
        self.terms.values().fold(0, |acc, &c| self.field.add(acc, c))
    }
}

/// `theta(dw/dx_j)` truncated at `N`, by the product rule
/// `d(uv) = du + theta(u) dv`.
pub fn fox_derivative(w: &Word, j: usize, ctx: &GroupContext) -> Result<TruncSeries> {
    ctx.check_generator(j)?;
    w.check_context(ctx)?;
    let f = ctx.field();
    let one = TruncSeries::one(*ctx);
    let mut acc = TruncSeries::zero(*ctx);
    let mut prefix = one.clone();
    for l in w.letters() {
        let x = &one + &TruncSeries::generator(*ctx, l.generator());
        let step = if l.exponent > 0 { x } else { x.try_invert()? };
        let sign = if l.exponent > 0 { 1 } else { f.neg(1) };
        let hit = l.generator() == j;
        // theta(x)^P = 1 + X^P vanishes past N once P = p^k > N, so the
        // unit steps repeat with period P
        let mut period = 1u64;
        while period <= ctx.trunc() as u64 {
            period *= f.modulus() as u64;
        }
        let count = l.exponent.unsigned_abs();
        let (full, rest) = (count / period, count % period);
        if hit && full > 0 {
            let mut cycle = TruncSeries::zero(*ctx);
            let mut cur = prefix.clone();
            for _ in 0..period {
                if l.exponent < 0 {
                    cur = &cur * &step;
                }
                cycle.add_assign_scaled(&cur, sign);
                if l.exponent > 0 {
                    cur = &cur * &step;
                }
            }
            acc.add_assign_scaled(&cycle, f.reduce((full % f.modulus() as u64) as i64));
        }
        for _ in 0..rest {
            if l.exponent < 0 {
                prefix = &prefix * &step;
            }
            if hit {
                acc.add_assign_scaled(&prefix, sign);
            }
            if l.exponent > 0 {
                prefix = &prefix * &step;
            }
        }
    }
    Ok(acc)
}

/// `epsilon(i_1...i_m; w)` as the augmentation of
/// `d/dx_{i_1}( ... d/dx_{i_m}(w))`, computed in the group ring.
///
/// The innermost derivative is the last index, which matches the
/// left-to-right reading of the monomial `X_{i_1}...X_{i_m}`. The cost grows
/// with the total exponent of `w`, so this is meant for short words.
pub fn epsilon_via_fox(mono: &Monomial, w: &Word, ctx: &GroupContext) -> Result<u32> {
    if mono.degree() > ctx.trunc() {
        return Err(Error::LevelOutOfRange { level: mono.degree(), max: ctx.trunc() });
    }
    w.check_context(ctx)?;
    let mut element = GroupRingElement::from_word(ctx.field(), w);
    for i in mono.to_vec().into_iter().rev() {
        ctx.check_generator(i)?;
        element = element.derivative(i);
    }
    Ok(element.augmentation())
}
