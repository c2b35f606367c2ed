//! Free-group words: representation, reduction, printing and parsing.

mod parse;

use alloc::vec::Vec;
use core::fmt;

use crate::context::GroupContext;
use crate::error::{Error, Result};

pub use parse::{parse_relator_word, parse_word, parse_word_with_max};

/// Exponents must stay strictly below this magnitude where they are created
/// (parsing and powers).
pub const EXPONENT_BOUND: i64 = 1 << 31;

/// Syllables a bounded substitution may write per letter of its length limit.
pub const SUBSTITUTION_WORK: u64 = 64;

/// One syllable `x_generator^exponent` of a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u8,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Letter { generator: generator as u8, exponent }
    }

    #[inline]
    pub fn generator(&self) -> usize {
        self.generator as usize
    }
}

/// A freely reduced word. Adjacent syllables never share a generator and no
/// exponent is zero; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// The generator `x_j`.
    pub fn generator(j: usize) -> Self {
        Word::power_of(j, 1)
    }

    /// `x_j^e`.
    pub fn power_of(j: usize, e: i64) -> Self {
        let mut w = Word::identity();
        w.push(Letter::new(j, e));
        w
    }

    /// Builds the reduced word denoted by an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of syllables.
    #[inline]
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Length in the generators, `sum |e|`.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(Letter::generator).max().unwrap_or(0)
    }

    /// Appends one syllable, cancelling against the tail.
    pub fn push(&mut self, l: Letter) {
        if l.exponent == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.generator == l.generator {
                last.exponent += l.exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { generator: l.generator, exponent: -l.exponent })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn append(&mut self, other: &Word) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    /// `self^k`, by repeated squaring.
    pub fn pow(&self, k: i64) -> Result<Word> {
        if k.unsigned_abs() >= EXPONENT_BOUND as u64 {
            return Err(Error::ExponentOverflow);
        }
        if let [l] = self.letters.as_slice() {
            let e = l.exponent.checked_mul(k).ok_or(Error::ExponentOverflow)?;
            if e.unsigned_abs() >= EXPONENT_BOUND as u64 {
                return Err(Error::ExponentOverflow);
            }
            return Ok(Word::power_of(l.generator(), e));
        }
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Word::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc.append(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        let mut w = self.mul(other);
        w.append(&self.inverse());
        w.append(&other.inverse());
        w
    }

    /// Substitutes `images[j - 1]` for every `x_j`.
    ///
    /// Returns `None` as soon as the intermediate result exceeds `limit`
    /// letters (`sum |e|`), or once more than `SUBSTITUTION_WORK * limit`
    /// syllables have been written: heavy cancellation can keep the result
    /// short while the work grows quadratically.
    pub fn substitute(&self, images: &[Word], limit: Option<u64>) -> Option<Word> {
        let mut acc = Word::identity();
        // exact length of acc, maintained syllable by syllable
        let mut len = 0u64;
        let limit = limit.unwrap_or(u64::MAX);
        let mut budget = limit.saturating_mul(SUBSTITUTION_WORK);
        for l in &self.letters {
            let image = &images[l.generator() - 1];
            let e = l.exponent;
            if image.letters.len() == 1 {
                let s = image.letters[0];
                acc.push_counted(Letter { generator: s.generator, exponent: s.exponent * e }, &mut len);
                if len > limit {
                    return None;
                }
            } else {
                let base = if e < 0 { image.inverse() } else { image.clone() };
                for _ in 0..e.unsigned_abs() {
                    for &b in &base.letters {
                        acc.push_counted(b, &mut len);
                    }
                    budget = budget.saturating_sub(base.letters.len() as u64);
                    if len > limit || budget == 0 {
                        return None;
                    }
                }
            }
        }
        Some(acc)
    }

    /// [`Word::push`], keeping `len == self.length()` up to date.
    fn push_counted(&mut self, l: Letter, len: &mut u64) {
        match self.letters.last() {
            Some(last) if last.generator == l.generator => {
                *len = *len - last.exponent.unsigned_abs() + (last.exponent + l.exponent).unsigned_abs();
            }
            _ => *len += l.exponent.unsigned_abs(),
        }
        self.push(l);
    }

    pub(crate) fn check_context(&self, ctx: &GroupContext) -> Result<()> {
        match self.letters.iter().find(|l| l.generator() > ctx.rank()) {
            Some(l) => Err(Error::GeneratorOutOfRange { index: l.generator(), max: ctx.rank() }),
            None => Ok(()),
        }
    }
}

/// Freely reduced product of `factors[i].0 ^ factors[i].1`, in order.
pub fn word_product(factors: &[(Word, i64)]) -> Result<Word> {
    let mut acc = Word::identity();
    for (w, e) in factors {
        acc.append(&w.pow(*e)?);
    }
    Ok(acc)
}

/// `[u, v] = u v u^-1 v^-1`.
pub fn word_commutator(u: &Word, v: &Word) -> Word {
    u.commutator(v)
}

/// Canonical printer: `x1^3*x2*x1^-1`; the identity prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}
