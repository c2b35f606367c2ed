//! Recursive-descent parser for the word grammar
//!
//! ```text
//! word := term (('*')? term)*
//! term := atom ('^' int)?
//! atom := 'x' int | '[' word ',' word ']' | '(' word ')' | '1'
//! int  := '-'? [0-9]+
//! ```
//!
//! Whitespace is ignored everywhere. The bare atom `1` (the identity) is
//! accepted so that the canonical printer round-trips.

use alloc::string::{String, ToString};

use super::{Word, EXPONENT_BOUND};
use crate::context::GroupContext;
use crate::error::{Error, Result};

/// Parses a word over `x_1..x_r`.
pub fn parse_word(text: &str, ctx: &GroupContext) -> Result<Word> {
    parse_word_with_max(text, ctx.rank())
}

/// Parses a relator word, which may also use the extra generator `x_{r+1}`.
pub fn parse_relator_word(text: &str, ctx: &GroupContext) -> Result<Word> {
    parse_word_with_max(text, ctx.rank() + 1)
}

pub fn parse_word_with_max(text: &str, max_generator: usize) -> Result<Word> {
    let mut parser = Parser { bytes: text.as_bytes(), pos: 0, max_generator };
    let w = parser.word()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(w)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    max_generator: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let mut msg = String::from("expected '");
            msg.push(c as char);
            msg.push('\'');
            Err(self.error(&msg))
        }
    }

    fn starts_term(c: Option<u8>) -> bool {
        matches!(c, Some(b'x' | b'[' | b'(' | b'1'))
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc.append(&t);
                }
                c if Self::starts_term(c) => {
                    let t = self.term()?;
                    acc.append(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.int()?;
            if e.unsigned_abs() >= EXPONENT_BOUND as u64 {
                return Err(Error::ExponentOverflow);
            }
            let limit = crate::autom::DEFAULT_WORD_LIMIT;
            if base.syllables() > 1 && base.length().saturating_mul(e.unsigned_abs()) > limit as u64 {
                return Err(Error::WordTooLong { limit });
            }
            base.pow(e)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let idx = self.int()?;
                if idx < 1 || idx as u64 > self.max_generator as u64 {
                    self.pos = start;
                    return Err(Error::GeneratorOutOfRange {
                        index: idx.max(0) as usize,
                        max: self.max_generator,
                    });
                }
                Ok(Word::generator(idx as usize))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(u.commutator(&v))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(_) => Err(self.error("expected 'x', '[', '(' or '1'")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.bytes.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
            self.skip_ws();
        }
        let digits_start = self.pos;
        let mut value: i64 = 0;
        while let Some(c) = self.bytes.get(self.pos).filter(|c| c.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as i64))
                .ok_or(Error::ExponentOverflow)?;
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        Ok(if negative { -value } else { value })
    }
}
