//! Text grammar:
//!
//! ```text
//! cardinal := natural | "aleph_" ordinal
//! ordinal  := term ("+" term)*
//! term     := "w" ("^" natural)? ("*" natural)? | natural
//! signed   := "-"? cardinal | "undefined"
//! ```

use super::ordinal::OrdinalCnf;
use super::{Cardinal, SignedIndex};
use crate::error::{Error, Result};

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.input.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(self.input, start, "expected a natural number"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(self.input, start, "natural number out of range"))
    }

    fn term(&mut self) -> Result<OrdinalCnf> {
        if self.eat(b'w') {
            let exponent = if self.eat(b'^') {
                let at = self.pos;
                u32::try_from(self.natural()?)
                    .map_err(|_| Error::parse(self.input, at, "exponent out of range"))?
            } else {
                1
            };
            let coefficient = if self.eat(b'*') { self.natural()? } else { 1 };
            Ok(OrdinalCnf::omega_term(exponent, coefficient))
        } else {
            Ok(OrdinalCnf::finite(self.natural()?))
        }
    }

    fn ordinal(&mut self) -> Result<OrdinalCnf> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.input.len() {
            Ok(())
        } else {
            Err(Error::parse(
                self.input,
                self.pos,
                "unexpected trailing input",
            ))
        }
    }
}

pub(super) fn parse_cardinal(input: &str) -> Result<Cardinal> {
    let mut cur = Cursor { input, pos: 0 };
    let value = if input.starts_with("aleph_") {
        cur.pos = "aleph_".len();
        Cardinal::Aleph(cur.ordinal()?)
    } else {
        Cardinal::Finite(cur.natural()?)
    };
    cur.finish()?;
    Ok(value)
}

pub(super) fn parse_signed(input: &str) -> Result<SignedIndex> {
    if input == "undefined" {
        return Ok(SignedIndex::Undefined);
    }
    match input.strip_prefix('-') {
        Some(rest) => {
            let c = parse_cardinal(rest).map_err(|e| shift(e, input, 1))?;
            if c.is_zero() {
                return Err(Error::parse(
                    input,
                    0,
                    "negative zero is not a signed index",
                ));
            }
            Ok(SignedIndex::Minus(c))
        }
        None => Ok(SignedIndex::Plus(parse_cardinal(input)?)),
    }
}

fn shift(err: Error, input: &str, by: usize) -> Error {
    match err {
        Error::Parse {
            position, message, ..
        } => Error::parse(input, position + by, message),
        other => other,
    }
}
