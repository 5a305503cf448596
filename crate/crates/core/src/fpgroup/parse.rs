//! Relator grammar.
//!
//! ```text
//! word   := ε | term ('*' term)*
//! term   := factor ('^' integer)?
//! factor := name | '1' | '(' word ')'
//! ```
//!
//! Names are maximal runs of characters other than whitespace, `*`, `^`, `(`
//! and `)`. Whitespace is ignored. `1` denotes the identity unless it is
//! itself a generator name.

use alloc::string::String;
use core::fmt;

use super::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for ParseError {}

fn is_name_byte(b: u8) -> bool {
    !(b.is_ascii_whitespace() || matches!(b, b'*' | b'^' | b'(' | b')'))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        match self.peek() {
            None | Some(b')') => return Ok(w),
            _ => {}
        }
        w.mul_assign(&self.term()?);
        while self.peek() == Some(b'*') {
            self.pos += 1;
            w.mul_assign(&self.term()?);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.factor()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos] == b'-' || bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        self.skip_ws();
        let digits = self.pos;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return self.err(start, "expected an integer exponent");
        }
        let text: String = self.src[start..self.pos]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        match text.parse::<i64>() {
            Ok(e) if e.unsigned_abs() <= 1 << 20 => Ok(e),
            _ => self.err(start, "exponent out of range"),
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            None => self.err(self.pos, "unexpected end of input"),
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return self.err(open, "unclosed parenthesis");
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b) if is_name_byte(b) => {
                let start = self.pos;
                let bytes = self.src.as_bytes();
                while self.pos < bytes.len() && is_name_byte(bytes[self.pos]) {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match self.names.iter().position(|n| n == name) {
                    Some(g) => Ok(Word::from_letters([Letter::new(g, false)])),
                    None if name == "1" => Ok(Word::identity()),
                    None => self.err(start, alloc::format!("unknown generator `{}`", name)),
                }
            }
            Some(b) => self.err(self.pos, alloc::format!("unexpected `{}`", b as char)),
        }
    }
}

/// Parses a word in the relator grammar over the given generator names.
pub fn parse_word(src: &str, names: &[String]) -> Result<Word, ParseError> {
    let mut p = Parser { src, pos: 0, names };
    let w = p.word()?;
    if let Some(b) = p.peek() {
        return p.err(p.pos, alloc::format!("unexpected `{}`", b as char));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn names() -> alloc::vec::Vec<String> {
        vec!["s".into(), "t".into(), "p<eta".into()]
    }

    #[test]
    fn parses_powers_and_groups() {
        let w = parse_word("(s*t)^2", &names()).unwrap();
        assert_eq!(w, Word::from_signed(&[1, 2, 1, 2]));
        let w = parse_word(" s ^ -2 * t", &names()).unwrap();
        assert_eq!(w, Word::from_signed(&[-1, -1, 2]));
        let w = parse_word("(s*t)^-1", &names()).unwrap();
        assert_eq!(w, Word::from_signed(&[-2, -1]));
    }

    #[test]
    fn identity_forms() {
        assert!(parse_word("", &names()).unwrap().is_empty());
        assert!(parse_word("1", &names()).unwrap().is_empty());
        assert!(parse_word("s*s^-1", &names()).unwrap().is_empty());
    }

    #[test]
    fn names_may_contain_punctuation() {
        let w = parse_word("p<eta^3", &names()).unwrap();
        assert_eq!(w, Word::from_signed(&[3, 3, 3]));
    }

    #[test]
    fn errors_report_byte_offsets() {
        let e = parse_word("s * u", &names()).unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_word("(s*t", &names()).unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_word("s^x", &names()).unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_word("s t", &names()).unwrap_err();
        assert_eq!(e.offset, 2);
    }
}
