//! Ideal expression grammar.
//!
//! ```text
//! expr   := factor ('*' factor)*
//! factor := atom ('^' exponent)?
//! atom   := 'sqrtd' | 'P(' p (',' r)? ')' | '(' linear ')'
//! linear := ['+'|'-'] term (('+'|'-') term)*
//! term   := n | n '*' 'w' | 'w'
//! ```
//!
//! `w` is the second integral basis element. Whitespace is ignored.

use super::{Ideal, PrimeIdeal};
use crate::error::{Error, Result};
use crate::quadfield::QuadraticField;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(kw.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("number out of range"))
    }

    fn expr(&mut self, field: QuadraticField) -> Result<Ideal> {
        let mut acc = self.factor(field)?;
        while self.eat('*') {
            acc = acc.multiply(&self.factor(field)?)?;
        }
        if self.pos != self.chars.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(acc)
    }

    fn factor(&mut self, field: QuadraticField) -> Result<Ideal> {
        let atom = self.atom(field)?;
        if self.eat('^') {
            let e = self.number()?;
            if e == 0 || e > 64 {
                return Err(self.err("exponent must be between 1 and 64"));
            }
            return atom.pow(e as u32);
        }
        Ok(atom)
    }

    fn atom(&mut self, field: QuadraticField) -> Result<Ideal> {
        if self.keyword("sqrtd") {
            return Ok(Ideal::sqrt_minus_d(field));
        }
        if self.keyword("P(") {
            let p = self.number()?;
            let root = if self.eat(',') {
                Some(self.number()?)
            } else {
                None
            };
            self.expect(')')?;
            return Ok(PrimeIdeal::new(&field, p, root)?.to_ideal(field));
        }
        if self.eat('(') {
            let x = self.linear()?;
            self.expect(')')?;
            return Ideal::principal(field, x);
        }
        Err(self.err("expected 'sqrtd', 'P(' or '('"))
    }

    fn linear(&mut self) -> Result<(i64, i64)> {
        let (mut u, mut v) = (0i64, 0i64);
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let (du, dv) = self.term()?;
            u = u
                .checked_add(sign * du)
                .ok_or_else(|| self.err("coefficient overflow"))?;
            v = v
                .checked_add(sign * dv)
                .ok_or_else(|| self.err("coefficient overflow"))?;
        }
        Ok((u, v))
    }

    fn term(&mut self) -> Result<(i64, i64)> {
        if self.eat('w') {
            return Ok((0, 1));
        }
        let n = i64::try_from(self.number()?).map_err(|_| self.err("number out of range"))?;
        if self.peek() == Some('*') && self.chars.get(self.pos + 1) == Some(&'w') {
            self.pos += 2;
            return Ok((0, n));
        }
        Ok((n, 0))
    }
}

/// Parses an ideal expression over `field` and returns the product ideal.
pub fn parse_ideal(field: QuadraticField, src: &str) -> Result<Ideal> {
    let mut parser = Parser::new(src);
    if parser.chars.is_empty() {
        return Err(Error::Parse("empty ideal expression".into()));
    }
    parser.expr(field)
}
